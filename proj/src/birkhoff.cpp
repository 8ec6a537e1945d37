#include "princlab/birkhoff.hpp"

#include <algorithm>
#include <map>

#include "princlab/errors.hpp"

namespace princlab {

namespace {
std::string downset_name(const Poset& p, uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    if (!first) out += ",";
    first = false;
    out += p.name_of(i);
  }
  return out + "}";
}
}  // namespace

Lattice downset_lattice(const Poset& p, std::string name) {
  const size_t n = p.size();
  if (n > 62) throw BoundTooLargeError("downset_lattice supports at most 62 elements");
  std::vector<uint64_t> down(n, 0);
  for (size_t i = 0; i < n; ++i)
    p.down_set(i).for_each([&](size_t j) { down[i] |= uint64_t(1) << j; });

  // Grow down-sets bottom-up: a set extends by any element whose strict
  // down-set it already contains.
  std::vector<uint64_t> sets{0};
  std::map<uint64_t, size_t> index{{0, 0}};
  for (size_t k = 0; k < sets.size(); ++k) {
    uint64_t s = sets[k];
    for (size_t i = 0; i < n; ++i) {
      if (s >> i & 1) continue;
      if ((down[i] & ~(uint64_t(1) << i) & ~s) != 0) continue;
      uint64_t t = s | uint64_t(1) << i;
      if (index.emplace(t, sets.size()).second) sets.push_back(t);
      if (sets.size() > 100000) throw BoundTooLargeError("too many down-sets");
    }
  }
  // Deterministic element order: by size, then by mask value.
  std::sort(sets.begin(), sets.end(), [](uint64_t a, uint64_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    return a < b;
  });
  std::map<uint64_t, size_t> pos;
  for (size_t i = 0; i < sets.size(); ++i) pos[sets[i]] = i;

  std::vector<std::string> names;
  names.reserve(sets.size());
  for (uint64_t s : sets) names.push_back(downset_name(p, s));
  // Covers: add one element.
  std::vector<std::pair<uint16_t, uint16_t>> covers;
  for (size_t i = 0; i < sets.size(); ++i) {
    uint64_t s = sets[i];
    for (size_t e = 0; e < n; ++e) {
      if (s >> e & 1) continue;
      uint64_t t = s | uint64_t(1) << e;
      auto it = pos.find(t);
      if (it != pos.end()) covers.emplace_back(uint16_t(i), uint16_t(it->second));
    }
  }
  return validate_lattice(Poset::from_covers(
      sets.size(), covers, name.empty() ? "O(" + p.name() + ")" : std::move(name),
      std::move(names)));
}

bool is_distributive(const Lattice& l) {
  const size_t n = l.size();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = y; z < n; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
  return true;
}

bool is_planar_distributive(const Lattice& d) {
  if (!is_distributive(d)) throw NotDistributiveError("lattice is not distributive");
  return !max_antichain_at_least(d.ji_poset(), 3);
}

bool czedli_fully_representable(const Lattice& d) {
  if (!is_planar_distributive(d)) return false;
  size_t reducible_dual_atoms = 0;
  for (uint16_t x : d.poset().lower_covers(d.top()))
    if (d.poset().lower_covers(x).size() >= 2) ++reducible_dual_atoms;
  return reducible_dual_atoms <= 1;
}

std::vector<size_t> join_reducible_nonbound(const Lattice& d) {
  if (!is_distributive(d)) throw NotDistributiveError("lattice is not distributive");
  Bits jp = d.jplus();
  std::vector<size_t> out;
  for (size_t i = 0; i < d.size(); ++i)
    if (!jp.test(i)) out.push_back(i);
  return out;
}

std::vector<std::string> Candidate::element_names() const {
  std::vector<std::string> out;
  members.for_each([&](size_t i) { out.push_back(d->name_of(i)); });
  return out;
}

std::vector<Candidate> candidates(const Lattice& d) {
  std::vector<size_t> free = join_reducible_nonbound(d);
  if (free.size() > 20) throw BoundTooLargeError("too many join-reducible elements");
  Bits jp = d.jplus();
  std::vector<Candidate> out;
  out.reserve(size_t(1) << free.size());
  for (uint64_t mask = 0; mask < (uint64_t(1) << free.size()); ++mask) {
    Candidate c{&d, jp};
    for (size_t k = 0; k < free.size(); ++k)
      if (mask >> k & 1) c.members.set(free[k]);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace princlab
