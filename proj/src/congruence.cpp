#include "princlab/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "princlab/errors.hpp"

namespace princlab {

Congruence::Congruence(const std::vector<uint16_t>& raw) {
  class_of_.assign(raw.size(), 0);
  std::unordered_map<uint16_t, uint16_t> remap;
  for (size_t e = 0; e < raw.size(); ++e) {
    auto it = remap.emplace(raw[e], uint16_t(remap.size())).first;
    class_of_[e] = it->second;
  }
  nblocks_ = remap.size();
}

Congruence Congruence::identity(size_t n) {
  Congruence c;
  c.class_of_.resize(n);
  std::iota(c.class_of_.begin(), c.class_of_.end(), 0);
  c.nblocks_ = n;
  return c;
}

Congruence Congruence::all(size_t n) {
  Congruence c;
  c.class_of_.assign(n, 0);
  c.nblocks_ = n == 0 ? 0 : 1;
  return c;
}

std::vector<Bits> Congruence::blocks() const {
  std::vector<Bits> out(nblocks_, Bits(universe()));
  for (size_t e = 0; e < universe(); ++e) out[class_of_[e]].set(e);
  return out;
}

bool Congruence::refines(const Congruence& coarser) const {
  std::vector<int> image(nblocks_, -1);
  for (size_t e = 0; e < universe(); ++e) {
    int& img = image[class_of_[e]];
    if (img < 0)
      img = coarser.class_of_[e];
    else if (img != coarser.class_of_[e])
      return false;
  }
  return true;
}

uint64_t Congruence::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint16_t c : class_of_) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string Congruence::format(const Lattice& l) const {
  std::string out = "{";
  bool first_block = true;
  for (const Bits& b : blocks()) {
    if (!first_block) out += "|";
    first_block = false;
    bool first = true;
    b.for_each([&](size_t e) {
      if (!first) out += ",";
      first = false;
      out += l.name_of(e);
    });
  }
  out += "}";
  return out;
}

bool is_congruence(const Lattice& l, const Congruence& c) {
  const size_t n = l.size();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y) {
      if (!c.same(x, y)) continue;
      for (size_t z = 0; z < n; ++z) {
        if (!c.same(l.join(x, z), l.join(y, z))) return false;
        if (!c.same(l.meet(x, z), l.meet(y, z))) return false;
      }
    }
  return true;
}

namespace {

// Union-find driven compatibility closure: whenever two elements merge,
// their joins and meets with every element merge too.
struct Closure {
  const Lattice& l;
  std::vector<uint16_t> parent;
  std::vector<std::pair<uint16_t, uint16_t>> work;

  explicit Closure(const Lattice& lat) : l(lat), parent(lat.size()) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  uint16_t find(uint16_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(size_t a, size_t b) {
    uint16_t ra = find(uint16_t(a)), rb = find(uint16_t(b));
    if (ra == rb) return;
    if (ra > rb) std::swap(ra, rb);
    parent[rb] = ra;
    work.emplace_back(ra, rb);
  }

  Congruence run() {
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      for (size_t z = 0; z < l.size(); ++z) {
        unite(l.join(a, z), l.join(b, z));
        unite(l.meet(a, z), l.meet(b, z));
      }
    }
    std::vector<uint16_t> cls(l.size());
    for (size_t e = 0; e < l.size(); ++e) cls[e] = find(uint16_t(e));
    return Congruence(cls);
  }
};

}  // namespace

Congruence principal_congruence(const Lattice& l, size_t a, size_t b) {
  if (a >= l.size() || b >= l.size()) throw UnknownElementError("element index out of range");
  Closure c(l);
  c.unite(a, b);
  return c.run();
}

Congruence principal_congruence(const Lattice& l, const std::string& a, const std::string& b) {
  int ia = l.index_of(a), ib = l.index_of(b);
  if (ia < 0) throw UnknownElementError("unknown element: " + a);
  if (ib < 0) throw UnknownElementError("unknown element: " + b);
  return principal_congruence(l, size_t(ia), size_t(ib));
}

Congruence congruence_join(const Lattice& l, const Congruence& x, const Congruence& y) {
  Closure c(l);
  for (size_t e = 1; e < l.size(); ++e) {
    for (size_t f = 0; f < e; ++f) {
      if (x.same(e, f) || y.same(e, f)) {
        c.unite(f, e);
        break;
      }
    }
  }
  return c.run();
}

Congruence congruence_meet(const Congruence& x, const Congruence& y) {
  const size_t n = x.universe();
  std::vector<uint16_t> cls(n);
  // Same class iff same in both.
  std::unordered_map<uint32_t, uint16_t> remap;
  for (size_t e = 0; e < n; ++e) {
    uint32_t key = uint32_t(x.class_of(e)) << 16 | y.class_of(e);
    auto it = remap.emplace(key, uint16_t(remap.size())).first;
    cls[e] = it->second;
  }
  return Congruence(cls);
}

ConLattice::ConLattice(const Lattice& l) : base_(&l) {
  const size_t n = l.size();
  std::unordered_map<uint64_t, std::vector<size_t>> buckets;
  auto add_unique = [&](std::vector<Congruence>& v, const Congruence& c) {
    auto& bucket = buckets[c.hash()];
    for (size_t i : bucket)
      if (v[i] == c) return false;
    bucket.push_back(v.size());
    v.push_back(c);
    return true;
  };
  // Generators: principal congruences of cover pairs.
  std::vector<Congruence> all;
  all.push_back(Congruence::identity(n));
  for (auto& [lo, hi] : l.poset().covers()) add_unique(all, principal_congruence(l, lo, hi));
  const size_t gen_end = all.size();
  // Join-closure: breadth-first joins against the generators.
  for (size_t k = 0; k < all.size(); ++k) {
    for (size_t g = 1; g < gen_end; ++g) {
      if (k == g) continue;
      Congruence j = congruence_join(l, all[k], all[g]);
      add_unique(all, j);
    }
  }
  // Canonical order: finer first (more blocks), ties by class string.
  std::sort(all.begin(), all.end(), [](const Congruence& a, const Congruence& b) {
    if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
    return a < b;
  });
  items_ = std::move(all);

  leq_.assign(items_.size(), Bits(items_.size()));
  for (size_t i = 0; i < items_.size(); ++i)
    for (size_t j = 0; j < items_.size(); ++j)
      if (items_[i].refines(items_[j])) leq_[i].set(j);

  zero_ = one_ = 0;
  for (size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].is_identity()) zero_ = i;
    if (items_[i].is_all()) one_ = i;
  }

  principal_ = Bits(items_.size());
  generators_.assign(items_.size(), {0, 0});
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a; b < n; ++b) {
      if (!l.leq(a, b)) continue;  // con(a, b) = con(meet, join), comparable pairs suffice
      Congruence c = principal_congruence(l, a, b);
      int idx = index_of(c);
      if (idx < 0) throw Error("internal: principal congruence missing from closure");
      if (!principal_.test(size_t(idx))) {
        principal_.set(size_t(idx));
        generators_[size_t(idx)] = {uint16_t(a), uint16_t(b)};
      }
    }
  }
}

int ConLattice::index_of(const Congruence& c) const {
  for (size_t i = 0; i < items_.size(); ++i)
    if (items_[i] == c) return int(i);
  return -1;
}

std::pair<uint16_t, uint16_t> ConLattice::generator(size_t i) const {
  if (!principal_.test(i)) throw Error("congruence is not principal");
  return generators_[i];
}

std::vector<size_t> ConLattice::join_irreducibles() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i) {
    if (i == zero_) continue;
    size_t lower_covers = 0;
    for (size_t j = 0; j < size(); ++j) {
      if (j == i || !leq(j, i)) continue;
      bool covered = true;
      for (size_t k = 0; k < size() && covered; ++k)
        if (k != i && k != j && leq(j, k) && leq(k, i)) covered = false;
      if (covered) ++lower_covers;
    }
    if (lower_covers == 1) out.push_back(i);
  }
  return out;
}

Bits ConLattice::jplus() const {
  Bits out(size());
  out.set(zero_);
  out.set(one_);
  for (size_t i : join_irreducibles()) out.set(i);
  return out;
}

Lattice ConLattice::as_lattice(std::string name) const {
  std::vector<std::string> names;
  names.reserve(size());
  for (size_t i = 0; i < size(); ++i) names.push_back("c" + std::to_string(i));
  std::vector<std::pair<uint16_t, uint16_t>> covers;
  for (size_t i = 0; i < size(); ++i) {
    for (size_t j = 0; j < size(); ++j) {
      if (i == j || !leq(i, j)) continue;
      bool direct = true;
      for (size_t k = 0; k < size() && direct; ++k)
        if (k != i && k != j && leq(i, k) && leq(k, j)) direct = false;
      if (direct) covers.emplace_back(uint16_t(i), uint16_t(j));
    }
  }
  return validate_lattice(Poset::from_covers(
      size(), covers, name.empty() ? "Con(" + base_->name() + ")" : std::move(name),
      std::move(names)));
}

ConLattice congruence_lattice(const Lattice& l) { return ConLattice(l); }

std::vector<Congruence> principal_set(const Lattice& l) {
  ConLattice con(l);
  std::vector<Congruence> out;
  con.principal_set().for_each([&](size_t i) { out.push_back(con.at(i)); });
  return out;
}

bool check_sandwich(const Lattice& l) {
  ConLattice con(l);
  return con.jplus().subset_of(con.principal_set());
}

size_t folklore_generator(const Lattice& l, const Congruence& theta) {
  if (!l.is_sectionally_complemented())
    throw NotSectionallyComplementedError("lattice is not sectionally complemented");
  // Largest element congruent to bottom.
  size_t bottom = l.bottom();
  int best = -1;
  for (size_t x = 0; x < l.size(); ++x) {
    if (!theta.same(bottom, x)) continue;
    if (best < 0 || l.leq(size_t(best), x))
      best = int(x);
    else if (!l.leq(x, size_t(best))) {
      // Two incomparable maximal candidates: check their join stays in the block.
      size_t j = l.join(size_t(best), x);
      if (!theta.same(bottom, j))
        throw NoLargestCollapsedElementError("block of bottom has no largest element");
      best = int(j);
    }
  }
  if (best < 0) throw NoLargestCollapsedElementError("block of bottom is empty");
  if (principal_congruence(l, bottom, size_t(best)) != theta)
    throw NoLargestCollapsedElementError("con(bottom, a) does not reproduce theta");
  return size_t(best);
}

ConProfile con_profile(const Lattice& l, size_t cap) {
  ConProfile out;
  const size_t n = l.size();
  // Distinct prime-interval congruences are exactly the join-irreducible
  // congruences; remember which one each cover generates.
  std::vector<Congruence> ji;
  const auto& covers = l.poset().covers();
  std::vector<uint16_t> cover_ji(covers.size());
  for (size_t c = 0; c < covers.size(); ++c) {
    Congruence g = principal_congruence(l, covers[c].first, covers[c].second);
    size_t idx = ji.size();
    for (size_t i = 0; i < ji.size(); ++i)
      if (ji[i] == g) {
        idx = i;
        break;
      }
    if (idx == ji.size()) ji.push_back(std::move(g));
    cover_ji[c] = uint16_t(idx);
  }
  const size_t m = ji.size();
  if (m > 64) throw BoundTooLargeError("too many join-irreducible congruences");

  // Refinement order among the ji congruences.
  std::vector<std::pair<uint16_t, uint16_t>> ji_covers;
  std::vector<std::vector<bool>> lt(m, std::vector<bool>(m, false));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (i != j && ji[i].refines(ji[j])) lt[i][j] = true;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      if (!lt[i][j]) continue;
      bool direct = true;
      for (size_t k = 0; k < m && direct; ++k)
        if (k != i && k != j && lt[i][k] && lt[k][j]) direct = false;
      if (direct) ji_covers.emplace_back(uint16_t(i), uint16_t(j));
    }
  out.ji = Poset::from_covers(m, ji_covers, "JCon(" + l.name() + ")");
  out.ji_congs = std::move(ji);
  out.con_size = m == 0 ? 1 : count_downsets(out.ji, cap);

  out.down_mask.assign(m, 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (out.ji.leq(j, i)) out.down_mask[i] |= uint64_t(1) << j;

  // Principal congruences as ji down-set masks: walk one maximal chain per
  // comparable pair, OR-ing the masks of its prime intervals.
  std::vector<uint64_t> cover_mask(covers.size());
  std::vector<std::vector<std::pair<uint16_t, uint64_t>>> up_edges(n);
  for (size_t c = 0; c < covers.size(); ++c) {
    cover_mask[c] = out.down_mask[cover_ji[c]];
    up_edges[covers[c].first].emplace_back(covers[c].second, cover_mask[c]);
  }
  std::unordered_set<uint64_t> princ;
  princ.insert(0);  // zero
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      if (x == y || !l.lt(x, y)) continue;
      uint64_t mask = 0;
      size_t z = x;
      while (z != y) {
        for (auto& [up, em] : up_edges[z]) {
          if (l.leq(up, y)) {
            mask |= em;
            z = up;
            break;
          }
        }
      }
      princ.insert(mask);
    }
  }
  out.princ.assign(princ.begin(), princ.end());
  std::sort(out.princ.begin(), out.princ.end());
  return out;
}

}  // namespace princlab
