#include "princlab/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <unordered_set>

#include "princlab/birkhoff.hpp"
#include "princlab/errors.hpp"

namespace princlab {

namespace {

size_t g_cap_override = 0;

struct CompactCovers {
  uint8_t n = 0;
  std::vector<std::pair<uint8_t, uint8_t>> covers;
};

Poset to_poset(const CompactCovers& c, std::string name = "") {
  std::vector<std::pair<uint16_t, uint16_t>> cov;
  cov.reserve(c.covers.size());
  for (auto& [lo, hi] : c.covers) cov.emplace_back(lo, hi);
  return Poset::from_covers(c.n, cov, std::move(name));
}

CompactCovers relabel_canonical(uint8_t n,
                                const std::vector<std::pair<uint16_t, uint16_t>>& covers) {
  auto [form, pos] = canonical_relabel_covers(n, covers);
  CompactCovers out;
  out.n = n;
  for (auto& [lo, hi] : covers) out.covers.emplace_back(uint8_t(pos[lo]), uint8_t(pos[hi]));
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

std::vector<std::pair<uint16_t, uint16_t>> wide_covers(const CompactCovers& c) {
  std::vector<std::pair<uint16_t, uint16_t>> cov;
  cov.reserve(c.covers.size());
  for (auto& [lo, hi] : c.covers) cov.emplace_back(lo, hi);
  return cov;
}

// Downward closure masks straight from a cover list (input is acyclic with
// covers oriented low -> high after canonical relabeling, but a fixpoint
// pass keeps this robust to orientation).
std::vector<uint32_t> down_masks(const CompactCovers& c) {
  std::vector<uint32_t> down(c.n, 0);
  for (size_t i = 0; i < c.n; ++i) down[i] = uint32_t(1) << i;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [lo, hi] : c.covers) {
      uint32_t merged = down[hi] | down[lo];
      if (merged != down[hi]) {
        down[hi] = merged;
        changed = true;
      }
    }
  }
  return down;
}

std::string covers_key(const CompactCovers& c) {
  std::string key(1, char(c.n));
  for (auto& [lo, hi] : c.covers) {
    key.push_back(char(lo));
    key.push_back(char(hi));
  }
  return key;
}

// Antichains of a small poset given by pairwise comparability masks.
void for_each_antichain(const std::vector<uint32_t>& incomp, bool allow_empty,
                        const std::function<void(uint32_t)>& fn) {
  const size_t n = incomp.size();
  std::function<void(size_t, uint32_t)> rec = [&](size_t v, uint32_t mask) {
    if (v == n) {
      if (mask || allow_empty) fn(mask);
      return;
    }
    rec(v + 1, mask);
    if ((mask & ~incomp[v]) == 0) rec(v + 1, mask | (uint32_t(1) << v));
  };
  rec(0, 0);
}

// --- meet-semilattice states: every prefix of a lattice in a linear
// extension order is such a state, so growing by one maximal element at a
// time with meets checked reaches every lattice.

struct MeetState {
  CompactCovers cc;
  std::vector<uint32_t> down;  // downward closure masks
};

MeetState make_state(const CompactCovers& cc) { return MeetState{cc, down_masks(cc)}; }

// Extensions of a state by one new maximal element whose lower covers form
// the antichain described by `mask`; valid iff every pair keeps a meet.
bool extension_ok(const MeetState& s, uint32_t mask, std::map<uint32_t, uint8_t>& by_down) {
  for (size_t e = 0; e < s.cc.n; ++e) {
    uint32_t common = 0;
    for (uint32_t w = mask; w; w &= w - 1)
      common |= s.down[std::countr_zero(w)] & s.down[e];
    if (!by_down.count(common)) return false;
  }
  return true;
}

// Grown level by level, deduplicated by canonical form.
class StateLevels {
 public:
  const std::vector<CompactCovers>& states(size_t n) {
    build_to(n);
    return levels_[n];
  }

 private:
  void build_to(size_t n) {
    if (levels_.empty()) {
      levels_.resize(1);
      levels_.push_back({CompactCovers{1, {}}});  // the single point
    }
    while (levels_.size() <= n) {
      size_t k = levels_.size() - 1;
      std::vector<CompactCovers> next;
      std::unordered_set<std::string> seen;
      for (const CompactCovers& cc : levels_[k]) {
        MeetState s = make_state(cc);
        std::map<uint32_t, uint8_t> by_down;
        for (size_t i = 0; i < s.cc.n; ++i) by_down[s.down[i]] = uint8_t(i);
        std::vector<uint32_t> incomp(s.cc.n, 0);
        for (size_t i = 0; i < s.cc.n; ++i)
          for (size_t j = 0; j < s.cc.n; ++j)
            if (i != j && !(s.down[i] >> j & 1) && !(s.down[j] >> i & 1))
              incomp[i] |= uint32_t(1) << j;
        for_each_antichain(incomp, false, [&](uint32_t mask) {
          if (!extension_ok(s, mask, by_down)) return;
          CompactCovers ext = cc;
          ext.n = uint8_t(cc.n + 1);
          for (uint32_t w = mask; w; w &= w - 1)
            ext.covers.emplace_back(uint8_t(std::countr_zero(w)), uint8_t(cc.n));
          CompactCovers canon = relabel_canonical(ext.n, wide_covers(ext));
          if (seen.insert(covers_key(canon)).second) next.push_back(std::move(canon));
        });
      }
      std::sort(next.begin(), next.end(),
                [](const CompactCovers& a, const CompactCovers& b) {
                  return covers_key(a) < covers_key(b);
                });
      levels_.push_back(std::move(next));
    }
  }

  std::vector<std::vector<CompactCovers>> levels_;
};

StateLevels& state_levels() {
  static StateLevels s;
  return s;
}

// A lattice of size n is a state of size n-1 with a new top above its
// maximal elements; the correspondence is one-to-one on isomorphism classes.
CompactCovers add_top(const CompactCovers& cc) {
  CompactCovers ext = cc;
  ext.n = uint8_t(cc.n + 1);
  std::vector<bool> is_max(cc.n, true);
  for (auto& [lo, hi] : cc.covers) is_max[lo] = false;
  for (size_t i = 0; i < cc.n; ++i)
    if (is_max[i]) ext.covers.emplace_back(uint8_t(i), uint8_t(cc.n));
  return ext;
}

class LatticeLevels {
 public:
  const std::vector<CompactCovers>& lattices(size_t n) {
    if (levels_.size() <= n) levels_.resize(n + 1);
    if (levels_[n].empty()) {
      std::vector<CompactCovers> out;
      if (n == 1) {
        out.push_back(CompactCovers{1, {}});
      } else {
        for (const CompactCovers& cc : state_levels().states(n - 1)) {
          CompactCovers t = add_top(cc);
          out.push_back(relabel_canonical(t.n, wide_covers(t)));
        }
        std::sort(out.begin(), out.end(), [](const CompactCovers& a, const CompactCovers& b) {
          return covers_key(a) < covers_key(b);
        });
      }
      levels_[n] = std::move(out);
    }
    return levels_[n];
  }

 private:
  std::vector<std::vector<CompactCovers>> levels_;
};

LatticeLevels& lattice_levels() {
  static LatticeLevels l;
  return l;
}

Lattice materialize(const CompactCovers& cc, const std::string& prefix, size_t index) {
  Poset p = to_poset(cc, prefix + std::to_string(cc.n) + "." + std::to_string(index));
  return validate_lattice(p);
}

// --- posets, generated the same way but without the meet requirement;
// optionally pruned by a down-set count bound.

std::vector<CompactCovers> grow_posets(size_t n, size_t downset_cap) {
  std::vector<std::vector<CompactCovers>> levels(n + 1);
  levels[0] = {CompactCovers{0, {}}};
  for (size_t k = 0; k < n; ++k) {
    std::unordered_set<std::string> seen;
    for (const CompactCovers& cc : levels[k]) {
      Poset p = to_poset(cc);
      std::vector<uint32_t> down(cc.n, 0), incomp(cc.n, 0);
      for (size_t i = 0; i < cc.n; ++i)
        p.down_set(i).for_each([&](size_t j) { down[i] |= uint32_t(1) << j; });
      for (size_t i = 0; i < cc.n; ++i)
        for (size_t j = 0; j < cc.n; ++j)
          if (i != j && !(down[i] >> j & 1) && !(down[j] >> i & 1))
            incomp[i] |= uint32_t(1) << j;
      for_each_antichain(incomp, true, [&](uint32_t mask) {
        CompactCovers ext = cc;
        ext.n = uint8_t(cc.n + 1);
        for (uint32_t w = mask; w; w &= w - 1)
          ext.covers.emplace_back(uint8_t(std::countr_zero(w)), uint8_t(cc.n));
        Poset q = to_poset(ext);
        if (downset_cap != SIZE_MAX && count_downsets(q, downset_cap) > downset_cap) return;
        CompactCovers canon = relabel_canonical(ext.n, wide_covers(ext));
        if (seen.insert(covers_key(canon)).second) levels[k + 1].push_back(std::move(canon));
      });
    }
    std::sort(levels[k + 1].begin(), levels[k + 1].end(),
              [](const CompactCovers& a, const CompactCovers& b) {
                return covers_key(a) < covers_key(b);
              });
  }
  return levels[n];
}

}  // namespace

size_t enumeration_cap() {
  if (g_cap_override) return g_cap_override;
  if (const char* env = std::getenv("PRINCLAB_MAX_SIZE")) {
    long v = std::atol(env);
    if (v >= 1) return size_t(v);
  }
  return 10;
}

void set_enumeration_cap(size_t cap) { g_cap_override = cap; }

void for_each_lattice(size_t n, const std::function<bool(const Lattice&)>& fn) {
  if (n < 1 || n > enumeration_cap())
    throw BoundTooLargeError("lattice enumeration bound " + std::to_string(n) +
                             " exceeds the cap " + std::to_string(enumeration_cap()));
  detail::for_each_lattice_raw(n, fn);
}

void detail::for_each_lattice_raw(size_t n, const std::function<bool(const Lattice&)>& fn) {
  if (n < 1 || n > 13) throw BoundTooLargeError("lattice enumeration limited to 13 elements");
  const auto& level = lattice_levels().lattices(n);
  for (size_t i = 0; i < level.size(); ++i)
    if (!fn(materialize(level[i], "L", i))) return;
}

std::vector<Lattice> enumerate_lattices(size_t n) {
  std::vector<Lattice> out;
  for_each_lattice(n, [&](const Lattice& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

size_t count_lattices(size_t n) {
  size_t c = 0;
  for_each_lattice(n, [&](const Lattice&) {
    ++c;
    return true;
  });
  return c;
}

void for_each_distributive(size_t n, const std::function<bool(const Lattice&)>& fn) {
  if (n < 1 || n > 12)
    throw BoundTooLargeError("distributive enumeration limited to 12 elements");
  // Down-set lattices of isomorph-free posets: |P| ranges up to n - 1 and
  // the number of down-sets is monotone under removing maximal elements,
  // so growth can prune at n.
  std::vector<Lattice> found;
  for (size_t m = 0; m + 1 <= n; ++m) {
    for (const CompactCovers& cc : grow_posets(m, n)) {
      Poset p = to_poset(cc);
      if (count_downsets(p, n) != n) continue;
      found.push_back(downset_lattice(p));
    }
  }
  std::vector<std::pair<std::string, size_t>> order;
  for (size_t i = 0; i < found.size(); ++i)
    order.emplace_back(canonical_form(found[i].poset()).bytes, i);
  std::sort(order.begin(), order.end());
  for (size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && order[k].first == order[k - 1].first)
      throw Error("internal: duplicate distributive lattice class");
    Poset renamed = found[order[k].second].poset();
    if (!fn(validate_lattice(Poset::from_covers(
            renamed.size(), renamed.covers(),
            "D" + std::to_string(n) + "." + std::to_string(k), renamed.element_names()))))
      return;
  }
}

std::vector<Lattice> enumerate_distributive(size_t n) {
  std::vector<Lattice> out;
  for_each_distributive(n, [&](const Lattice& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

size_t count_distributive(size_t n) {
  size_t c = 0;
  for_each_distributive(n, [&](const Lattice&) {
    ++c;
    return true;
  });
  return c;
}

std::vector<Poset> enumerate_posets(size_t n) {
  if (n > 8) throw BoundTooLargeError("poset enumeration limited to 8 elements");
  std::vector<Poset> out;
  auto level = grow_posets(n, SIZE_MAX);
  for (size_t i = 0; i < level.size(); ++i)
    out.push_back(to_poset(level[i], "P" + std::to_string(n) + "." + std::to_string(i)));
  return out;
}

}  // namespace princlab
