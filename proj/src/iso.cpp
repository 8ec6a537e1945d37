#include "princlab/iso.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace princlab {

namespace {

using Colors = std::vector<uint32_t>;

// Lean cover-graph view used by canonicalization; avoids building a full
// Poset per candidate in the enumeration hot loop.
struct CanonGraph {
  size_t n = 0;
  std::vector<std::pair<uint16_t, uint16_t>> covers;
  std::vector<std::vector<uint16_t>> up, down;
  std::vector<uint32_t> height, depth;

  CanonGraph(size_t n_, std::vector<std::pair<uint16_t, uint16_t>> covers_)
      : n(n_), covers(std::move(covers_)), up(n_), down(n_), height(n_, 0), depth(n_, 0) {
    for (auto& [lo, hi] : covers) {
      up[lo].push_back(hi);
      down[hi].push_back(lo);
    }
    for (auto& v : up) std::sort(v.begin(), v.end());
    for (auto& v : down) std::sort(v.begin(), v.end());
    // Longest-path heights; bounded passes suffice on acyclic input.
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& [lo, hi] : covers) {
        if (height[hi] < height[lo] + 1) {
          height[hi] = height[lo] + 1;
          changed = true;
        }
        if (depth[lo] < depth[hi] + 1) {
          depth[lo] = depth[hi] + 1;
          changed = true;
        }
      }
    }
  }

  bool has_cover(size_t a, size_t b) const {
    return std::binary_search(up[a].begin(), up[a].end(), uint16_t(b));
  }
};

// One refinement round renumbers colors by the sorted order of
// (old color, lower-cover colors, upper-cover colors); n <= 16 packs the
// neighbour multisets into 64-bit words, larger inputs use vectors.
void refine_colors(const CanonGraph& g, Colors& colors) {
  const size_t n = g.n;
  {
    // Compress to dense ranks so colors stay below n (required by the
    // nibble packing; individualization doubles values).
    Colors distinct = colors;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto& c : colors)
      c = uint32_t(std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin());
  }
  if (n <= 16) {
    std::array<std::array<uint64_t, 3>, 16> sig;
    std::array<uint8_t, 16> order;
    for (;;) {
      for (size_t v = 0; v < n; ++v) {
        uint64_t dn = 0, up = 0;
        {
          std::array<uint8_t, 16> tmp{};
          size_t k = 0;
          for (uint16_t u : g.down[v]) tmp[k++] = uint8_t(colors[u]);
          std::sort(tmp.begin(), tmp.begin() + k);
          for (size_t i = 0; i < k; ++i) dn = dn << 4 | tmp[i];
          dn |= uint64_t(k) << 60;
        }
        {
          std::array<uint8_t, 16> tmp{};
          size_t k = 0;
          for (uint16_t u : g.up[v]) tmp[k++] = uint8_t(colors[u]);
          std::sort(tmp.begin(), tmp.begin() + k);
          for (size_t i = 0; i < k; ++i) up = up << 4 | tmp[i];
          up |= uint64_t(k) << 60;
        }
        sig[v] = {colors[v], dn, up};
      }
      for (size_t v = 0; v < n; ++v) order[v] = uint8_t(v);
      std::sort(order.begin(), order.begin() + n,
                [&](uint8_t a, uint8_t b) { return sig[a] < sig[b]; });
      uint32_t rank = 0;
      Colors next(n);
      for (size_t i = 0; i < n; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
        next[order[i]] = rank;
      }
      if (next == colors) return;
      colors = std::move(next);
    }
  }
  struct Sig {
    uint32_t old_color;
    std::vector<uint32_t> down, up;
    bool operator<(const Sig& o) const {
      if (old_color != o.old_color) return old_color < o.old_color;
      if (down != o.down) return down < o.down;
      return up < o.up;
    }
    bool operator==(const Sig& o) const {
      return old_color == o.old_color && down == o.down && up == o.up;
    }
  };
  for (;;) {
    std::vector<Sig> sig(n);
    for (size_t v = 0; v < n; ++v) {
      sig[v].old_color = colors[v];
      for (uint16_t u : g.down[v]) sig[v].down.push_back(colors[u]);
      for (uint16_t u : g.up[v]) sig[v].up.push_back(colors[u]);
      std::sort(sig[v].down.begin(), sig[v].down.end());
      std::sort(sig[v].up.begin(), sig[v].up.end());
    }
    std::vector<size_t> order(n);
    for (size_t v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return sig[a] < sig[b]; });
    uint32_t rank = 0;
    Colors next(n);
    for (size_t i = 0; i < n; ++i) {
      if (i > 0 && !(sig[order[i]] == sig[order[i - 1]])) ++rank;
      next[order[i]] = rank;
    }
    if (next == colors) return;
    colors = std::move(next);
  }
}

Colors initial_colors(const CanonGraph& g, const Colors& init) {
  const size_t n = g.n;
  std::vector<std::array<uint64_t, 5>> key(n);
  for (size_t v = 0; v < n; ++v)
    key[v] = {init.empty() ? 0 : init[v], g.height[v], g.depth[v], g.down[v].size(),
              g.up[v].size()};
  auto distinct = key;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Colors colors(n);
  for (size_t v = 0; v < n; ++v)
    colors[v] =
        uint32_t(std::lower_bound(distinct.begin(), distinct.end(), key[v]) - distinct.begin());
  refine_colors(g, colors);
  return colors;
}

std::string encode_by_colors(const CanonGraph& g, const Colors& colors,
                             std::vector<uint16_t>* pos_out) {
  const size_t n = g.n;
  std::vector<uint16_t> pos(n);
  {
    std::vector<uint16_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = uint16_t(i);
    std::sort(order.begin(), order.end(),
              [&](uint16_t a, uint16_t b) { return colors[a] < colors[b]; });
    for (size_t i = 0; i < n; ++i) pos[order[i]] = uint16_t(i);
  }
  std::string bytes;
  bytes.push_back(char(n));
  bytes.resize(1 + (n * n + 7) / 8, 0);
  for (auto& [lo, hi] : g.covers) {
    size_t bit = size_t(pos[lo]) * n + pos[hi];
    bytes[1 + bit / 8] |= char(1 << (bit % 8));
  }
  if (pos_out) *pos_out = std::move(pos);
  return bytes;
}

bool is_automorphism_swap(const CanonGraph& g, size_t u, size_t v) {
  auto img = [&](size_t x) { return x == u ? v : x == v ? u : x; };
  for (auto& [lo, hi] : g.covers)
    if (!g.has_cover(img(lo), img(hi))) return false;
  return true;
}

struct CanonSearch {
  const CanonGraph& g;
  std::string best{};
  std::vector<uint16_t> best_pos{};

  void leaf(const Colors& colors) {
    std::vector<uint16_t> pos;
    std::string bytes = encode_by_colors(g, colors, &pos);
    if (best.empty() || bytes < best) {
      best = std::move(bytes);
      best_pos = std::move(pos);
    }
  }

  void run(const Colors& colors) {
    const size_t n = g.n;
    // Individualize within the smallest non-singleton color value; the
    // choice depends only on the coloring, never on vertex labels.
    std::vector<size_t> class_size(n + 1, 0);
    for (size_t v = 0; v < n; ++v) ++class_size[colors[v]];
    int target = -1;
    for (size_t c = 0; c <= n; ++c)
      if (class_size[c] >= 2) {
        target = int(c);
        break;
      }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<size_t> cls;
    for (size_t v = 0; v < n; ++v)
      if (colors[v] == uint32_t(target)) cls.push_back(v);
    std::vector<size_t> explored;
    for (size_t u : cls) {
      bool pruned = false;
      for (size_t e : explored)
        if (is_automorphism_swap(g, e, u)) {
          pruned = true;
          break;
        }
      if (pruned) continue;
      explored.push_back(u);
      Colors child(n);
      for (size_t v = 0; v < n; ++v) child[v] = colors[v] * 2 + (v == u ? 0 : 1);
      refine_colors(g, child);
      run(child);
    }
  }
};

std::pair<CanonicalForm, std::vector<uint16_t>> canon_impl(const CanonGraph& g,
                                                           const Colors& init) {
  CanonSearch s{g};
  s.run(initial_colors(g, init));
  return {CanonicalForm{std::move(s.best)}, std::move(s.best_pos)};
}

}  // namespace

std::string CanonicalForm::hex_digest() const {
  uint64_t h = hash();
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

uint64_t CanonicalForm::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::pair<CanonicalForm, std::vector<uint16_t>> canonical_relabel_covers(
    size_t n, const std::vector<std::pair<uint16_t, uint16_t>>& covers,
    const std::vector<uint32_t>& init_colors) {
  return canon_impl(CanonGraph(n, covers), init_colors);
}

std::pair<CanonicalForm, std::vector<uint16_t>> canonical_relabel(
    const Poset& p, const std::vector<uint32_t>& init_colors) {
  return canonical_relabel_covers(p.size(), p.covers(), init_colors);
}

CanonicalForm canonical_form(const Poset& p, const std::vector<uint32_t>& init_colors) {
  return canonical_relabel(p, init_colors).first;
}

bool is_order_isomorphism(const Poset& a, const Poset& b, const IsoMap& m) {
  if (a.size() != b.size() || m.fwd.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (size_t x = 0; x < a.size(); ++x) {
    if (m.fwd[x] >= b.size() || hit[m.fwd[x]]) return false;
    hit[m.fwd[x]] = true;
  }
  for (size_t x = 0; x < a.size(); ++x)
    for (size_t y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(m.fwd[x], m.fwd[y])) return false;
  return true;
}

namespace {

struct IsoSearch {
  const Poset& a;
  const Poset& b;
  Colors ca, cb;
  std::vector<size_t> order;  // a-elements in mapping order
  std::vector<int> img;       // a -> b or -1
  std::vector<bool> used;     // b side
  size_t limit;
  std::vector<IsoMap> found;

  bool consistent(size_t x, size_t y) const {
    if (ca[x] != cb[y]) return false;
    for (size_t k = 0; k < order.size(); ++k) {
      size_t x2 = order[k];
      if (img[x2] < 0) break;
      size_t y2 = size_t(img[x2]);
      if (a.leq(x, x2) != b.leq(y, y2) || a.leq(x2, x) != b.leq(y2, y)) return false;
    }
    return true;
  }

  bool extend(size_t k) {
    if (k == order.size()) {
      IsoMap m;
      m.fwd.resize(a.size());
      for (size_t x = 0; x < a.size(); ++x) m.fwd[x] = uint16_t(img[x]);
      found.push_back(std::move(m));
      return found.size() >= limit;
    }
    size_t x = order[k];
    for (size_t y = 0; y < b.size(); ++y) {
      if (used[y] || !consistent(x, y)) continue;
      img[x] = int(y);
      used[y] = true;
      if (extend(k + 1)) return true;
      img[x] = -1;
      used[y] = false;
    }
    return false;
  }
};

std::vector<IsoMap> isomorphisms_impl(const Poset& a, const Poset& b, size_t limit) {
  if (a.size() != b.size() || a.covers().size() != b.covers().size()) return {};
  // Joint refinement on the disjoint union keeps color ids comparable.
  std::vector<std::pair<uint16_t, uint16_t>> cov;
  const size_t n = a.size();
  for (auto& [lo, hi] : a.covers()) cov.emplace_back(lo, hi);
  for (auto& [lo, hi] : b.covers()) cov.emplace_back(uint16_t(lo + n), uint16_t(hi + n));
  CanonGraph both(2 * n, cov);
  Colors colors = initial_colors(both, {});
  Colors ca(colors.begin(), colors.begin() + n), cb(colors.begin() + n, colors.end());
  {
    Colors sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return {};
  }
  IsoSearch s{a, b, std::move(ca), std::move(cb), {}, {}, {}, limit, {}};
  s.order.resize(n);
  for (size_t i = 0; i < n; ++i) s.order[i] = i;
  // Most-constrained first: rarer colors early.
  std::vector<size_t> freq(2 * n + 1, 0);
  for (uint32_t c : s.ca) ++freq[c];
  std::sort(s.order.begin(), s.order.end(), [&](size_t x, size_t y) {
    if (freq[s.ca[x]] != freq[s.ca[y]]) return freq[s.ca[x]] < freq[s.ca[y]];
    return x < y;
  });
  s.img.assign(n, -1);
  s.used.assign(n, false);
  s.extend(0);
  return std::move(s.found);
}

}  // namespace

std::vector<IsoMap> all_isomorphisms(const Poset& a, const Poset& b, size_t limit) {
  return isomorphisms_impl(a, b, limit);
}

std::optional<IsoMap> find_isomorphism(const Poset& a, const Poset& b) {
  auto found = isomorphisms_impl(a, b, 1);
  if (found.empty()) return std::nullopt;
  return found[0];
}

std::optional<IsoMap> find_isomorphism(const Lattice& a, const Lattice& b) {
  return find_isomorphism(a.poset(), b.poset());
}

}  // namespace princlab
