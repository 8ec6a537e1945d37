#include "princlab/poset.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace princlab {

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& covers,
             std::string name)
    : name_(std::move(name)), names_(std::move(elements)) {
  std::unordered_map<std::string, size_t> idx;
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!idx.emplace(names_[i], i).second)
      throw IoError("duplicate element name: " + names_[i]);
  }
  covers_.reserve(covers.size());
  for (auto& [lo, hi] : covers) {
    auto it_lo = idx.find(lo), it_hi = idx.find(hi);
    if (it_lo == idx.end()) throw UnknownElementError("unknown element in covers: " + lo);
    if (it_hi == idx.end()) throw UnknownElementError("unknown element in covers: " + hi);
    covers_.emplace_back(uint16_t(it_lo->second), uint16_t(it_hi->second));
  }
  build();
}

Poset Poset::from_covers(size_t n, const std::vector<std::pair<uint16_t, uint16_t>>& covers,
                         std::string name, std::vector<std::string> names) {
  Poset p;
  p.name_ = std::move(name);
  if (names.empty()) {
    names.reserve(n);
    for (size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  }
  p.names_ = std::move(names);
  for (auto& [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw UnknownElementError("cover index out of range");
  }
  p.covers_ = covers;
  p.build();
  return p;
}

void Poset::build() {
  const size_t n = names_.size();
  up_adj_.assign(n, {});
  down_adj_.assign(n, {});
  for (auto& [lo, hi] : covers_) {
    if (lo == hi) throw CyclicCoversError("cover relates an element to itself: " + names_[lo]);
    up_adj_[lo].push_back(hi);
    down_adj_[hi].push_back(lo);
  }
  for (auto& v : up_adj_) std::sort(v.begin(), v.end());
  for (auto& v : down_adj_) std::sort(v.begin(), v.end());

  // Topological order by Kahn's algorithm; leftover nodes mean a cycle.
  std::vector<size_t> indeg(n, 0), order;
  for (auto& [lo, hi] : covers_) ++indeg[hi];
  for (size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (size_t k = 0; k < order.size(); ++k)
    for (uint16_t u : up_adj_[order[k]])
      if (--indeg[u] == 0) order.push_back(u);
  if (order.size() != n) throw CyclicCoversError("covers contain a cycle");

  up_.assign(n, Bits(n));
  down_.assign(n, Bits(n));
  height_.assign(n, 0);
  depth_.assign(n, 0);
  for (size_t k = n; k-- > 0;) {
    size_t v = order[k];
    up_[v].set(v);
    for (uint16_t u : up_adj_[v]) {
      up_[v] |= up_[u];
      depth_[v] = std::max(depth_[v], depth_[u] + 1);
    }
  }
  for (size_t k = 0; k < n; ++k) {
    size_t v = order[k];
    down_[v].set(v);
    for (uint16_t u : down_adj_[v]) {
      down_[v] |= down_[u];
      height_[v] = std::max(height_[v], height_[u] + 1);
    }
  }

  // Transitive reduction check: a cover must not be implied by a 2-step path.
  for (auto& [lo, hi] : covers_) {
    for (uint16_t mid : up_adj_[lo]) {
      if (mid != hi && up_[mid].test(hi))
        throw NotReducedError("cover (" + names_[lo] + ", " + names_[hi] +
                              ") is implied by (" + names_[lo] + ", " + names_[mid] + ")");
    }
  }
  // Duplicate covers are also rejected.
  auto sorted = covers_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw NotReducedError("duplicate cover pair");
}

int Poset::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return int(i);
  return -1;
}

std::vector<size_t> Poset::maximal_elements() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (up_adj_[i].empty()) out.push_back(i);
  return out;
}

std::vector<size_t> Poset::minimal_elements() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (down_adj_[i].empty()) out.push_back(i);
  return out;
}

bool Poset::is_bounded() const { return bottom() >= 0 && top() >= 0; }

int Poset::bottom() const {
  auto mins = minimal_elements();
  return mins.size() == 1 ? int(mins[0]) : -1;
}

int Poset::top() const {
  auto maxs = maximal_elements();
  return maxs.size() == 1 ? int(maxs[0]) : -1;
}

Poset Poset::dual(std::string name) const {
  std::vector<std::pair<uint16_t, uint16_t>> rev;
  rev.reserve(covers_.size());
  for (auto& [lo, hi] : covers_) rev.emplace_back(hi, lo);
  return from_covers(size(), rev, name.empty() ? name_ + "^d" : std::move(name), names_);
}

Poset Poset::induced(const std::vector<size_t>& elems, std::string name) const {
  const size_t m = elems.size();
  std::vector<std::string> names;
  names.reserve(m);
  for (size_t e : elems) names.push_back(names_[e]);
  // Covers of the restriction: a < b with no chosen element strictly between.
  std::vector<std::pair<uint16_t, uint16_t>> cov;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (i == j || !lt(elems[i], elems[j])) continue;
      bool direct = true;
      for (size_t k = 0; k < m && direct; ++k)
        if (k != i && k != j && lt(elems[i], elems[k]) && lt(elems[k], elems[j])) direct = false;
      if (direct) cov.emplace_back(uint16_t(i), uint16_t(j));
    }
  }
  return from_covers(m, cov, std::move(name), std::move(names));
}

std::vector<size_t> Poset::topo_order() const {
  std::vector<size_t> order(size());
  for (size_t i = 0; i < size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return height_[a] < height_[b]; });
  return order;
}

namespace {
bool antichain_extend(const Poset& p, size_t k, size_t start, std::vector<size_t>& picked) {
  if (picked.size() == k) return true;
  for (size_t v = start; v < p.size(); ++v) {
    bool ok = true;
    for (size_t u : picked)
      if (p.comparable(u, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    picked.push_back(v);
    if (antichain_extend(p, k, v + 1, picked)) return true;
    picked.pop_back();
  }
  return false;
}
}  // namespace

bool max_antichain_at_least(const Poset& p, size_t k) {
  if (k == 0) return true;
  if (k > p.size()) return false;
  std::vector<size_t> picked;
  return antichain_extend(p, k, 0, picked);
}

namespace {
struct DownsetCounter {
  std::vector<uint64_t> up, down;  // closure masks per element
  size_t cap;
  std::unordered_map<uint64_t, size_t> memo;

  size_t count(uint64_t live) {
    if (!live) return 1;  // only the empty down-set
    if (auto it = memo.find(live); it != memo.end()) return it->second;
    // Pick an element minimal within the live subposet.
    int m = -1;
    for (uint64_t w = live; w; w &= w - 1) {
      int v = std::countr_zero(w);
      if ((down[v] & live & ~(uint64_t(1) << v)) == 0) {
        m = v;
        break;
      }
    }
    // Split on membership of m: down-sets avoiding m avoid all of up(m);
    // down-sets containing the minimal m correspond to down-sets of live - m.
    size_t total = count(live & ~up[m]);
    if (total <= cap) {
      total += count(live & ~(uint64_t(1) << m));
      if (total > cap) total = cap + 1;
    }
    memo.emplace(live, total);
    return total;
  }
};
}  // namespace

size_t count_downsets(const Poset& p, size_t cap) {
  const size_t n = p.size();
  if (n > 64) throw BoundTooLargeError("count_downsets supports at most 64 elements");
  if (n == 0) return 1;
  DownsetCounter c;
  c.cap = cap;
  c.up.assign(n, 0);
  c.down.assign(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (p.leq(i, j)) c.up[i] |= uint64_t(1) << j;
      if (p.leq(j, i)) c.down[i] |= uint64_t(1) << j;
    }
  uint64_t all = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
  return c.count(all);
}

}  // namespace princlab
