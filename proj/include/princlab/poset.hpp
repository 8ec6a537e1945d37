#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "princlab/bits.hpp"
#include "princlab/errors.hpp"

namespace princlab {

// A finite ordered set given by named elements and a cover relation.
// Covers must be acyclic and transitively reduced; the order is the
// reflexive-transitive closure of the covers. Immutable after construction.
class Poset {
 public:
  Poset() = default;  // the empty poset
  Poset(std::vector<std::string> elements,
        const std::vector<std::pair<std::string, std::string>>& covers,
        std::string name = "");

  // Covers given as (lower, upper) index pairs; names default to x0..x{n-1}.
  static Poset from_covers(size_t n,
                           const std::vector<std::pair<uint16_t, uint16_t>>& covers,
                           std::string name = "",
                           std::vector<std::string> names = {});

  size_t size() const { return names_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& element_names() const { return names_; }
  const std::string& name_of(size_t i) const { return names_[i]; }
  int index_of(const std::string& name) const;

  bool leq(size_t a, size_t b) const { return up_[a].test(b); }
  bool lt(size_t a, size_t b) const { return a != b && leq(a, b); }
  bool comparable(size_t a, size_t b) const { return leq(a, b) || leq(b, a); }

  // up_set/down_set include the element itself.
  const Bits& up_set(size_t i) const { return up_[i]; }
  const Bits& down_set(size_t i) const { return down_[i]; }

  const std::vector<std::pair<uint16_t, uint16_t>>& covers() const { return covers_; }
  const std::vector<uint16_t>& upper_covers(size_t i) const { return up_adj_[i]; }
  const std::vector<uint16_t>& lower_covers(size_t i) const { return down_adj_[i]; }

  std::vector<size_t> maximal_elements() const;
  std::vector<size_t> minimal_elements() const;

  bool is_bounded() const;
  // Index of the unique minimum/maximum, or -1.
  int bottom() const;
  int top() const;

  // Length of a longest chain below/above i (0 for minimal/maximal elements).
  size_t height_of(size_t i) const { return height_[i]; }
  size_t depth_of(size_t i) const { return depth_[i]; }

  Poset dual(std::string name = "") const;

  // Induced subposet on the given elements (kept in the given order),
  // with covers recomputed from the restricted order.
  Poset induced(const std::vector<size_t>& elems, std::string name = "") const;

  // Elements listed in a fixed topological order (lower before upper).
  std::vector<size_t> topo_order() const;

 private:
  void build();

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::pair<uint16_t, uint16_t>> covers_;
  std::vector<Bits> up_, down_;
  std::vector<std::vector<uint16_t>> up_adj_, down_adj_;
  std::vector<size_t> height_, depth_;
};

// True iff p contains k pairwise-incomparable elements.
bool max_antichain_at_least(const Poset& p, size_t k);

// Counts the down-sets of p, never returning more than cap + 1.
size_t count_downsets(const Poset& p, size_t cap = SIZE_MAX);

}  // namespace princlab
