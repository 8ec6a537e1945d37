#pragma once

#include <optional>
#include <string>
#include <vector>

#include "princlab/poset.hpp"

namespace princlab {

// A finite lattice: a poset in which every pair has a unique least upper
// bound and greatest lower bound, with both operation tables materialized.
class Lattice {
 public:
  const Poset& poset() const { return poset_; }
  size_t size() const { return poset_.size(); }
  const std::string& name() const { return poset_.name(); }
  const std::string& name_of(size_t i) const { return poset_.name_of(i); }
  int index_of(const std::string& n) const { return poset_.index_of(n); }

  bool leq(size_t a, size_t b) const { return poset_.leq(a, b); }
  bool lt(size_t a, size_t b) const { return poset_.lt(a, b); }
  size_t join(size_t a, size_t b) const { return join_[a * size() + b]; }
  size_t meet(size_t a, size_t b) const { return meet_[a * size() + b]; }
  size_t bottom() const { return bottom_; }
  size_t top() const { return top_; }

  // All x != bottom with exactly one lower cover, in element order.
  std::vector<size_t> join_irreducibles() const;
  std::vector<size_t> meet_irreducibles() const;
  // join_irreducibles plus bottom and top, as an element set.
  Bits jplus() const;

  // Some w with meet(a, w) = bottom and join(a, w) = b, if any.
  // Requires a <= b.
  std::optional<size_t> sectional_complement(size_t a, size_t b) const;
  bool is_sectionally_complemented() const;

  // Induced poset of the join-irreducible elements.
  Poset ji_poset(std::string name = "") const;

  Lattice dual(std::string name = "") const;

  friend Lattice validate_lattice(const Poset& p);

 private:
  explicit Lattice(Poset p) : poset_(std::move(p)) {}

  Poset poset_;
  std::vector<uint16_t> join_, meet_;
  uint16_t bottom_ = 0, top_ = 0;
};

// Checks that every pair of p has a unique lub and glb and builds the
// operation tables. Throws NotALatticeError naming an offending pair.
Lattice validate_lattice(const Poset& p);

}  // namespace princlab
