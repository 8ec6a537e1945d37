#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "princlab/bits.hpp"
#include "princlab/lattice.hpp"

namespace princlab {

// A partition of a lattice's elements in canonical form: class ids are
// assigned by first occurrence in element order, so equality is structural.
class Congruence {
 public:
  Congruence() = default;
  // Normalizes an arbitrary class assignment.
  explicit Congruence(const std::vector<uint16_t>& raw_class_of);

  static Congruence identity(size_t n);
  static Congruence all(size_t n);

  size_t universe() const { return class_of_.size(); }
  size_t block_count() const { return nblocks_; }
  uint16_t class_of(size_t e) const { return class_of_[e]; }
  bool same(size_t a, size_t b) const { return class_of_[a] == class_of_[b]; }
  bool is_identity() const { return nblocks_ == universe(); }
  bool is_all() const { return nblocks_ == 1; }

  // Blocks as bit sets, ordered by minimum element.
  std::vector<Bits> blocks() const;

  // Refinement order on partitions: *this <= coarser.
  bool refines(const Congruence& coarser) const;

  bool operator==(const Congruence& o) const { return class_of_ == o.class_of_; }
  bool operator!=(const Congruence& o) const { return !(*this == o); }
  bool operator<(const Congruence& o) const { return class_of_ < o.class_of_; }
  uint64_t hash() const;

  // Canonical block notation, e.g. "{0,x1|x2|1}".
  std::string format(const Lattice& l) const;

 private:
  std::vector<uint16_t> class_of_;
  size_t nblocks_ = 0;
};

// True iff the partition is compatible with join and meet.
bool is_congruence(const Lattice& l, const Congruence& c);

// Smallest congruence of l identifying a and b, by fixpoint closure.
Congruence principal_congruence(const Lattice& l, size_t a, size_t b);
Congruence principal_congruence(const Lattice& l, const std::string& a, const std::string& b);

// Smallest congruence above both (closure of the common coarsening).
Congruence congruence_join(const Lattice& l, const Congruence& x, const Congruence& y);

Congruence congruence_meet(const Congruence& x, const Congruence& y);

// The lattice of all congruences of a lattice, ordered by refinement,
// with principal members and their generating pairs marked.
class ConLattice {
 public:
  explicit ConLattice(const Lattice& l);

  const Lattice& base() const { return *base_; }
  size_t size() const { return items_.size(); }
  const Congruence& at(size_t i) const { return items_[i]; }
  int index_of(const Congruence& c) const;

  bool leq(size_t i, size_t j) const { return leq_[i].test(j); }
  size_t zero_index() const { return zero_; }
  size_t one_index() const { return one_; }

  bool is_principal(size_t i) const { return principal_.test(i); }
  const Bits& principal_set() const { return principal_; }
  // One witnessing pair (a, b) for a principal congruence.
  std::pair<uint16_t, uint16_t> generator(size_t i) const;

  // Indices with exactly one lower cover in the refinement order (plus
  // nothing else); zero is excluded.
  std::vector<size_t> join_irreducibles() const;
  Bits jplus() const;

  // The congruence lattice as a Lattice with elements c0..ck.
  Lattice as_lattice(std::string name = "") const;

 private:
  const Lattice* base_;
  std::vector<Congruence> items_;
  std::vector<Bits> leq_;
  Bits principal_;
  std::vector<std::pair<uint16_t, uint16_t>> generators_;
  size_t zero_ = 0, one_ = 0;
};

ConLattice congruence_lattice(const Lattice& l);

// {con(a, b) : a, b in l}, in the ConLattice's canonical order.
std::vector<Congruence> principal_set(const Lattice& l);

// jplus(Con L) <= Princ L <= Con L; exposed as a self-test.
bool check_sandwich(const Lattice& l);

// For sectionally complemented l: the largest element a with a == bottom
// mod theta; then con(bottom, a) = theta.
size_t folklore_generator(const Lattice& l, const Congruence& theta);

// Light-weight description of Con L for witness search: the poset of
// join-irreducible congruences plus all principal congruences encoded as
// down-set masks over the join-irreducibles.
struct ConProfile {
  size_t con_size = 0;             // number of congruences, capped at cap + 1
  Poset ji;                        // poset of distinct prime-interval congruences
  std::vector<Congruence> ji_congs;
  std::vector<uint64_t> down_mask;  // per ji element: its down-set as a bit mask
  std::vector<uint64_t> princ;      // distinct principal congruences, sorted masks
};

ConProfile con_profile(const Lattice& l, size_t cap = SIZE_MAX);

}  // namespace princlab
