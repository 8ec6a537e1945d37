#pragma once

#include <string>
#include <vector>

#include "princlab/lattice.hpp"

namespace princlab {

// The lattice of all down-sets of p ordered by inclusion; join is union and
// meet is intersection. Elements are named by sorted member lists.
Lattice downset_lattice(const Poset& p, std::string name = "");

bool is_distributive(const Lattice& l);

// The criterion for distributive lattices: planar iff J(D) has no
// three-element antichain. Throws NotDistributive.
bool is_planar_distributive(const Lattice& d);

// Planar and at most one dual atom is join-reducible.
bool czedli_fully_representable(const Lattice& d);

// Elements of D outside jplus(D): the free choices when forming candidates.
std::vector<size_t> join_reducible_nonbound(const Lattice& d);

// A subset Q of a distributive lattice D with jplus(D) <= Q <= D.
struct Candidate {
  const Lattice* d = nullptr;
  Bits members;

  bool proper() const { return members.count() != d->size(); }
  std::vector<std::string> element_names() const;
};

// All candidates of D, ordered by subset bitmask over the free choices.
std::vector<Candidate> candidates(const Lattice& d);

}  // namespace princlab
