#pragma once

#include <optional>
#include <string>
#include <vector>

#include "princlab/congruence.hpp"
#include "princlab/lattice.hpp"

namespace princlab {

// Element roles of a lattice assembled over a bounded poset P: the bounds
// o, i and the pair a_p <= b_p per P-element (a and b coincide on the
// bounds of P). copies lists the element set of every inserted gadget.
struct FrameRoles {
  size_t o = 0, i = 0;
  std::vector<uint16_t> a, b;  // indexed by P-element
  std::vector<Bits> copies;
};

// The frame lattice over a bounded poset: bottom o, top i, one middle leg
// per P-element; legs of bound elements are single, all others are
// two-element chains a_p < b_p; distinct legs meet at o and join at i.
Lattice frame(const Poset& p, FrameRoles* roles_out = nullptr);

// An 11-element lattice over the base {o, a_p, b_p, a_q, b_q, i} with five
// extra elements, forcing con(a_p, b_p) < con(a_q, b_q) when inserted for
// a comparable pair p < q.
struct GadgetTemplate {
  Lattice s;
  uint16_t o, i, ap, bp, aq, bq;
  std::vector<uint16_t> extra;

  // Checks the structural contract; throws GadgetContractError.
  void validate() const;
  // Canonical key of the role-labelled structure (for sorting/dedup).
  std::string canonical_key() const;
};

// The default template: a_p v a_q generates an interval transposing down
// onto [a_p, b_p], with an insulating midpoint that keeps the forcing
// one-directional, plus two plain legs.
GadgetTemplate builtin_gadget();

enum class GadgetReading {
  // Every incomparable pair inside the gadget complementary (the middle is
  // a disjoint union of chains). Provably admits no forcing gadget.
  AllPairsComplementary,
  // Complementarity required only across distinct copies in the assembled
  // lattice; the gadget interior may mix.
  CrossCopyOnly,
};

struct GadgetSearchBounds {
  size_t extra = 5;  // number of added elements (template size is 6 + extra)
  GadgetReading reading = GadgetReading::CrossCopyOnly;
};

// Exhaustively searches lattices of size 6 + extra extending the base and
// returns every template satisfying the contract, sorted canonically.
// Throws NoGadgetFound when the space is empty under the given reading.
std::vector<GadgetTemplate> synthesize_gadget(const GadgetSearchBounds& bounds);

struct BuildResult {
  Lattice lattice;
  FrameRoles roles;
  Poset p;  // the input poset (element indices align with roles.a/b)
};

// The frame with one gadget copy inserted per comparable pair of interior
// elements. Throws GadgetContractError when assembly or verification fails.
BuildResult build_principal_lattice(const Poset& p);
BuildResult build_principal_lattice(const Poset& p, const GadgetTemplate& tmpl);

// Observation (i): {o, i, a_0, a_1, x} is a diamond for every other x.
// Observation (ii): incomparable pairs lying in no common copy are
// complementary. Throws RoleMismatchError on inconsistent roles.
bool verify_m3_cells_and_complements(const Lattice& l, const FrameRoles& roles);

struct PrincipalOrderReport {
  bool top_join_irreducible = false;
  bool principals_join_irreducible = false;
  bool map_is_isomorphism = false;
  bool pairs_are_covers = false;

  bool all() const {
    return top_join_irreducible && principals_join_irreducible && map_is_isomorphism &&
           pairs_are_covers;
  }
  std::string summary() const;
};

// Checks that p |-> con(a_p, b_p) (bounds to zero/one) is an isomorphism
// onto Princ L, that the top congruence is join-irreducible, that nonzero
// principal congruences are join-irreducible, and that a_p < b_p are covers.
PrincipalOrderReport verify_principal_representation(const Lattice& l, const FrameRoles& roles,
                                                     const Poset& p);

// A diamond with one atom replaced by K: fresh bounds and two new legs.
// Con grows by a new top; Princ gains exactly the new top congruence.
Lattice m3_atom_replace(const Lattice& k);

// A 2x2 square with one atom replaced by K: Con(K) with the square's
// congruences glued above its top.
Lattice glue_top_square(const Lattice& k);

}  // namespace princlab
