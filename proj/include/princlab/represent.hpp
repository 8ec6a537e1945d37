#pragma once

#include <optional>
#include <string>
#include <vector>

#include "princlab/birkhoff.hpp"
#include "princlab/congruence.hpp"
#include "princlab/iso.hpp"
#include "princlab/lattice.hpp"

namespace princlab {

// A witness lattice for a candidate (D, Q): Con L is isomorphic to D and
// the principal congruences map exactly onto Q.
struct Witness {
  Lattice lattice;
  Lattice con;  // Con L as a lattice, elements c0..ck
  IsoMap iso;   // element map con -> D, re-verified on construction
};

struct WitnessReport {
  std::string d_name;
  std::vector<std::string> q_names;
  bool found = false;
  size_t search_bound = 0;  // every class up to this size was examined
  size_t witness_size = 0;
  std::optional<Witness> witness;
  double elapsed_seconds = 0;
};

// Scans the isomorph-free lattice stream by size and canonical order; all
// isomorphisms Con L -> D are tried. Returns the first witness or a
// none-up-to outcome. Throws InvalidCandidateError when Q is no candidate.
WitnessReport search_witness(const Lattice& d, const Candidate& q, size_t max_size);

struct CandidateOutcome {
  Candidate q;
  bool witnessed = false;
  size_t witness_size = 0;
  std::string witness_name;
  size_t bound = 0;
};

// search_witness outcome for every candidate of D, in candidate order.
std::vector<CandidateOutcome> representable_candidates(const Lattice& d, size_t max_size);

// When Con L is an eight-element Boolean lattice, at most one congruence
// may be non-principal; vacuously true otherwise.
bool check_b3_principal_deficiency(const Lattice& l);

struct ProbeReport {
  std::string title;
  bool as_expected = true;
  std::vector<std::string> lines;

  std::string text() const;
};

// The three-by-three grid: both proper candidates of interest probed.
// Q = jplus + (a v c) is expected to admit no witness within the bound.
ProbeReport verify_c3sq_nonrepresentable(size_t max_size, size_t full_max_size = 0);

// Every distributive D within the bound that is fully representable at
// desk scale must be planar; non-planar D get the antichain-join candidate
// probed for non-representability.
ProbeReport verify_planarity_necessity(size_t max_d_size, size_t max_l_size);

// Exhibits a representable Q whose Q - {1} is not a down-set of D.
ProbeReport verify_downset_counterexample();

struct AtlasEntry {
  size_t d_size = 0;
  std::string d_name;
  std::vector<CandidateOutcome> outcomes;
  bool fully_representable = false;  // every candidate witnessed in bounds
  bool czedli = false;               // planarity + dual-atom prediction
  bool agrees = false;
};

struct AtlasReport {
  size_t max_d_size = 0, max_l_size = 0;
  std::vector<AtlasEntry> entries;
  double elapsed_seconds = 0;

  // 0 all expectations hold; 3 a prediction is contradicted by a witness;
  // 4 bounds were insufficient for a predicted-representable candidate.
  int exit_code() const;
  std::string text_table() const;
};

// Every candidate of every distributive D with 2 <= |D| <= max_d_size,
// searched against every lattice class with at most max_l_size elements.
AtlasReport atlas(size_t max_d_size, size_t max_l_size);

// The grid D = C3 x C3 with its join-irreducible chains labelled
// a < b and c < d, and e = a v c.
struct GridLabels {
  Lattice grid;
  size_t a, b, c, d, e;
};
GridLabels make_c3_square();

}  // namespace princlab
