#include "princlab/represent.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <unordered_map>

#include "princlab/construct.hpp"
#include "princlab/enumerate.hpp"
#include "princlab/errors.hpp"

namespace princlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Precomputed view of the target D: its join-irreducible poset and the
// bijection between elements and down-sets of that poset.
struct DProfile {
  const Lattice* d;
  Poset jd;
  std::vector<uint64_t> elem_mask;
  std::map<uint64_t, uint16_t> mask_to_elem;

  explicit DProfile(const Lattice& dd) : d(&dd) {
    if (!is_distributive(dd)) throw NotDistributiveError("target lattice is not distributive");
    std::vector<size_t> ji = dd.join_irreducibles();
    if (ji.size() > 64) throw BoundTooLargeError("too many join-irreducibles");
    jd = dd.ji_poset();
    elem_mask.assign(dd.size(), 0);
    for (size_t e = 0; e < dd.size(); ++e)
      for (size_t k = 0; k < ji.size(); ++k)
        if (dd.leq(ji[k], e)) elem_mask[e] |= uint64_t(1) << k;
    for (size_t e = 0; e < dd.size(); ++e) {
      if (!mask_to_elem.emplace(elem_mask[e], uint16_t(e)).second)
        throw NotDistributiveError("element down-sets of join-irreducibles are not distinct");
    }
  }
};

uint64_t remap_mask(uint64_t mask, const IsoMap& sigma) {
  uint64_t out = 0;
  for (uint64_t w = mask; w; w &= w - 1) out |= uint64_t(1) << sigma.fwd[std::countr_zero(w)];
  return out;
}

// True iff some isomorphism Con L -> D takes Princ L exactly onto q.
bool witness_match(const ConProfile& cp, const DProfile& dp, const Bits& q, IsoMap* sigma_out) {
  if (cp.con_size != dp.d->size()) return false;
  for (const IsoMap& sigma : all_isomorphisms(cp.ji, dp.jd)) {
    Bits image(dp.d->size());
    bool ok = true;
    for (uint64_t m : cp.princ) {
      auto it = dp.mask_to_elem.find(remap_mask(m, sigma));
      if (it == dp.mask_to_elem.end()) {
        ok = false;
        break;
      }
      image.set(it->second);
    }
    if (ok && image == q) {
      if (sigma_out) *sigma_out = sigma;
      return true;
    }
  }
  return false;
}

// Full witness construction with from-scratch re-verification.
Witness build_witness(const Lattice& l, const DProfile& dp, const ConProfile& cp,
                      const IsoMap& sigma, const Bits& q) {
  Witness w{l, ConLattice(l).as_lattice(), {}};
  ConLattice con(l);
  w.con = con.as_lattice();
  w.iso.fwd.resize(con.size());
  for (size_t i = 0; i < con.size(); ++i) {
    uint64_t mask = 0;
    for (size_t t = 0; t < cp.ji_congs.size(); ++t)
      if (cp.ji_congs[t].refines(con.at(i))) mask |= uint64_t(1) << t;
    auto it = dp.mask_to_elem.find(remap_mask(mask, sigma));
    if (it == dp.mask_to_elem.end()) throw Error("internal: witness image misses an element");
    w.iso.fwd[i] = it->second;
  }
  if (!is_order_isomorphism(w.con.poset(), dp.d->poset(), w.iso))
    throw Error("internal: witness map is not an order isomorphism");
  Bits image(dp.d->size());
  con.principal_set().for_each([&](size_t i) { image.set(w.iso.fwd[i]); });
  if (!(image == q)) throw Error("internal: witness principal image mismatch");
  return w;
}

void require_candidate(const Lattice& d, const Candidate& q) {
  if (q.d != &d) throw InvalidCandidateError("candidate refers to a different lattice");
  if (q.members.universe() != d.size())
    throw InvalidCandidateError("candidate member set has the wrong universe");
  if (!d.jplus().subset_of(q.members))
    throw InvalidCandidateError("candidate must contain the bounds and join-irreducibles");
}

// Cache of |Con L| per enumeration slot, capped at 64; avoids recomputing
// profiles across repeated sweeps.
std::map<size_t, std::vector<uint16_t>>& con_size_cache() {
  static std::map<size_t, std::vector<uint16_t>> cache;
  return cache;
}

constexpr uint16_t kUnknown = 0xffff;
constexpr size_t kConCap = 64;

// Iterates lattices of size n, calling fn(lattice, con_profile) only when
// |Con L| == want; other classes are skipped via the cache.
void sweep_size(size_t n, size_t want, const std::function<bool(const Lattice&, const ConProfile&)>& fn) {
  auto& sizes = con_size_cache()[n];
  size_t index = 0;
  detail::for_each_lattice_raw(n, [&](const Lattice& l) {
    if (index >= sizes.size()) sizes.resize(index + 1, kUnknown);
    uint16_t& cached = sizes[index];
    ++index;
    if (cached != kUnknown && cached != want) return true;
    ConProfile cp = con_profile(l, kConCap);
    if (cached == kUnknown) cached = uint16_t(std::min(cp.con_size, kConCap + 1));
    if (cp.con_size != want) return true;
    return fn(l, cp);
  });
}

}  // namespace

WitnessReport search_witness(const Lattice& d, const Candidate& q, size_t max_size) {
  auto t0 = Clock::now();
  require_candidate(d, q);
  DProfile dp(d);
  WitnessReport rep;
  rep.d_name = d.name();
  rep.q_names = q.element_names();
  rep.search_bound = max_size;
  for (size_t n = 1; n <= max_size && !rep.found; ++n) {
    sweep_size(n, d.size(), [&](const Lattice& l, const ConProfile& cp) {
      IsoMap sigma;
      if (!witness_match(cp, dp, q.members, &sigma)) return true;
      rep.found = true;
      rep.witness_size = n;
      rep.witness = build_witness(l, dp, cp, sigma, q.members);
      return false;
    });
  }
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

std::vector<CandidateOutcome> representable_candidates(const Lattice& d, size_t max_size) {
  DProfile dp(d);
  std::vector<Candidate> cands = candidates(d);
  std::vector<CandidateOutcome> out;
  out.reserve(cands.size());
  for (Candidate& c : cands) out.push_back(CandidateOutcome{std::move(c), false, 0, "", max_size});
  size_t unresolved = out.size();
  for (size_t n = 1; n <= max_size && unresolved > 0; ++n) {
    sweep_size(n, d.size(), [&](const Lattice& l, const ConProfile& cp) {
      for (CandidateOutcome& oc : out) {
        if (oc.witnessed) continue;
        if (witness_match(cp, dp, oc.q.members, nullptr)) {
          oc.witnessed = true;
          oc.witness_size = n;
          oc.witness_name = l.name();
          --unresolved;
        }
      }
      return unresolved > 0;
    });
  }
  return out;
}

bool check_b3_principal_deficiency(const Lattice& l) {
  ConProfile cp = con_profile(l, 16);
  if (cp.con_size != 8 || cp.ji.size() != 3) return true;
  // Con L is the Boolean lattice on three atoms iff the three
  // join-irreducible congruences are pairwise incomparable.
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      if (i != j && cp.ji.leq(i, j)) return true;
  return 8 - cp.princ.size() <= 1;
}

std::string ProbeReport::text() const {
  std::ostringstream os;
  os << title << ": " << (as_expected ? "as expected" : "UNEXPECTED") << "\n";
  for (const std::string& s : lines) os << "  " << s << "\n";
  return os.str();
}

GridLabels make_c3_square() {
  Poset two_chains({"p1", "p2", "q1", "q2"}, {{"p1", "p2"}, {"q1", "q2"}}, "2+2");
  Lattice grid = downset_lattice(two_chains, "C3xC3");
  std::vector<size_t> ji = grid.join_irreducibles();
  if (ji.size() != 4) throw Error("internal: grid must have 4 join-irreducibles");
  // Two 2-chains among the join-irreducibles: (a < b) and (c < d).
  GridLabels g{std::move(grid), 0, 0, 0, 0, 0};
  std::vector<std::pair<size_t, size_t>> chains;
  for (size_t x : ji)
    for (size_t y : ji)
      if (x != y && g.grid.lt(x, y)) chains.emplace_back(x, y);
  if (chains.size() != 2) throw Error("internal: grid join-irreducibles are not two 2-chains");
  g.a = chains[0].first;
  g.b = chains[0].second;
  g.c = chains[1].first;
  g.d = chains[1].second;
  g.e = g.grid.join(g.a, g.c);
  return g;
}

ProbeReport verify_c3sq_nonrepresentable(size_t max_size, size_t full_max_size) {
  if (full_max_size == 0) full_max_size = max_size;
  ProbeReport rep;
  rep.title = "C3xC3 candidate probes";
  GridLabels g = make_c3_square();

  Bits members = g.grid.jplus();
  members.set(g.e);
  Candidate q{&g.grid, members};
  WitnessReport proof_q = search_witness(g.grid, q, max_size);
  rep.lines.push_back("Q = jplus + (a v c): " +
                      std::string(proof_q.found
                                      ? "witnessed by " + proof_q.witness->lattice.name()
                                      : "none up to " + std::to_string(max_size)));
  if (proof_q.found) rep.as_expected = false;

  Bits all(g.grid.size());
  for (size_t i = 0; i < g.grid.size(); ++i) all.set(i);
  WitnessReport full = search_witness(g.grid, Candidate{&g.grid, all}, full_max_size);
  rep.lines.push_back("Q = D: " + std::string(full.found
                                                  ? "witnessed by " + full.witness->lattice.name() +
                                                        " (size " +
                                                        std::to_string(full.witness_size) + ")"
                                                  : "none up to " + std::to_string(full_max_size)));
  if (!full.found) rep.as_expected = false;

  // Recorded outcome (not asserted): the all-join-irreducible candidate.
  WitnessReport jp = search_witness(g.grid, Candidate{&g.grid, g.grid.jplus()}, max_size);
  rep.lines.push_back("Q = jplus: " +
                      std::string(jp.found ? "witnessed by " + jp.witness->lattice.name()
                                           : "none up to " + std::to_string(max_size)) +
                      " (recorded)");
  return rep;
}

ProbeReport verify_planarity_necessity(size_t max_d_size, size_t max_l_size) {
  ProbeReport rep;
  rep.title = "planarity of fully representable lattices";
  AtlasReport a = atlas(max_d_size, max_l_size);
  for (const AtlasEntry& e : a.entries) {
    if (!e.fully_representable) continue;
    // Re-find the lattice to test planarity.
    bool planar = true;
    for_each_distributive(e.d_size, [&](const Lattice& d) {
      if (d.name() == e.d_name) {
        planar = is_planar_distributive(d);
        return false;
      }
      return true;
    });
    if (!planar) {
      rep.as_expected = false;
      rep.lines.push_back(e.d_name + ": fully representable at desk scale but not planar");
    }
  }
  rep.lines.push_back("all desk-scale fully representable lattices planar up to size " +
                      std::to_string(max_d_size));

  // Contrapositive probe: for non-planar D, the candidate adding only the
  // join of a three-element antichain of J(D) should get no witness.
  for (size_t n = 2; n <= max_d_size; ++n) {
    for_each_distributive(n, [&](const Lattice& d) {
      if (is_planar_distributive(d)) return true;
      std::vector<size_t> ji = d.join_irreducibles();
      // Find a 3-antichain among the join-irreducibles.
      std::vector<size_t> anti;
      for (size_t x : ji) {
        bool ok = true;
        for (size_t y : anti)
          if (d.poset().comparable(x, y)) ok = false;
        if (ok) anti.push_back(x);
        if (anti.size() == 3) break;
      }
      if (anti.size() != 3) return true;
      size_t alpha = d.join(d.join(anti[0], anti[1]), anti[2]);
      Bits members = d.jplus();
      members.set(alpha);
      WitnessReport r = search_witness(d, Candidate{&d, members}, max_l_size);
      rep.lines.push_back(d.name() + " (non-planar): J + antichain-join candidate " +
                          (r.found ? "witnessed by " + r.witness->lattice.name() + " (UNEXPECTED)"
                                   : "none up to " + std::to_string(max_l_size)));
      if (r.found) rep.as_expected = false;
      return true;
    });
  }
  return rep;
}

ProbeReport verify_downset_counterexample() {
  ProbeReport rep;
  rep.title = "a representable Q whose Q minus the top is no down-set";
  // D = down-sets of {a, b < y < t}: its unit is join-irreducible and the
  // join a v b sits strictly below the join-irreducible y, so removing the
  // top from Q = jplus(D) leaves y without a v b underneath.
  Poset j({"a", "b", "y", "t"}, {{"a", "y"}, {"b", "y"}, {"y", "t"}}, "JD");
  Lattice d = downset_lattice(j, "D6");
  Bits q = d.jplus();
  auto name_set = [&](const Bits& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](size_t e) {
      if (!first) out += ",";
      first = false;
      out += d.name_of(e);
    });
    return out + "}";
  };
  rep.lines.push_back("D: down-sets of (a, b < y < t), |D| = " + std::to_string(d.size()) +
                      ", Q = jplus(D) = " + name_set(q));

  // Q is representable: the frame construction over Jp(D) realizes it;
  // verified from scratch against D.
  {
    std::vector<size_t> members = q.to_vector();
    Poset p = d.poset().induced(members, "JpD");
    BuildResult b = build_principal_lattice(p);
    ConProfile cp = con_profile(b.lattice, kConCap);
    DProfile dp(d);
    IsoMap sigma;
    bool witnessed = witness_match(cp, dp, q, &sigma);
    if (witnessed) build_witness(b.lattice, dp, cp, sigma, q);
    rep.lines.push_back("constructed witness with " + std::to_string(b.lattice.size()) +
                        " elements: " +
                        (witnessed ? "Con matches D with Princ = Q" : "FAILS to represent Q"));
    if (!witnessed) rep.as_expected = false;
  }

  // Q minus the top: look for a violating comparable pair.
  Bits q_minus = q;
  q_minus.reset(d.top());
  bool violation = false;
  std::string witness_pair;
  for (size_t x = 0; x < d.size() && !violation; ++x)
    for (size_t y = 0; y < d.size() && !violation; ++y)
      if (x != y && d.lt(x, y) && q_minus.test(y) && !q_minus.test(x)) {
        violation = true;
        witness_pair = d.name_of(x) + " < " + d.name_of(y);
      }
  rep.lines.push_back(violation ? "Q - {1} is not a down-set: " + witness_pair +
                                      " with only the larger in Q - {1}"
                                : "Q - {1} is a down-set (UNEXPECTED)");
  if (!violation) rep.as_expected = false;

  // Comparison cases where the down-set property does hold.
  {
    bool trivial_ok = true;
    Bits all(d.size());
    for (size_t i = 0; i < d.size(); ++i) all.set(i);
    Bits all_minus = all;
    all_minus.reset(d.top());
    for (size_t x = 0; x < d.size() && trivial_ok; ++x)
      for (size_t y = 0; y < d.size() && trivial_ok; ++y)
        if (x != y && d.lt(x, y) && all_minus.test(y) && !all_minus.test(x)) trivial_ok = false;
    rep.lines.push_back(std::string("Q = D: Q - {1} is ") +
                        (trivial_ok ? "a down-set" : "not a down-set (UNEXPECTED)"));
    if (!trivial_ok) rep.as_expected = false;
  }
  {
    // For a chain every member of Q - {1} has its whole down-set in Q.
    Lattice c4 = validate_lattice(
        Poset({"0", "x1", "x2", "1"}, {{"0", "x1"}, {"x1", "x2"}, {"x2", "1"}}, "C4"));
    Bits jq = c4.jplus();
    jq.reset(c4.top());
    bool ok = true;
    for (size_t x = 0; x < c4.size() && ok; ++x)
      for (size_t y = 0; y < c4.size() && ok; ++y)
        if (x != y && c4.lt(x, y) && jq.test(y) && !jq.test(x)) ok = false;
    rep.lines.push_back(std::string("chain case: Q - {1} is ") +
                        (ok ? "a down-set" : "not a down-set (UNEXPECTED)"));
    if (!ok) rep.as_expected = false;
  }
  return rep;
}

int AtlasReport::exit_code() const {
  bool insufficient = false;
  for (const AtlasEntry& e : entries) {
    if (e.czedli && !e.fully_representable) insufficient = true;
    if (!e.czedli && e.fully_representable) return 3;
  }
  return insufficient ? 4 : 0;
}

std::string AtlasReport::text_table() const {
  std::ostringstream os;
  os << "atlas: distributive lattices up to " << max_d_size << " elements, witnesses up to "
     << max_l_size << " elements\n";
  for (const AtlasEntry& e : entries) {
    size_t witnessed = 0;
    for (const CandidateOutcome& oc : e.outcomes)
      if (oc.witnessed) ++witnessed;
    os << "  " << e.d_name << " (" << e.d_size << " elements): " << witnessed << "/"
       << e.outcomes.size() << " candidates witnessed; desk "
       << (e.fully_representable ? "fully representable" : "not fully representable")
       << "; prediction " << (e.czedli ? "representable" : "not representable") << "; "
       << (e.agrees ? "agree" : "DISAGREE") << "\n";
    for (const CandidateOutcome& oc : e.outcomes) {
      os << "    Q = {";
      bool first = true;
      for (const std::string& s : oc.q.element_names()) {
        if (!first) os << ",";
        first = false;
        os << s;
      }
      os << "}: ";
      if (oc.witnessed)
        os << "witness " << oc.witness_name << " (" << oc.witness_size << " elements)";
      else
        os << "none up to " << oc.bound;
      os << "\n";
    }
  }
  return os.str();
}

AtlasReport atlas(size_t max_d_size, size_t max_l_size) {
  auto t0 = Clock::now();
  AtlasReport rep;
  rep.max_d_size = max_d_size;
  rep.max_l_size = max_l_size;

  struct Target {
    Lattice d;
    DProfile profile;
    std::vector<CandidateOutcome> outcomes;
    size_t unresolved;
  };
  std::vector<Target> targets;
  for (size_t n = 2; n <= max_d_size; ++n) {
    for (const Lattice& d : enumerate_distributive(n)) {
      Target t{d, DProfile(d), {}, 0};
      t.profile.d = &t.d;  // repoint after copy
      for (Candidate& c : candidates(t.d))
        t.outcomes.push_back(CandidateOutcome{std::move(c), false, 0, "", max_l_size});
      t.unresolved = t.outcomes.size();
      targets.push_back(std::move(t));
    }
  }
  // The Candidate and DProfile structures hold pointers to the lattice
  // they were built from; rebuild them against the stored copies.
  for (Target& t : targets) {
    t.profile = DProfile(t.d);
    std::vector<Candidate> cs = candidates(t.d);
    for (size_t k = 0; k < cs.size(); ++k) t.outcomes[k].q = std::move(cs[k]);
  }

  size_t unresolved_total = 0;
  for (Target& t : targets) unresolved_total += t.unresolved;
  for (size_t n = 1; n <= max_l_size && unresolved_total > 0; ++n) {
    // One pass per lattice size; every target of matching |Con| is tried.
    size_t index = 0;
    auto& sizes = con_size_cache()[n];
    detail::for_each_lattice_raw(n, [&](const Lattice& l) {
      if (index >= sizes.size()) sizes.resize(index + 1, kUnknown);
      uint16_t& cached = sizes[index];
      ++index;
      bool wanted = false;
      for (Target& t : targets)
        if (t.unresolved > 0 && (cached == kUnknown || cached == t.d.size())) wanted = true;
      if (!wanted) return true;
      ConProfile cp = con_profile(l, kConCap);
      if (cached == kUnknown) cached = uint16_t(std::min(cp.con_size, kConCap + 1));
      for (Target& t : targets) {
        if (t.unresolved == 0 || cp.con_size != t.d.size()) continue;
        for (CandidateOutcome& oc : t.outcomes) {
          if (oc.witnessed) continue;
          if (witness_match(cp, t.profile, oc.q.members, nullptr)) {
            oc.witnessed = true;
            oc.witness_size = n;
            oc.witness_name = l.name();
            --t.unresolved;
            --unresolved_total;
          }
        }
      }
      return unresolved_total > 0;
    });
  }

  for (Target& t : targets) {
    AtlasEntry e;
    e.d_size = t.d.size();
    e.d_name = t.d.name();
    e.outcomes = std::move(t.outcomes);
    e.fully_representable = t.unresolved == 0;
    e.czedli = czedli_fully_representable(t.d);
    e.agrees = e.fully_representable == e.czedli;
    rep.entries.push_back(std::move(e));
  }
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

}  // namespace princlab
