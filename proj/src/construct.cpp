#include "princlab/construct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "princlab/enumerate.hpp"
#include "princlab/errors.hpp"
#include "princlab/iso.hpp"

namespace princlab {

namespace {

void require_bounded(const Poset& p) {
  if (p.size() < 2)
    throw NotBoundedError("poset must have distinct bottom and top (got " +
                          std::to_string(p.size()) + " elements)");
  if (!p.is_bounded()) throw NotBoundedError("poset is not bounded");
}

std::string leg_name(const std::string& which, const std::string& p_name) {
  return which + "(" + p_name + ")";
}

}  // namespace

Lattice frame(const Poset& p, FrameRoles* roles_out) {
  require_bounded(p);
  const size_t bot = size_t(p.bottom()), top = size_t(p.top());
  std::vector<std::string> names{"o", "i"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (size_t q = 0; q < p.size(); ++q) {
    std::string a = leg_name("a", p.name_of(q));
    names.push_back(a);
    covers.emplace_back("o", a);
    if (q == bot || q == top) {
      covers.emplace_back(a, "i");
    } else {
      std::string b = leg_name("b", p.name_of(q));
      names.push_back(b);
      covers.emplace_back(a, b);
      covers.emplace_back(b, "i");
    }
  }
  Lattice l = validate_lattice(Poset(names, covers, "F(" + p.name() + ")"));
  if (roles_out) {
    roles_out->o = size_t(l.index_of("o"));
    roles_out->i = size_t(l.index_of("i"));
    roles_out->a.assign(p.size(), 0);
    roles_out->b.assign(p.size(), 0);
    for (size_t q = 0; q < p.size(); ++q) {
      roles_out->a[q] = uint16_t(l.index_of(leg_name("a", p.name_of(q))));
      roles_out->b[q] = (q == bot || q == top)
                            ? roles_out->a[q]
                            : uint16_t(l.index_of(leg_name("b", p.name_of(q))));
    }
    roles_out->copies.clear();
  }
  return l;
}

void GadgetTemplate::validate() const {
  const size_t n = s.size();
  if (n != 11) throw GadgetContractError("gadget template must have 11 elements");
  if (extra.size() != 5) throw GadgetContractError("gadget template must add 5 elements");
  std::set<uint16_t> roles{o, i, ap, bp, aq, bq};
  if (roles.size() != 6) throw GadgetContractError("gadget roles must be distinct");
  for (uint16_t e : extra)
    if (roles.count(e)) throw GadgetContractError("extra elements must not carry roles");
  if (s.bottom() != o || s.top() != i)
    throw GadgetContractError("o and i must be the template's bounds");

  auto is_cover = [&](size_t x, size_t y) {
    const auto& ups = s.poset().upper_covers(x);
    return std::find(ups.begin(), ups.end(), uint16_t(y)) != ups.end();
  };
  if (!is_cover(ap, bp) || !is_cover(aq, bq))
    throw GadgetContractError("a_p < b_p and a_q < b_q must be covers");
  for (uint16_t x : {ap, bp})
    for (uint16_t y : {aq, bq})
      if (s.poset().comparable(x, y))
        throw GadgetContractError("the p-pair and q-pair must be incomparable");

  Congruence theta_p = principal_congruence(s, ap, bp);
  Congruence theta_q = principal_congruence(s, aq, bq);
  if (!theta_q.same(ap, bp))
    throw GadgetContractError("con(a_q, b_q) must collapse {a_p, b_p}");
  if (theta_p.same(aq, bq))
    throw GadgetContractError("con(a_p, b_p) must not collapse {a_q, b_q}");
  auto interior = [&](const Congruence& c) {
    for (size_t x = 0; x < n; ++x) {
      if (x != o && c.same(x, o)) return false;
      if (x != i && c.same(x, i)) return false;
    }
    return true;
  };
  if (!interior(theta_p) || !interior(theta_q))
    throw GadgetContractError("the pair congruences must not collapse into the bounds");
  // Every prime interval of the template must generate theta_p, theta_q or
  // a congruence that will blow up to the full one in the assembled
  // lattice; anything else would add an unwanted principal congruence.
  for (auto& [lo, hi] : s.poset().covers()) {
    Congruence c = principal_congruence(s, lo, hi);
    if (c == theta_p || c == theta_q || !interior(c)) continue;
    throw GadgetContractError("cover (" + s.name_of(lo) + ", " + s.name_of(hi) +
                              ") generates a stray interior congruence");
  }
}

std::string GadgetTemplate::canonical_key() const {
  std::vector<uint32_t> colors(s.size(), 0);
  colors[o] = 1;
  colors[i] = 2;
  colors[ap] = 3;
  colors[bp] = 4;
  colors[aq] = 5;
  colors[bq] = 6;
  return canonical_form(s.poset(), colors).bytes;
}

GadgetTemplate builtin_gadget() {
  // u = ap v aq; v1 = bp v u insulates the reverse direction; v = bq v u.
  // e1, e2 are plain legs.
  std::vector<std::string> names{"o", "ap", "bp", "aq", "bq", "u", "v1", "v", "e1", "e2", "i"};
  std::vector<std::pair<std::string, std::string>> covers{
      {"o", "ap"}, {"o", "aq"}, {"o", "e1"}, {"o", "e2"}, {"ap", "bp"}, {"aq", "bq"},
      {"ap", "u"}, {"aq", "u"}, {"u", "v1"}, {"bp", "v1"}, {"v1", "v"},  {"bq", "v"},
      {"v", "i"},  {"e1", "i"}, {"e2", "i"}};
  Lattice s = validate_lattice(Poset(names, covers, "S"));
  GadgetTemplate t{std::move(s),
                   uint16_t(0),
                   uint16_t(10),
                   uint16_t(1),
                   uint16_t(2),
                   uint16_t(3),
                   uint16_t(4),
                   {}};
  t.o = uint16_t(t.s.index_of("o"));
  t.i = uint16_t(t.s.index_of("i"));
  t.ap = uint16_t(t.s.index_of("ap"));
  t.bp = uint16_t(t.s.index_of("bp"));
  t.aq = uint16_t(t.s.index_of("aq"));
  t.bq = uint16_t(t.s.index_of("bq"));
  for (const char* e : {"u", "v1", "v", "e1", "e2"}) t.extra.push_back(uint16_t(t.s.index_of(e)));
  t.validate();
  return t;
}

std::vector<GadgetTemplate> synthesize_gadget(const GadgetSearchBounds& bounds) {
  const size_t n = 6 + bounds.extra;
  if (n > 12) throw BoundTooLargeError("gadget search limited to 6 extra elements");
  std::vector<GadgetTemplate> found;
  std::set<std::string> seen;
  detail::for_each_lattice_raw(n, [&](const Lattice& l) {
    const size_t bot = l.bottom(), top = l.top();
    // All incomparable pairs complementary <=> the interior splits into
    // chains meeting at o and joining at i.
    bool all_complementary = true;
    for (size_t x = 0; x < l.size() && all_complementary; ++x)
      for (size_t y = x + 1; y < l.size() && all_complementary; ++y) {
        if (l.poset().comparable(x, y)) continue;
        if (l.meet(x, y) != bot || l.join(x, y) != top) all_complementary = false;
      }
    if (bounds.reading == GadgetReading::AllPairsComplementary && !all_complementary)
      return true;

    const auto& covers = l.poset().covers();
    std::vector<Congruence> cover_con;
    cover_con.reserve(covers.size());
    for (auto& [lo, hi] : covers) cover_con.push_back(principal_congruence(l, lo, hi));
    auto interior = [&](const Congruence& c) {
      for (size_t x = 0; x < l.size(); ++x) {
        if (x != bot && c.same(x, bot)) return false;
        if (x != top && c.same(x, top)) return false;
      }
      return true;
    };
    std::vector<bool> is_interior(covers.size());
    for (size_t c = 0; c < covers.size(); ++c) is_interior[c] = interior(cover_con[c]);

    for (size_t cp = 0; cp < covers.size(); ++cp) {
      auto [xp, yp] = covers[cp];
      if (xp == bot || yp == top || !is_interior[cp]) continue;
      for (size_t cq = 0; cq < covers.size(); ++cq) {
        if (cq == cp) continue;
        auto [xq, yq] = covers[cq];
        if (xq == bot || yq == top || !is_interior[cq]) continue;
        bool cross_ok = true;
        for (size_t x : {size_t(xp), size_t(yp)})
          for (size_t y : {size_t(xq), size_t(yq)})
            if (l.poset().comparable(x, y)) cross_ok = false;
        if (!cross_ok) continue;
        // One-way forcing between the two prime intervals.
        if (!cover_con[cq].same(xp, yp) || cover_con[cp].same(xq, yq)) continue;
        // No stray interior principal congruences from other prime intervals.
        bool stray = false;
        for (size_t c = 0; c < covers.size() && !stray; ++c)
          if (is_interior[c] && !(cover_con[c] == cover_con[cp]) &&
              !(cover_con[c] == cover_con[cq]))
            stray = true;
        if (stray) continue;
        GadgetTemplate t{l, uint16_t(bot), uint16_t(top), xp, yp, xq, yq, {}};
        for (size_t e = 0; e < l.size(); ++e)
          if (e != size_t(bot) && e != size_t(top) && e != size_t(xp) && e != size_t(yp) &&
              e != size_t(xq) && e != size_t(yq))
            t.extra.push_back(uint16_t(e));
        try {
          t.validate();
        } catch (const GadgetContractError&) {
          continue;
        }
        if (seen.insert(t.canonical_key()).second) found.push_back(std::move(t));
      }
    }
    return true;
  });
  if (found.empty())
    throw NoGadgetFoundError(
        "no gadget satisfies the contract under the requested reading (" +
        std::string(bounds.reading == GadgetReading::AllPairsComplementary ? "all pairs"
                                                                           : "cross-copy") +
        " complementarity, " + std::to_string(bounds.extra) + " extra elements)");
  std::sort(found.begin(), found.end(), [](const GadgetTemplate& a, const GadgetTemplate& b) {
    return a.canonical_key() < b.canonical_key();
  });
  return found;
}

BuildResult build_principal_lattice(const Poset& p) {
  static const GadgetTemplate default_template = builtin_gadget();
  return build_principal_lattice(p, default_template);
}

BuildResult build_principal_lattice(const Poset& p, const GadgetTemplate& tmpl) {
  require_bounded(p);
  tmpl.validate();
  const size_t bot = size_t(p.bottom()), top = size_t(p.top());

  if (p.size() == 2) {
    // Degenerate case: the two-element lattice already has Princ = {0, 1}.
    Lattice l = validate_lattice(
        Poset({"o", "i"}, {{"o", "i"}}, "L(" + p.name() + ")"));
    FrameRoles roles;
    roles.o = 0;
    roles.i = 1;
    roles.a = {0, 0};
    roles.b = {0, 0};
    roles.a[bot] = roles.b[bot] = 0;
    roles.a[top] = roles.b[top] = 1;
    return BuildResult{std::move(l), std::move(roles), p};
  }

  // Element names: frame legs plus fresh gadget elements per pair.
  std::vector<std::string> names{"o", "i"};
  std::map<std::string, size_t> index{{"o", 0}, {"i", 1}};
  auto intern = [&](const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    index.emplace(s, names.size());
    names.push_back(s);
    return names.size() - 1;
  };
  std::set<std::pair<size_t, size_t>> rel;  // generating strict relations
  std::vector<size_t> a_of(p.size()), b_of(p.size());
  for (size_t q = 0; q < p.size(); ++q) {
    size_t a = intern(leg_name("a", p.name_of(q)));
    size_t b = (q == bot || q == top) ? a : intern(leg_name("b", p.name_of(q)));
    a_of[q] = a;
    b_of[q] = b;
    rel.emplace(0, a);
    if (b != a) rel.emplace(a, b);
    rel.emplace(b, 1);
  }

  std::vector<std::vector<size_t>> copy_members;
  for (size_t lo = 0; lo < p.size(); ++lo) {
    for (size_t hi = 0; hi < p.size(); ++hi) {
      if (lo == hi || lo == bot || lo == top || hi == bot || hi == top) continue;
      if (!p.lt(lo, hi)) continue;
      // Instantiate the template over the pair lo < hi.
      std::vector<size_t> image(tmpl.s.size(), SIZE_MAX);
      image[tmpl.o] = 0;
      image[tmpl.i] = 1;
      image[tmpl.ap] = a_of[lo];
      image[tmpl.bp] = b_of[lo];
      image[tmpl.aq] = a_of[hi];
      image[tmpl.bq] = b_of[hi];
      std::string tag = "s(" + p.name_of(lo) + "," + p.name_of(hi) + "):";
      for (size_t k = 0; k < tmpl.extra.size(); ++k)
        image[tmpl.extra[k]] = intern(tag + std::to_string(k + 1));
      for (auto& [x, y] : tmpl.s.poset().covers()) rel.emplace(image[x], image[y]);
      std::vector<size_t> members(image.begin(), image.end());
      copy_members.push_back(std::move(members));
    }
  }

  // Close the generating relations, check antisymmetry, reduce to covers.
  const size_t n = names.size();
  std::vector<Bits> up(n, Bits(n));
  for (size_t v = 0; v < n; ++v) up[v].set(v);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [lo, hi] : rel) {
      Bits merged = up[lo];
      merged |= up[hi];
      if (merged != up[lo]) {
        up[lo] = merged;
        changed = true;
      }
    }
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y)
      if (up[x].test(y) && up[y].test(x))
        throw GadgetContractError("assembled order is not antisymmetric at " + names[x] +
                                  " / " + names[y]);
  std::vector<std::pair<uint16_t, uint16_t>> covers;
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      if (x == y || !up[x].test(y)) continue;
      bool direct = true;
      for (size_t z = 0; z < n && direct; ++z)
        if (z != x && z != y && up[x].test(z) && up[z].test(y)) direct = false;
      if (direct) covers.emplace_back(uint16_t(x), uint16_t(y));
    }
  }

  Lattice l = [&] {
    try {
      return validate_lattice(
          Poset::from_covers(n, covers, "L(" + p.name() + ")", names));
    } catch (const NotALatticeError& e) {
      throw GadgetContractError(std::string("assembled order is not a lattice: ") + e.what());
    }
  }();

  FrameRoles roles;
  roles.o = 0;
  roles.i = 1;
  roles.a.assign(p.size(), 0);
  roles.b.assign(p.size(), 0);
  for (size_t q = 0; q < p.size(); ++q) {
    roles.a[q] = uint16_t(a_of[q]);
    roles.b[q] = uint16_t(b_of[q]);
  }
  for (auto& members : copy_members) {
    Bits m(n);
    for (size_t e : members) m.set(e);
    roles.copies.push_back(std::move(m));
  }
  BuildResult out{std::move(l), std::move(roles), p};

  PrincipalOrderReport report = verify_principal_representation(out.lattice, out.roles, p);
  if (!report.all())
    throw GadgetContractError("assembled lattice fails verification: " + report.summary());
  return out;
}

bool verify_m3_cells_and_complements(const Lattice& l, const FrameRoles& roles) {
  const size_t n = l.size();
  if (roles.o >= n || roles.i >= n || roles.a.empty() || roles.a.size() != roles.b.size())
    throw RoleMismatchError("inconsistent frame roles");
  for (size_t q = 0; q < roles.a.size(); ++q)
    if (roles.a[q] >= n || roles.b[q] >= n) throw RoleMismatchError("role index out of range");

  // The legs of the bounds of P: a_0 and a_1 are the unique roles with
  // a = b. When the build degenerated (|L| = 2) there is nothing to check.
  std::vector<size_t> single;
  for (size_t q = 0; q < roles.a.size(); ++q)
    if (roles.a[q] == roles.b[q]) single.push_back(roles.a[q]);
  if (n <= 2) return true;
  if (single.size() != 2) throw RoleMismatchError("expected exactly two single legs");
  size_t a0 = single[0], a1 = single[1];

  const size_t o = roles.o, i = roles.i;
  // (i): each remaining element makes a diamond with o, i, a_0, a_1.
  if (l.meet(a0, a1) != o || l.join(a0, a1) != i) return false;
  for (size_t x = 0; x < n; ++x) {
    if (x == o || x == i || x == a0 || x == a1) continue;
    if (l.meet(x, a0) != o || l.join(x, a0) != i) return false;
    if (l.meet(x, a1) != o || l.join(x, a1) != i) return false;
  }
  // (ii): incomparable pairs in no common copy join at i, and meet at o
  // unless their copies share a frame leg, in which case they meet inside
  // that leg.
  Bits legs(n);
  legs.set(o);
  for (size_t q = 0; q < roles.a.size(); ++q) {
    legs.set(roles.a[q]);
    legs.set(roles.b[q]);
  }
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = x + 1; y < n; ++y) {
      if (l.poset().comparable(x, y)) continue;
      bool shared = false;
      for (const Bits& copy : roles.copies)
        if (copy.test(x) && copy.test(y)) {
          shared = true;
          break;
        }
      if (shared) continue;
      if (l.join(x, y) != i) return false;
      if (!legs.test(l.meet(x, y))) return false;
    }
  }
  return true;
}

std::string PrincipalOrderReport::summary() const {
  std::ostringstream os;
  os << "top join-irreducible: " << (top_join_irreducible ? "pass" : "FAIL")
     << "; nonzero principals join-irreducible: "
     << (principals_join_irreducible ? "pass" : "FAIL")
     << "; principal map is an isomorphism: " << (map_is_isomorphism ? "pass" : "FAIL")
     << "; leg pairs are covers: " << (pairs_are_covers ? "pass" : "FAIL");
  return os.str();
}

PrincipalOrderReport verify_principal_representation(const Lattice& l, const FrameRoles& roles,
                                                     const Poset& p) {
  PrincipalOrderReport rep;
  ConLattice con(l);

  // (a) the top congruence has a unique lower cover.
  {
    auto ji = con.join_irreducibles();
    rep.top_join_irreducible =
        std::find(ji.begin(), ji.end(), con.one_index()) != ji.end() || con.size() == 2;
    // (b) nonzero principal congruences are join-irreducible.
    rep.principals_join_irreducible = true;
    con.principal_set().for_each([&](size_t c) {
      if (c == con.zero_index()) return;
      if (std::find(ji.begin(), ji.end(), c) == ji.end())
        rep.principals_join_irreducible = false;
    });
  }

  // (c) p -> con(a_p, b_p) maps P bijectively and order-isomorphically
  // onto the principal congruences.
  {
    const size_t bot = size_t(p.bottom()), top = size_t(p.top());
    std::vector<int> image(p.size(), -1);
    bool ok = true;
    for (size_t q = 0; q < p.size() && ok; ++q) {
      Congruence c = (q == bot) ? Congruence::identity(l.size())
                   : (q == top) ? Congruence::all(l.size())
                                : principal_congruence(l, roles.a[q], roles.b[q]);
      int idx = con.index_of(c);
      if (idx < 0 || !con.is_principal(size_t(idx))) ok = false;
      image[q] = idx;
    }
    if (ok) {
      // Injective, onto Princ, and order preserving both ways.
      std::set<int> distinct(image.begin(), image.end());
      ok = distinct.size() == p.size() && distinct.size() == con.principal_set().count();
      for (size_t q1 = 0; q1 < p.size() && ok; ++q1)
        for (size_t q2 = 0; q2 < p.size() && ok; ++q2)
          if (p.leq(q1, q2) != con.leq(size_t(image[q1]), size_t(image[q2]))) ok = false;
    }
    rep.map_is_isomorphism = ok;
  }

  // (d) a_p < b_p are covers for interior p.
  {
    rep.pairs_are_covers = true;
    const size_t bot = size_t(p.bottom()), top = size_t(p.top());
    for (size_t q = 0; q < p.size(); ++q) {
      if (q == bot || q == top) continue;
      const auto& ups = l.poset().upper_covers(roles.a[q]);
      if (std::find(ups.begin(), ups.end(), roles.b[q]) == ups.end())
        rep.pairs_are_covers = false;
    }
  }
  return rep;
}

namespace {

std::string fresh_name(const Lattice& k, const std::string& base) {
  std::string name = base;
  while (k.index_of(name) >= 0) name += "'";
  return name;
}

// K boxed between fresh bounds, with extra legs complementing everything.
Lattice replace_atom(const Lattice& k, const std::vector<std::string>& legs,
                     const std::string& name) {
  std::string o = fresh_name(k, "o"), i = fresh_name(k, "i");
  std::vector<std::string> names{o};
  for (const std::string& e : k.poset().element_names()) names.push_back(e);
  std::vector<std::pair<std::string, std::string>> covers;
  covers.emplace_back(o, k.name_of(k.bottom()));
  covers.emplace_back(k.name_of(k.top()), i);
  for (const std::string& leg : legs) {
    std::string e = fresh_name(k, leg);
    names.push_back(e);
    covers.emplace_back(o, e);
    covers.emplace_back(e, i);
  }
  names.push_back(i);
  for (auto& [lo, hi] : k.poset().covers())
    covers.emplace_back(k.name_of(lo), k.name_of(hi));
  return validate_lattice(Poset(names, covers, name));
}

// Every congruence of k, extended by singleton blocks on the new elements,
// must reappear in Con(result); returns the extension's index.
int extended_index(const ConLattice& con_res, const Lattice& res, const Lattice& k,
                   const Congruence& theta) {
  std::vector<uint16_t> cls(res.size());
  const uint16_t base = uint16_t(k.size());
  for (size_t e = 0; e < res.size(); ++e) {
    int ke = k.index_of(res.name_of(e));
    cls[e] = ke >= 0 ? theta.class_of(size_t(ke)) : uint16_t(base + e);
  }
  return con_res.index_of(Congruence(cls));
}

}  // namespace

Lattice m3_atom_replace(const Lattice& k) {
  Lattice res = replace_atom(k, {"u", "v"}, "M3[" + k.name() + "]");
  // Con grows by exactly one new top; Princ gains exactly that top.
  ConLattice ck(k), cr(res);
  if (cr.size() != ck.size() + 1)
    throw Error("diamond replacement: unexpected congruence count");
  Bits expected_principal(cr.size());
  expected_principal.set(cr.one_index());
  for (size_t t = 0; t < ck.size(); ++t) {
    int idx = extended_index(cr, res, k, ck.at(t));
    if (idx < 0) throw Error("diamond replacement: congruence fails to extend");
    if (size_t(idx) == cr.one_index()) throw Error("diamond replacement: extension hit the top");
    if (ck.is_principal(t)) expected_principal.set(size_t(idx));
  }
  if (!(expected_principal == cr.principal_set()))
    throw Error("diamond replacement: principal congruences do not match Princ(K) plus top");
  return res;
}

Lattice glue_top_square(const Lattice& k) {
  Lattice res = replace_atom(k, {"y"}, "Sq[" + k.name() + "]");
  ConLattice ck(k), cr(res);
  if (cr.size() != ck.size() + 3)
    throw Error("square gluing: unexpected congruence count");
  // Expected shape: Con(K) with a 2x2 square glued on its top.
  Lattice conk = ck.as_lattice("conk");
  std::vector<std::string> names = conk.poset().element_names();
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto& [lo, hi] : conk.poset().covers())
    covers.emplace_back(conk.name_of(lo), conk.name_of(hi));
  std::string s1 = "sq1", s2 = "sq2", st = "sqt";
  names.push_back(s1);
  names.push_back(s2);
  names.push_back(st);
  std::string kt = conk.name_of(ck.one_index());
  covers.emplace_back(kt, s1);
  covers.emplace_back(kt, s2);
  covers.emplace_back(s1, st);
  covers.emplace_back(s2, st);
  Lattice expected = validate_lattice(Poset(names, covers, "expected"));
  if (!find_isomorphism(cr.as_lattice(), expected))
    throw Error("square gluing: congruence lattice is not Con(K) with a glued square");
  // Below the image of Con(K)'s top, congruences restrict to Con(K).
  for (size_t t = 0; t < ck.size(); ++t)
    if (extended_index(cr, res, k, ck.at(t)) < 0)
      throw Error("square gluing: congruence of K fails to extend");
  return res;
}

}  // namespace princlab
