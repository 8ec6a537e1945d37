#include "princlab/lattice.hpp"

#include <algorithm>

namespace princlab {

Lattice validate_lattice(const Poset& p) {
  const size_t n = p.size();
  if (n == 0) throw NotALatticeError("", "", "empty poset is not a lattice");
  Lattice l(p);
  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a; b < n; ++b) {
      // lub: the unique minimal common upper bound.
      Bits ub = p.up_set(a) & p.up_set(b);
      int lub = -1;
      for (size_t c = 0; c < n; ++c) {
        if (!ub.test(c)) continue;
        if ((p.down_set(c) & ub).count() == 1) {
          if (lub >= 0) {
            lub = -2;
            break;
          }
          lub = int(c);
        }
      }
      if (lub < 0)
        throw NotALatticeError(p.name_of(a), p.name_of(b),
                               "pair (" + p.name_of(a) + ", " + p.name_of(b) + ") has " +
                                   (lub == -1 ? "no" : "no unique") + " least upper bound");
      Bits lb = p.down_set(a) & p.down_set(b);
      int glb = -1;
      for (size_t c = 0; c < n; ++c) {
        if (!lb.test(c)) continue;
        if ((p.up_set(c) & lb).count() == 1) {
          if (glb >= 0) {
            glb = -2;
            break;
          }
          glb = int(c);
        }
      }
      if (glb < 0)
        throw NotALatticeError(p.name_of(a), p.name_of(b),
                               "pair (" + p.name_of(a) + ", " + p.name_of(b) + ") has " +
                                   (glb == -1 ? "no" : "no unique") + " greatest lower bound");
      l.join_[a * n + b] = l.join_[b * n + a] = uint16_t(lub);
      l.meet_[a * n + b] = l.meet_[b * n + a] = uint16_t(glb);
    }
  }
  l.bottom_ = uint16_t(p.bottom());
  l.top_ = uint16_t(p.top());
  return l;
}

std::vector<size_t> Lattice::join_irreducibles() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (i != bottom_ && poset_.lower_covers(i).size() == 1) out.push_back(i);
  return out;
}

std::vector<size_t> Lattice::meet_irreducibles() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (i != top_ && poset_.upper_covers(i).size() == 1) out.push_back(i);
  return out;
}

Bits Lattice::jplus() const {
  Bits out(size());
  out.set(bottom_);
  out.set(top_);
  for (size_t i : join_irreducibles()) out.set(i);
  return out;
}

std::optional<size_t> Lattice::sectional_complement(size_t a, size_t b) const {
  if (!leq(a, b))
    throw NotComparableError("sectional_complement requires " + name_of(a) +
                             " <= " + name_of(b));
  for (size_t w = 0; w < size(); ++w)
    if (meet(a, w) == bottom_ && join(a, w) == b) return w;
  return std::nullopt;
}

bool Lattice::is_sectionally_complemented() const {
  for (size_t a = 0; a < size(); ++a)
    for (size_t b = 0; b < size(); ++b)
      if (leq(a, b) && !sectional_complement(a, b)) return false;
  return true;
}

Poset Lattice::ji_poset(std::string name) const {
  return poset_.induced(join_irreducibles(),
                        name.empty() ? "J(" + this->name() + ")" : std::move(name));
}

Lattice Lattice::dual(std::string name) const { return validate_lattice(poset_.dual(std::move(name))); }

}  // namespace princlab
