#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "princlab/lattice.hpp"
#include "princlab/poset.hpp"

namespace princlab {

// A bijection between the element sets of two structures, preserving and
// reflecting the order (for lattices this preserves join and meet).
struct IsoMap {
  std::vector<uint16_t> fwd;  // fwd[a] = image of a

  IsoMap inverse() const {
    IsoMap inv;
    inv.fwd.assign(fwd.size(), 0);
    for (size_t a = 0; a < fwd.size(); ++a) inv.fwd[fwd[a]] = uint16_t(a);
    return inv;
  }
};

// Canonical encoding of a poset's cover relation under the lexicographically
// least admissible relabeling. Equal forms <=> isomorphic structures.
struct CanonicalForm {
  std::string bytes;

  bool operator==(const CanonicalForm& o) const { return bytes == o.bytes; }
  bool operator!=(const CanonicalForm& o) const { return bytes != o.bytes; }
  bool operator<(const CanonicalForm& o) const { return bytes < o.bytes; }
  // FNV-1a digest of the encoding, for file names and hashing.
  std::string hex_digest() const;
  uint64_t hash() const;
};

// init_colors, when given, constrains relabelings to be color-preserving
// (used for role-labelled structures).
CanonicalForm canonical_form(const Poset& p, const std::vector<uint32_t>& init_colors = {});

// Canonical form together with one relabeling realizing it (old -> new).
std::pair<CanonicalForm, std::vector<uint16_t>> canonical_relabel(
    const Poset& p, const std::vector<uint32_t>& init_colors = {});

// Same, working directly on a cover list (enumeration hot path).
std::pair<CanonicalForm, std::vector<uint16_t>> canonical_relabel_covers(
    size_t n, const std::vector<std::pair<uint16_t, uint16_t>>& covers,
    const std::vector<uint32_t>& init_colors = {});

std::optional<IsoMap> find_isomorphism(const Poset& a, const Poset& b);
std::optional<IsoMap> find_isomorphism(const Lattice& a, const Lattice& b);

// Enumerates order-isomorphisms a -> b; stops early once `limit` are found.
std::vector<IsoMap> all_isomorphisms(const Poset& a, const Poset& b, size_t limit = SIZE_MAX);

bool is_order_isomorphism(const Poset& a, const Poset& b, const IsoMap& m);

}  // namespace princlab
