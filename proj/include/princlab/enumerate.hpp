#pragma once

#include <functional>
#include <vector>

#include "princlab/iso.hpp"
#include "princlab/lattice.hpp"

namespace princlab {

// Hard cap for exhaustive lattice generation. Defaults to 10; the
// PRINCLAB_MAX_SIZE environment variable or set_enumeration_cap overrides.
size_t enumeration_cap();
void set_enumeration_cap(size_t cap);

// Visits every lattice with exactly n elements, one per isomorphism class,
// in canonical order. fn returns false to stop early. Throws BoundTooLarge
// when n exceeds the hard cap.
void for_each_lattice(size_t n, const std::function<bool(const Lattice&)>& fn);
std::vector<Lattice> enumerate_lattices(size_t n);

// Every distributive lattice with exactly n elements up to isomorphism,
// generated as down-set lattices of isomorph-free posets. n <= 12.
void for_each_distributive(size_t n, const std::function<bool(const Lattice&)>& fn);
std::vector<Lattice> enumerate_distributive(size_t n);

// Isomorph-free posets with exactly n elements (n <= 8).
std::vector<Poset> enumerate_posets(size_t n);

// Number of isomorphism classes (same streams as above).
size_t count_lattices(size_t n);
size_t count_distributive(size_t n);

namespace detail {
// Same stream as for_each_lattice but bounded only by the implementation
// limit, not the configurable cap; internal search machinery.
void for_each_lattice_raw(size_t n, const std::function<bool(const Lattice&)>& fn);
}  // namespace detail

}  // namespace princlab
