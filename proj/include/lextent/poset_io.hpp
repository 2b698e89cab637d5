#pragma once

#include <iosfwd>
#include <string>

#include "lextent/poset.hpp"

namespace lextent {

// Text interchange format:
//   poset v1
//   elements <n>
//   cover <i> <j>      (one line per pair, meaning i < j, 0-indexed)
// Pairs may appear in any order; the closure is applied on load. The writer
// emits the transitive reduction in sorted order, so write/read round-trips
// reproduce the poset exactly.
Poset read_poset(std::istream& in);
void write_poset(std::ostream& out, const Poset& p);

Poset read_poset_file(const std::string& path);
void write_poset_file(const std::string& path, const Poset& p);

}  // namespace lextent
