#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lextent/bigcount.hpp"
#include "lextent/poset.hpp"

namespace lextent {

// Resource bounds for the general engine. The element cap bounds the bitmask
// key width; the ideal budget rejects antichain-heavy posets whose down-set
// lattice would blow past memory even under the element cap.
struct CountLimits {
    std::size_t max_elements = 24;
    std::size_t max_ideals = std::size_t(1) << 21;
};

// Exact number of linear extensions, computed by dynamic programming over the
// lattice of down-sets (a linear extension is a maximal chain of ideals).
// Throws TooLargeError when the limits are exceeded.
BigCount count_extensions(const Poset& p, const CountLimits& limits = {});

// Exhaustive permutation filter, |P| <= 10. The test oracle.
BigCount count_extensions_bruteforce(const Poset& p);

// Two chains partitioning the elements, each listed bottom to top.
// The second chain may be empty.
using ChainCover = std::pair<std::vector<ElementId>, std::vector<ElementId>>;

// Exact count keyed on (i, j) prefix pairs of the two cover chains instead of
// on ideals: O(|P|^2) big-integer additions, usable for posets of hundreds of
// elements. Throws InvalidCoverError unless the cover is a two-chain partition
// consistent with the order.
BigCount count_extensions_width2(const Poset& p, const ChainCover& cover);

// Convenience: extract a two-chain cover from a minimum chain cover.
// Throws InvalidCoverError when width(p) > 2.
ChainCover width2_chain_cover(const Poset& p);

}  // namespace lextent
