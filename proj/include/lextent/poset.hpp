#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "lextent/errors.hpp"

namespace lextent {

using ElementId = std::uint32_t;
using CoverPair = std::pair<ElementId, ElementId>;

// Finite poset on elements 0..size()-1 with the strict relation stored as a
// dense, transitively closed bit matrix. Invariants held by every value:
// irreflexive, antisymmetric, transitively closed. Posets are immutable;
// all operators return fresh values, so they are safe to share across threads.
class Poset {
public:
    Poset() = default;  // empty poset

    // Transitive closure of the given pairs. Throws IndexError for ids outside
    // [0,n) and CycleError if the closure would relate an element to itself.
    static Poset from_cover_relations(std::size_t n, const std::vector<CoverPair>& covers);

    static Poset chain(std::size_t n);
    static Poset antichain(std::size_t n);

    std::size_t size() const { return n_; }
    bool less(ElementId a, ElementId b) const;  // strict a < b
    bool comparable(ElementId a, ElementId b) const;

    bool is_minimal(ElementId a) const;
    bool is_maximal(ElementId a) const;
    std::vector<ElementId> minimal_elements() const;
    std::vector<ElementId> maximal_elements() const;

    // Elements strictly below x, ascending by id.
    std::vector<ElementId> strictly_below(ElementId x) const;

    // P + Q: no cross relations, Q re-indexed after P.
    Poset disjoint_sum(const Poset& q) const;

    // P 'plus' Q stacked: every element of P below every element of Q.
    Poset direct_sum(const Poset& q) const;

    // direct_sum with exactly the pair (M, m) removed. M must be maximal here
    // and m minimal in q; removing a relation between a maximal and a minimal
    // element cannot break transitivity. m is q-local; in the result it sits
    // at index size() + m.
    Poset pinned_direct_sum(ElementId M, const Poset& q, ElementId m) const;

    // Closure of the relation plus x < y. Throws AlreadyComparableError.
    Poset add_relation(ElementId x, ElementId y) const;

    // Induced order on the remaining elements, re-indexed contiguously in
    // original id order (stable for serialization).
    Poset remove_element(ElementId x) const;

    // Finest decomposition into a disjoint sum: connected components of the
    // comparability graph, ordered by smallest member, each re-indexed.
    std::vector<Poset> components() const;
    std::size_t component_count() const;

    // Transitive reduction, sorted lexicographically.
    std::vector<CoverPair> hasse_edges() const;

    // Maximum antichain size, exact at every size this library uses.
    // Computed as the size of a minimum chain cover (Dilworth) obtained from
    // a maximum bipartite matching on the closed relation.
    std::size_t width() const;

    // A minimum chain cover; each chain runs bottom to top, chains ordered by
    // their bottom element. Its length equals width().
    std::vector<std::vector<ElementId>> min_chain_cover() const;

    // Re-checks the three representation invariants (fuzz-test hook).
    bool relation_is_valid() const;

    bool operator==(const Poset&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;                // 64-bit words per row
    std::vector<std::uint64_t> lt_;        // bit j of row i set iff i < j

    struct Trusted {};                     // tag: bits already closed and valid
    Poset(std::size_t n, std::vector<std::uint64_t> bits, Trusted);

    const std::uint64_t* row(ElementId i) const { return lt_.data() + i * words_; }
    std::uint64_t* row(ElementId i) { return lt_.data() + i * words_; }
    void set_bit(ElementId i, ElementId j) { row(i)[j >> 6] |= 1ull << (j & 63); }
    bool get_bit(ElementId i, ElementId j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }
    void check_index(ElementId a) const;

    static std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
};

}  // namespace lextent
