#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lextent/bigcount.hpp"
#include "lextent/family.hpp"
#include "lextent/poset.hpp"

namespace lextent {

// Canonical path whose tree entry satisfies t - s = n, with stage <= s(n,d)+1.
// Derived from the quotient sequence of (n, d) by the run-length
// correspondence between continued fractions and mediant-tree descents, then
// verified two ways (tree entry and width-2 count) before returning; a bounded
// layer search backs the derivation up should it ever disagree.
DyadicPath path_from_coprime_pair(std::uint64_t n, std::uint64_t d);

struct PrimeBlock {
    BigCount p;
    std::uint64_t d = 0;      // witness from best_quotient_sum(p)
    DyadicPath path;
    std::size_t size = 0;     // = path.stage()
};

struct ConstructOptions {
    std::optional<std::size_t> exact_size;  // pad with global minima up to this
    bool allow_empty = false;               // permit the 0-element poset for target 1
};

struct ConstructionResult {
    Poset poset;
    BigCount target;
    std::size_t size = 0;
    std::vector<PrimeBlock> blocks;  // empty when a gadget or trivial route was taken
    std::size_t padding = 0;
    bool used_small_gadget = false;
};

// Builds a poset with exactly m linear extensions: one width-2 block per prime
// factor of m (with multiplicity), stacked bottom-to-top by direct sum in
// ascending prime order. Small targets m <= exact_size take the chain+pendant
// gadget instead. The result is re-counted before returning; a mismatch throws
// InternalSearchFailureError. exact_size pads with a chain of new global
// minima, or throws InfeasibleError when the construction is already larger.
ConstructionResult poset_for_target(const BigCount& m, const ConstructOptions& opts = {});

// n-element poset with exactly k extensions: a chain of n-1 elements plus a
// pendant above all but the top k-1 of them; k = n leaves the pendant
// isolated, k = 1 degenerates to chain(n).
Poset poset_with_ext_k_on_n(std::size_t n, std::size_t k);

// Appends a chain of n - |P| new global minima (ids |P|..n-1, bottom first);
// the extension count is unchanged.
Poset pad_to_size(const Poset& p, std::size_t n);

// Prime factorization with multiplicity, ascending. Trial division through
// 10^6, then probabilistic primality plus Pollard rho for what remains.
std::vector<BigCount> factorize(const BigCount& m);

}  // namespace lextent
