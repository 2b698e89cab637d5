#include "lextent/construct.hpp"

#include <algorithm>
#include <numeric>

#include "lextent/count.hpp"
#include "lextent/errors.hpp"
#include "lextent/euclid.hpp"

namespace lextent {

namespace {

// Breadth-first sweep of the mediant-tree layers, left to right, returning the
// first (shallowest, then leftmost) path whose entry satisfies t - s = n.
// Only a safety net: the run-length derivation is exact, so this should never
// run in production paths.
DyadicPath bounded_layer_search(std::uint64_t n, std::size_t max_stage) {
    struct Node {
        std::uint64_t lo_s, lo_t, hi_s, hi_t, s, t;
        std::vector<std::uint8_t> moves;
    };
    if (max_stage > 26) max_stage = 26;  // 2^24 nodes is already far beyond need
    std::vector<Node> layer{{0, 1, 1, 1, 1, 2, {}}};
    for (std::size_t stage = 2; stage <= max_stage; ++stage) {
        for (const Node& nd : layer)
            if (nd.t - nd.s == n) {
                DyadicPath path;
                path.bits = nd.moves;
                path.bits.push_back(1);
                return path;
            }
        if (stage == max_stage) break;
        std::vector<Node> next;
        next.reserve(layer.size() * 2);
        for (const Node& nd : layer) {
            Node minus{nd.lo_s, nd.lo_t, nd.s, nd.t, nd.lo_s + nd.s, nd.lo_t + nd.t, nd.moves};
            minus.moves.push_back(0);
            Node plus{nd.s, nd.t, nd.hi_s, nd.hi_t, nd.s + nd.hi_s, nd.t + nd.hi_t, nd.moves};
            plus.moves.push_back(1);
            next.push_back(std::move(minus));
            next.push_back(std::move(plus));
        }
        layer = std::move(next);
    }
    throw InternalSearchFailureError("no tree entry with value " + std::to_string(n) +
                                     " within stage " + std::to_string(max_stage));
}

}  // namespace

DyadicPath path_from_coprime_pair(std::uint64_t n, std::uint64_t d) {
    if (n < 2 || d == 0 || d >= n) throw DomainError("need n >= 2 and 1 <= d < n");
    if (std::gcd(n, d) != 1) throw NotCoprimeError("pair must be coprime");

    // The entry d/(d+n) has t - s = n. Its continued fraction is the quotient
    // sequence of (n, d) with the leading term bumped by one; descents from
    // the tree root follow those terms as alternating runs (left first), with
    // the first and last runs each shortened by one step.
    std::vector<std::uint64_t> runs = quotient_sequence(n, d);
    runs[0] += 1;
    DyadicPath path;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::uint64_t len = runs[i] - (i == 0 ? 1 : 0) - (i + 1 == runs.size() ? 1 : 0);
        std::uint8_t dir = (i % 2 == 0) ? 0 : 1;
        for (std::uint64_t j = 0; j < len; ++j) path.bits.push_back(dir);
    }
    path.bits.push_back(1);

    std::uint64_t s = quotient_sum(n, d);
    if (tree_ext(path) != BigCount(static_cast<unsigned long>(n)) || path.stage() > s + 1)
        path = bounded_layer_search(n, s + 1);

    FamilyPoset fp = build_family_poset(path);
    if (count_family_poset(fp) != BigCount(static_cast<unsigned long>(n)))
        throw InternalSearchFailureError("counted extensions disagree with tree entry");
    return path;
}

Poset poset_with_ext_k_on_n(std::size_t n, std::size_t k) {
    if (n == 0 || k == 0 || k > n) throw DomainError("need 1 <= k <= n");
    if (n == 1) return Poset::antichain(1);
    std::vector<CoverPair> covers;
    for (std::size_t i = 0; i + 2 < n; ++i)
        covers.push_back({static_cast<ElementId>(i), static_cast<ElementId>(i + 1)});
    // Pendant y = n-1 sits above the lowest n-k chain elements, so it can only
    // occupy the top k slots of a linear extension.
    if (k < n)
        covers.push_back({static_cast<ElementId>(n - k - 1), static_cast<ElementId>(n - 1)});
    return Poset::from_cover_relations(n, covers);
}

Poset pad_to_size(const Poset& p, std::size_t n) {
    if (n < p.size()) throw DomainError("pad size below current size");
    if (n == p.size()) return p;
    std::vector<CoverPair> covers = p.hasse_edges();
    // New elements |P|..n-1 form a chain, bottom first, with its top below
    // every old minimal element.
    for (std::size_t i = p.size(); i + 1 < n; ++i)
        covers.push_back({static_cast<ElementId>(i), static_cast<ElementId>(i + 1)});
    for (ElementId min : p.minimal_elements())
        covers.push_back({static_cast<ElementId>(n - 1), min});
    return Poset::from_cover_relations(n, covers);
}

namespace {

BigCount pollard_rho(const BigCount& m);

void factor_into(const BigCount& m, std::vector<BigCount>& out) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 32) != 0) {
        out.push_back(m);
        return;
    }
    BigCount div = pollard_rho(m);
    factor_into(div, out);
    factor_into(m / div, out);
}

BigCount pollard_rho(const BigCount& m) {
    // Brent's variant; cycles of x -> x^2 + c mod m with batched gcds.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eedc0de);
    for (;;) {
        BigCount y = rng.get_z_range(m - 2) + 1;
        BigCount c = rng.get_z_range(m - 1) + 1;
        BigCount x = y, d = 1, q = 1, ys = y;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % m;
            for (unsigned long k = 0; k < r && d == 1; k += batch) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % m;
                    q = q * (x > y ? x - y : y - x) % m;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
            }
            r *= 2;
        }
        if (d == m) {
            // Backtrack one step at a time for the missed factor.
            do {
                ys = (ys * ys + c) % m;
                BigCount diff = x > ys ? x - ys : ys - x;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            } while (d == 1);
        }
        if (d != m) return d;
    }
}

}  // namespace

std::vector<BigCount> factorize(const BigCount& m) {
    if (m < 2) throw DomainError("factorize needs m >= 2");
    std::vector<BigCount> primes;
    BigCount rem = m;
    for (unsigned long p = 2; p <= 1000000ul && BigCount(p) * p <= rem; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            primes.emplace_back(p);
            rem /= p;
        }
    }
    if (rem > 1) factor_into(rem, primes);
    std::sort(primes.begin(), primes.end());
    return primes;
}

ConstructionResult poset_for_target(const BigCount& m, const ConstructOptions& opts) {
    if (m < 1) throw DomainError("target must be >= 1");
    ConstructionResult result;
    result.target = m;

    std::vector<ElementId> chain_a, chain_b;
    auto append_shifted = [](std::vector<ElementId>& dst, const std::vector<ElementId>& src,
                             std::size_t off) {
        for (ElementId e : src) dst.push_back(static_cast<ElementId>(e + off));
    };

    if (opts.exact_size && m > 1 && m <= BigCount(static_cast<unsigned long>(*opts.exact_size))) {
        std::size_t n = *opts.exact_size;
        std::size_t k = static_cast<std::size_t>(m.get_ui());
        result.poset = poset_with_ext_k_on_n(n, k);
        result.used_small_gadget = true;
        for (std::size_t i = 0; i + 1 < n; ++i) chain_a.push_back(static_cast<ElementId>(i));
        if (n > 1) chain_b.push_back(static_cast<ElementId>(n - 1));
        else chain_a.push_back(0);
    } else if (m == 1) {
        result.poset = opts.allow_empty ? Poset::antichain(0) : Poset::antichain(1);
        if (!opts.allow_empty) chain_a.push_back(0);
    } else {
        std::vector<BigCount> primes = factorize(m);
        std::size_t off = 0;
        for (const BigCount& p : primes) {
            if (!p.fits_ulong_p()) throw TooLargeError("prime factor exceeds supported range");
            std::uint64_t pu = p.get_ui();
            BestQuotientSum best = best_quotient_sum(pu);
            PrimeBlock block;
            block.p = p;
            block.d = best.d;
            block.path = path_from_coprime_pair(pu, best.d);
            FamilyPoset fp = build_family_poset(block.path);
            block.size = fp.poset.size();
            result.poset = result.blocks.empty() ? fp.poset : result.poset.direct_sum(fp.poset);
            append_shifted(chain_a, fp.left_chain, off);
            append_shifted(chain_b, fp.right_chain, off);
            off += block.size;
            result.blocks.push_back(std::move(block));
        }
    }

    if (opts.exact_size) {
        if (result.poset.size() > *opts.exact_size)
            throw InfeasibleError("construction needs " + std::to_string(result.poset.size()) +
                                  " elements, more than the requested " +
                                  std::to_string(*opts.exact_size));
        result.padding = *opts.exact_size - result.poset.size();
        if (result.padding > 0) {
            std::size_t old = result.poset.size();
            result.poset = pad_to_size(result.poset, *opts.exact_size);
            // Padding ids ascend bottom-to-top and precede every old element.
            std::vector<ElementId> pad;
            for (std::size_t i = old; i < *opts.exact_size; ++i)
                pad.push_back(static_cast<ElementId>(i));
            pad.insert(pad.end(), chain_a.begin(), chain_a.end());
            chain_a = std::move(pad);
        }
    }

    result.size = result.poset.size();
    if (count_extensions_width2(result.poset, {chain_a, chain_b}) != m)
        throw InternalSearchFailureError("assembled poset failed count verification");
    return result;
}

}  // namespace lextent
