#include "lextent/count.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace lextent {

BigCount count_extensions(const Poset& p, const CountLimits& limits) {
    std::size_t n = p.size();
    if (n > limits.max_elements || n > 32)
        throw TooLargeError("general engine bound exceeded: " + std::to_string(n) + " elements");
    if (n == 0) return 1;

    std::vector<std::uint32_t> pred(n, 0);
    for (ElementId j = 0; j < n; ++j)
        for (ElementId i = 0; i < n; ++i)
            if (p.less(i, j)) pred[j] |= 1u << i;

    // Walk the ideal lattice level by level; f[S] counts maximal chains of
    // ideals ending at S, i.e. linear extensions of the elements of S.
    std::unordered_map<std::uint32_t, BigCount> cur, next;
    cur.emplace(0u, 1);
    std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::size_t ideals_seen = 1;
    for (std::size_t level = 0; level < n; ++level) {
        next.clear();
        for (const auto& [S, ways] : cur) {
            for (ElementId x = 0; x < n; ++x) {
                if ((S >> x) & 1) continue;
                if ((pred[x] & ~S) != 0) continue;  // not addable: a predecessor is missing
                auto [it, fresh] = next.try_emplace(S | (1u << x));
                if (fresh && ++ideals_seen > limits.max_ideals)
                    throw TooLargeError("ideal lattice exceeds the configured memory budget");
                it->second += ways;
            }
        }
        cur.swap(next);
    }
    auto it = cur.find(full);
    return it == cur.end() ? BigCount(0) : it->second;
}

BigCount count_extensions_bruteforce(const Poset& p) {
    std::size_t n = p.size();
    if (n > 10) throw TooLargeError("brute-force oracle capped at 10 elements");
    if (n == 0) return 1;

    std::vector<std::pair<ElementId, ElementId>> pairs;
    for (ElementId i = 0; i < n; ++i)
        for (ElementId j = 0; j < n; ++j)
            if (p.less(i, j)) pairs.emplace_back(i, j);

    std::vector<ElementId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> pos(n);
    unsigned long good = 0;
    do {
        for (std::size_t k = 0; k < n; ++k) pos[perm[k]] = k;
        bool ok = true;
        for (const auto& [i, j] : pairs) {
            if (pos[i] > pos[j]) {
                ok = false;
                break;
            }
        }
        good += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return BigCount(good);
}

namespace {

void check_is_chain(const Poset& p, const std::vector<ElementId>& c) {
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        if (!p.less(c[k], c[k + 1]))
            throw InvalidCoverError("cover chain is not ascending at position " + std::to_string(k));
    }
}

}  // namespace

BigCount count_extensions_width2(const Poset& p, const ChainCover& cover) {
    const auto& c1 = cover.first;
    const auto& c2 = cover.second;
    std::size_t n = p.size();
    if (c1.size() + c2.size() != n)
        throw InvalidCoverError("chain cover does not partition the elements");
    std::vector<char> seen(n, 0);
    for (const auto& c : {c1, c2}) {
        for (ElementId v : c) {
            if (v >= n || seen[v]) throw InvalidCoverError("chain cover repeats or misses an element");
            seen[v] = 1;
        }
    }
    check_is_chain(p, c1);
    check_is_chain(p, c2);

    std::size_t a = c1.size(), b = c2.size();
    // Cross-chain prefixes: an ideal holding the first i of c1 needs the first
    // need1[i-1] of c2 (elements below a chain element form a chain prefix).
    std::vector<std::size_t> need1(a, 0), need2(b, 0);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            if (p.less(c2[j], c1[i])) need1[i] = std::max(need1[i], j + 1);
    for (std::size_t j = 0; j < b; ++j)
        for (std::size_t i = 0; i < a; ++i)
            if (p.less(c1[i], c2[j])) need2[j] = std::max(need2[j], i + 1);

    auto ideal = [&](std::size_t i, std::size_t j) {
        if (i > 0 && j < need1[i - 1]) return false;
        if (j > 0 && i < need2[j - 1]) return false;
        return true;
    };

    std::vector<BigCount> prev(b + 1), row(b + 1);
    prev[0] = 1;
    for (std::size_t j = 1; j <= b; ++j) prev[j] = ideal(0, j) ? prev[j - 1] : BigCount(0);
    for (std::size_t i = 1; i <= a; ++i) {
        for (std::size_t j = 0; j <= b; ++j) {
            if (!ideal(i, j)) {
                row[j] = 0;
                continue;
            }
            row[j] = prev[j];
            if (j > 0) row[j] += row[j - 1];
        }
        prev.swap(row);
    }
    return prev[b];
}

ChainCover width2_chain_cover(const Poset& p) {
    auto chains = p.min_chain_cover();
    if (chains.size() > 2)
        throw InvalidCoverError("poset has width " + std::to_string(chains.size()) +
                                ", width-2 engine needs a two-chain cover");
    ChainCover cover;
    if (!chains.empty()) cover.first = std::move(chains[0]);
    if (chains.size() == 2) cover.second = std::move(chains[1]);
    return cover;
}

}  // namespace lextent
