#include "lextent/poset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lextent {

Poset::Poset(std::size_t n, std::vector<std::uint64_t> bits, Trusted)
    : n_(n), words_(words_for(n)), lt_(std::move(bits)) {}

void Poset::check_index(ElementId a) const {
    if (a >= n_) {
        throw IndexError("element id " + std::to_string(a) + " out of range for poset of size " +
                         std::to_string(n_));
    }
}

bool Poset::less(ElementId a, ElementId b) const {
    check_index(a);
    check_index(b);
    return get_bit(a, b);
}

bool Poset::comparable(ElementId a, ElementId b) const { return less(a, b) || less(b, a); }

Poset Poset::from_cover_relations(std::size_t n, const std::vector<CoverPair>& covers) {
    Poset p(n, std::vector<std::uint64_t>(n * words_for(n), 0), Trusted{});
    for (const auto& [a, b] : covers) {
        p.check_index(a);
        p.check_index(b);
        p.set_bit(a, b);
    }
    // Warshall closure on bit rows: after pass k, row i sees everything
    // reachable through intermediates <= k.
    for (ElementId k = 0; k < n; ++k) {
        const std::uint64_t* rk = p.row(k);
        for (ElementId i = 0; i < n; ++i) {
            if (p.get_bit(i, k)) {
                std::uint64_t* ri = p.row(i);
                for (std::size_t w = 0; w < p.words_; ++w) ri[w] |= rk[w];
            }
        }
    }
    for (ElementId i = 0; i < n; ++i) {
        if (p.get_bit(i, i)) {
            throw CycleError("cover relations close into a cycle through element " +
                             std::to_string(i));
        }
    }
    return p;
}

Poset Poset::chain(std::size_t n) {
    Poset p(n, std::vector<std::uint64_t>(n * words_for(n), 0), Trusted{});
    for (ElementId i = 0; i < n; ++i)
        for (ElementId j = i + 1; j < n; ++j) p.set_bit(i, j);
    return p;
}

Poset Poset::antichain(std::size_t n) {
    return Poset(n, std::vector<std::uint64_t>(n * words_for(n), 0), Trusted{});
}

bool Poset::is_minimal(ElementId a) const {
    check_index(a);
    for (ElementId i = 0; i < n_; ++i)
        if (get_bit(i, a)) return false;
    return true;
}

bool Poset::is_maximal(ElementId a) const {
    check_index(a);
    const std::uint64_t* r = row(a);
    for (std::size_t w = 0; w < words_; ++w)
        if (r[w]) return false;
    return true;
}

std::vector<ElementId> Poset::minimal_elements() const {
    std::vector<ElementId> out;
    for (ElementId a = 0; a < n_; ++a)
        if (is_minimal(a)) out.push_back(a);
    return out;
}

std::vector<ElementId> Poset::maximal_elements() const {
    std::vector<ElementId> out;
    for (ElementId a = 0; a < n_; ++a)
        if (is_maximal(a)) out.push_back(a);
    return out;
}

std::vector<ElementId> Poset::strictly_below(ElementId x) const {
    check_index(x);
    std::vector<ElementId> out;
    for (ElementId i = 0; i < n_; ++i)
        if (get_bit(i, x)) out.push_back(i);
    return out;
}

Poset Poset::disjoint_sum(const Poset& q) const {
    std::size_t n = n_ + q.n_;
    Poset r(n, std::vector<std::uint64_t>(n * words_for(n), 0), Trusted{});
    for (ElementId i = 0; i < n_; ++i)
        for (ElementId j = 0; j < n_; ++j)
            if (get_bit(i, j)) r.set_bit(i, j);
    for (ElementId i = 0; i < q.n_; ++i)
        for (ElementId j = 0; j < q.n_; ++j)
            if (q.get_bit(i, j)) r.set_bit(n_ + i, n_ + j);
    return r;
}

Poset Poset::direct_sum(const Poset& q) const {
    Poset r = disjoint_sum(q);
    for (ElementId i = 0; i < n_; ++i)
        for (ElementId j = 0; j < q.n_; ++j) r.set_bit(i, n_ + j);
    return r;
}

Poset Poset::pinned_direct_sum(ElementId M, const Poset& q, ElementId m) const {
    check_index(M);
    q.check_index(m);
    if (!is_maximal(M))
        throw NotMaximalError("pin " + std::to_string(M) + " is not maximal in the lower part");
    if (!q.is_minimal(m))
        throw NotMinimalError("pin " + std::to_string(m) + " is not minimal in the upper part");
    Poset r = direct_sum(q);
    // Clearing (M, m) keeps the relation closed: nothing sits above M within
    // this poset or below m within q, so no third element routes around it.
    ElementId jm = static_cast<ElementId>(n_) + m;
    r.row(M)[jm >> 6] &= ~(1ull << (jm & 63));
    return r;
}

Poset Poset::add_relation(ElementId x, ElementId y) const {
    check_index(x);
    check_index(y);
    if (x == y || comparable(x, y))
        throw AlreadyComparableError("elements " + std::to_string(x) + " and " +
                                     std::to_string(y) + " are already comparable");
    Poset r = *this;
    // New pairs are exactly (a, b) with a <= x and y <= b, so closure needs
    // one sweep over the down-set of x.
    for (ElementId a = 0; a < n_; ++a) {
        if (a == x || get_bit(a, x)) {
            std::uint64_t* ra = r.row(a);
            const std::uint64_t* ry = row(y);
            for (std::size_t w = 0; w < words_; ++w) ra[w] |= ry[w];
            ra[y >> 6] |= 1ull << (y & 63);
        }
    }
    return r;
}

Poset Poset::remove_element(ElementId x) const {
    check_index(x);
    std::size_t n = n_ - 1;
    Poset r(n, std::vector<std::uint64_t>(n * words_for(n), 0), Trusted{});
    for (ElementId i = 0; i < n_; ++i) {
        if (i == x) continue;
        ElementId ri = i < x ? i : i - 1;
        for (ElementId j = 0; j < n_; ++j) {
            if (j == x) continue;
            ElementId rj = j < x ? j : j - 1;
            if (get_bit(i, j)) r.set_bit(ri, rj);
        }
    }
    return r;
}

std::vector<Poset> Poset::components() const {
    std::vector<int> comp(n_, -1);
    int parts = 0;
    for (ElementId s = 0; s < n_; ++s) {
        if (comp[s] != -1) continue;
        int c = parts++;
        std::vector<ElementId> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            ElementId v = stack.back();
            stack.pop_back();
            for (ElementId u = 0; u < n_; ++u) {
                if (comp[u] == -1 && (get_bit(v, u) || get_bit(u, v))) {
                    comp[u] = c;
                    stack.push_back(u);
                }
            }
        }
    }
    // Seeds were visited in id order, so component c's smallest member grows with c.
    std::vector<std::vector<ElementId>> members(parts);
    for (ElementId v = 0; v < n_; ++v) members[comp[v]].push_back(v);
    std::vector<Poset> out;
    out.reserve(parts);
    for (const auto& mem : members) {
        std::size_t k = mem.size();
        Poset p(k, std::vector<std::uint64_t>(k * words_for(k), 0), Trusted{});
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (get_bit(mem[i], mem[j])) p.set_bit(static_cast<ElementId>(i), static_cast<ElementId>(j));
        out.push_back(std::move(p));
    }
    return out;
}

std::size_t Poset::component_count() const {
    std::vector<int> comp(n_, -1);
    std::size_t parts = 0;
    for (ElementId s = 0; s < n_; ++s) {
        if (comp[s] != -1) continue;
        ++parts;
        std::vector<ElementId> stack{s};
        comp[s] = 0;
        while (!stack.empty()) {
            ElementId v = stack.back();
            stack.pop_back();
            for (ElementId u = 0; u < n_; ++u) {
                if (comp[u] == -1 && (get_bit(v, u) || get_bit(u, v))) {
                    comp[u] = 0;
                    stack.push_back(u);
                }
            }
        }
    }
    return parts;
}

std::vector<CoverPair> Poset::hasse_edges() const {
    std::vector<CoverPair> out;
    for (ElementId i = 0; i < n_; ++i) {
        for (ElementId j = 0; j < n_; ++j) {
            if (!get_bit(i, j)) continue;
            bool covered = true;
            for (ElementId k = 0; k < n_; ++k) {
                if (get_bit(i, k) && get_bit(k, j)) {
                    covered = false;
                    break;
                }
            }
            if (covered) out.emplace_back(i, j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Kuhn's augmenting-path matching over the closed relation; a maximum
// matching of size M yields a minimum chain cover of n - M chains.
struct Matcher {
    const Poset& p;
    std::vector<int> match_right;   // right j -> left i
    std::vector<char> seen;

    explicit Matcher(const Poset& poset) : p(poset), match_right(poset.size(), -1) {}

    bool try_augment(ElementId i) {
        for (ElementId j = 0; j < p.size(); ++j) {
            if (!p.less(i, j) || seen[j]) continue;
            seen[j] = 1;
            if (match_right[j] == -1 || try_augment(static_cast<ElementId>(match_right[j]))) {
                match_right[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    }

    std::size_t run() {
        std::size_t matched = 0;
        for (ElementId i = 0; i < p.size(); ++i) {
            seen.assign(p.size(), 0);
            if (try_augment(i)) ++matched;
        }
        return matched;
    }
};

}  // namespace

std::size_t Poset::width() const {
    if (n_ == 0) return 0;
    Matcher m(*this);
    return n_ - m.run();
}

std::vector<std::vector<ElementId>> Poset::min_chain_cover() const {
    if (n_ == 0) return {};
    Matcher m(*this);
    m.run();
    std::vector<int> next(n_, -1);
    std::vector<char> has_pred(n_, 0);
    for (ElementId j = 0; j < n_; ++j) {
        if (m.match_right[j] != -1) {
            next[m.match_right[j]] = static_cast<int>(j);
            has_pred[j] = 1;
        }
    }
    std::vector<std::vector<ElementId>> chains;
    for (ElementId v = 0; v < n_; ++v) {
        if (has_pred[v]) continue;
        std::vector<ElementId> chain;
        for (int cur = static_cast<int>(v); cur != -1; cur = next[cur])
            chain.push_back(static_cast<ElementId>(cur));
        chains.push_back(std::move(chain));
    }
    return chains;
}

bool Poset::relation_is_valid() const {
    for (ElementId i = 0; i < n_; ++i) {
        if (get_bit(i, i)) return false;
        for (ElementId j = 0; j < n_; ++j) {
            if (i != j && get_bit(i, j) && get_bit(j, i)) return false;
            if (!get_bit(i, j)) continue;
            for (ElementId k = 0; k < n_; ++k)
                if (get_bit(j, k) && !get_bit(i, k)) return false;
        }
    }
    return true;
}

}  // namespace lextent
