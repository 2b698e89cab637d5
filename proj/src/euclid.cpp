#include "lextent/euclid.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "lextent/errors.hpp"

namespace lextent {

static void check_pair(std::uint64_t n, std::uint64_t d) {
    if (d == 0 || n == 0) throw DomainError("Euclidean pair must be positive");
    if (d > n) throw DomainError("Euclidean pair must satisfy d <= n");
}

std::vector<std::uint64_t> euclidean_sequence(std::uint64_t n, std::uint64_t d) {
    check_pair(n, d);
    std::vector<std::uint64_t> seq{n, d};
    while (seq[seq.size() - 1] != 0) {
        std::uint64_t r = seq[seq.size() - 2] % seq[seq.size() - 1];
        if (r == 0) break;
        seq.push_back(r);
    }
    return seq;
}

std::vector<std::uint64_t> quotient_sequence(std::uint64_t n, std::uint64_t d) {
    check_pair(n, d);
    std::vector<std::uint64_t> q;
    std::uint64_t a = n, b = d;
    while (b != 0) {
        q.push_back(a / b);
        std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return q;
}

std::uint64_t quotient_sum(std::uint64_t n, std::uint64_t d) {
    check_pair(n, d);
    std::uint64_t a = n, b = d, sum = 0;
    while (b != 0) {
        sum += a / b;
        std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return sum;
}

static void check_positive_entries(const std::vector<std::uint64_t>& q) {
    for (auto v : q)
        if (v == 0) throw DomainError("continuant entries must be positive");
}

BigCount continuant(const std::vector<std::uint64_t>& q) {
    check_positive_entries(q);
    // Suffix recurrence X(qk..qt) = qk X(q_{k+1}..qt) + X(q_{k+2}..qt), seeded
    // with X(empty) = 1 and X(past-the-end) = 0.
    BigCount after1 = 1, after2 = 0;
    for (std::size_t i = q.size(); i-- > 0;) {
        BigCount val = BigCount(q[i]) * after1 + after2;
        after2 = after1;
        after1 = val;
    }
    return after1;
}

std::pair<BigCount, BigCount> chi(const std::vector<std::uint64_t>& q) {
    check_positive_entries(q);
    if (q.empty()) return {1, 1};  // both continuants degenerate
    BigCount after1 = 1, after2 = 0;
    for (std::size_t i = q.size(); i-- > 0;) {
        BigCount val = BigCount(q[i]) * after1 + after2;
        after2 = after1;
        after1 = val;
    }
    return {after1, after2};  // X(q1..qt), X(q2..qt)
}

std::pair<BigCount, BigCount> chi_prime(const std::vector<std::uint64_t>& q) {
    check_positive_entries(q);
    if (q.empty()) return {1, 1};
    // Continuants also satisfy the rear-append recurrence
    // X(q1..qk) = X(q1..q_{k-1}) qk + X(q1..q_{k-2}) by reversal symmetry.
    BigCount p2 = 0, p1 = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        BigCount val = p1 * BigCount(q[i]) + p2;
        p2 = p1;
        p1 = val;
    }
    return {p1, p2};  // X(q1..qt), X(q1..q_{t-1})
}

BestQuotientSum best_quotient_sum(std::uint64_t n) {
    if (n < 2) throw DomainError("best_quotient_sum needs n >= 2");
    BestQuotientSum best{0, std::numeric_limits<std::uint64_t>::max()};
    for (std::uint64_t d = 1; d <= n / 2; ++d) {
        std::uint64_t a = n, b = d, sum = 0;
        bool alive = true;
        while (b != 0) {
            sum += a / b;
            std::uint64_t r = a % b;
            a = b;
            b = r;
            if (b != 0 && sum >= best.s) {
                // An unfinished run can only grow; the termination check
                // above keeps exact ties reachable.
                alive = false;
                break;
            }
        }
        if (alive && a == 1 && sum < best.s) best = {d, sum};
    }
    return best;
}

std::vector<std::uint64_t> quotient_histogram(std::uint64_t n) {
    if (n == 0) throw DomainError("quotient histogram needs n >= 1");
    std::vector<std::uint64_t> hist(n + 1, 0);
    std::vector<std::uint64_t> q;
    for (std::uint64_t d = 1; d < n; ++d) {
        q.clear();
        std::uint64_t a = n, b = d;
        while (b != 0) {
            q.push_back(a / b);
            std::uint64_t r = a % b;
            a = b;
            b = r;
        }
        if (a != 1) continue;  // not coprime
        for (auto v : q) ++hist[v];
    }
    return hist;
}

std::uint64_t quotient_multiplicity(std::uint64_t n, std::uint64_t m) {
    if (n == 0) throw DomainError("quotient multiplicity needs n >= 1");
    if (m == 0 || m > n) throw DomainError("quotient value must lie in [1, n]");
    return quotient_histogram(n)[m];
}

std::uint64_t totient(std::uint64_t n) {
    if (n == 0) throw DomainError("totient needs n >= 1");
    std::uint64_t result = n, rem = n;
    for (std::uint64_t p = 2; p * p <= rem; ++p) {
        if (rem % p) continue;
        result -= result / p;
        while (rem % p == 0) rem /= p;
    }
    if (rem > 1) result -= result / rem;
    return result;
}

std::vector<std::uint64_t> totient_sieve(std::uint64_t N) {
    std::vector<std::uint64_t> phi(N + 1);
    std::iota(phi.begin(), phi.end(), std::uint64_t{0});
    for (std::uint64_t p = 2; p <= N; ++p) {
        if (phi[p] != p) continue;  // p composite: some prime already reduced it
        for (std::uint64_t k = p; k <= N; k += p) phi[k] -= phi[k] / p;
    }
    return phi;
}

TailRatioReport lemma_M_bound_report(std::uint64_t n, const std::vector<std::uint64_t>& Ms) {
    if (n < 2) throw DomainError("tail report needs n >= 2");
    for (auto M : Ms)
        if (M == 0 || M > n) throw DomainError("cutoff M must lie in [1, n]");
    auto hist = quotient_histogram(n);
    // Suffix sums so each cutoff is an O(1) lookup.
    std::vector<std::uint64_t> tail(n + 2, 0);
    for (std::uint64_t m = n; m >= 1; --m) tail[m] = tail[m + 1] + hist[m];
    TailRatioReport report;
    report.n = n;
    double nlogn = static_cast<double>(n) * std::log(static_cast<double>(n));
    for (auto M : Ms) {
        TailRatioRow row;
        row.M = M;
        row.tail = tail[M];
        row.ratio = static_cast<double>(row.tail) * static_cast<double>(M) / nlogn;
        report.max_ratio = std::max(report.max_ratio, row.ratio);
        report.rows.push_back(row);
    }
    return report;
}

namespace {

struct PairMin {
    std::uint32_t s = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t d = 0;
};

// Walks every coprime pair (a, b) with b <= a <= N exactly once, carrying the
// quotient sum. The tree is rooted at (1,1) and the children of (a, b) are
// (qa + b, a) for q >= 1: undoing one Euclidean step. The pair (n, 1) is
// reached through the sequence (n-1, 1), whose sum matches s(n, 1) = n.
void sweep_pairs(std::uint64_t N, std::uint64_t a0, std::uint64_t b0, std::uint64_t s0,
                 std::vector<PairMin>& best) {
    struct Node {
        std::uint64_t a, b, s;
    };
    std::vector<Node> stack;
    stack.push_back({a0, b0, s0});
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        PairMin& slot = best[nd.a];
        if (nd.s < slot.s || (nd.s == slot.s && nd.b < slot.d)) {
            slot.s = static_cast<std::uint32_t>(nd.s);
            slot.d = static_cast<std::uint32_t>(nd.b);
        }
        std::uint64_t q = 1;
        for (std::uint64_t child = nd.a + nd.b; child <= N; child += nd.a, ++q)
            stack.push_back({child, nd.a, nd.s + q});
    }
}

}  // namespace

QuotientSumReport theorem12_report(std::uint64_t N, unsigned workers) {
    if (N < 3) throw DomainError("report needs N >= 3");
    if (workers == 0) workers = 1;

    std::vector<PairMin> best(N + 1);
    {
        // Seeds: (1,1) itself plus its children (q+1, 1); each child subtree
        // is independent, so workers can claim them by atomic index.
        best[1] = {1, 1};
        std::vector<std::array<std::uint64_t, 3>> seeds;
        for (std::uint64_t q = 1; q + 1 <= N; ++q) seeds.push_back({q + 1, 1, q + 1});
        if (workers == 1) {
            for (auto& sd : seeds) sweep_pairs(N, sd[0], sd[1], sd[2], best);
        } else {
            std::vector<std::vector<PairMin>> partial(workers, std::vector<PairMin>(N + 1));
            std::atomic<std::size_t> cursor{0};
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (;;) {
                        std::size_t i = cursor.fetch_add(1);
                        if (i >= seeds.size()) break;
                        sweep_pairs(N, seeds[i][0], seeds[i][1], seeds[i][2], partial[w]);
                    }
                });
            for (auto& t : pool) t.join();
            for (auto& part : partial)
                for (std::uint64_t n = 2; n <= N; ++n) {
                    const PairMin& cand = part[n];
                    PairMin& slot = best[n];
                    if (cand.s < slot.s || (cand.s == slot.s && cand.d < slot.d)) slot = cand;
                }
        }
    }

    auto phi = totient_sieve(N);
    QuotientSumReport report;
    report.rows.reserve(N - 2);
    for (std::uint64_t n = 3; n <= N; ++n) {
        QuotientSumRow row;
        row.n = n;
        row.d = best[n].d;
        row.s_min = best[n].s;
        double ln = std::log(static_cast<double>(n));
        row.normalizer = (static_cast<double>(n) / static_cast<double>(phi[n])) * ln * std::log(ln);
        row.ratio = static_cast<double>(row.s_min) / row.normalizer;
        row.log_ratio = static_cast<double>(row.s_min) / ln;
        if (row.ratio > report.max_ratio) {
            report.max_ratio = row.ratio;
            report.argmax_n = n;
        }
        if (row.log_ratio > report.max_log_ratio) {
            report.max_log_ratio = row.log_ratio;
            report.argmax_log_n = n;
        }
        report.rows.push_back(row);
    }
    return report;
}

void write_quotient_sum_csv(const QuotientSumReport& report, std::ostream& out) {
    out << "n,d,s_min,normalizer,ratio,log_ratio\n";
    char buf[128];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%llu,%llu,%.6f,%.6f,%.6f\n",
                      static_cast<unsigned long long>(row.n), static_cast<unsigned long long>(row.d),
                      static_cast<unsigned long long>(row.s_min), row.normalizer, row.ratio, row.log_ratio);
        out << buf;
    }
}

}  // namespace lextent
