#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lextent/bigcount.hpp"

namespace lextent {

// Remainder sequence of the Euclidean algorithm on (n, d), both endpoints
// included: (8,5) -> 8,5,3,2,1 and (6,3) -> 6,3. Requires 1 <= d <= n.
std::vector<std::uint64_t> euclidean_sequence(std::uint64_t n, std::uint64_t d);

// Quotient sequence of the same run: (8,5) -> 1,1,1,2. Its length is one less
// than the remainder sequence's.
std::vector<std::uint64_t> quotient_sequence(std::uint64_t n, std::uint64_t d);

// Sum of the quotient sequence, written s(n,d) below.
std::uint64_t quotient_sum(std::uint64_t n, std::uint64_t d);

// Continuant X of a sequence of positive integers: X() = 1, X(q1) = q1,
// X(q1,...,qt) = q1 X(q2,...,qt) + X(q3,...,qt). Symmetric under reversal.
BigCount continuant(const std::vector<std::uint64_t>& q);

// chi(q) = (X(q1..qt), X(q2..qt)): a coprime pair; inverts quotient_sequence.
std::pair<BigCount, BigCount> chi(const std::vector<std::uint64_t>& q);

// chi'(q) = (X(q1..qt), X(q1..q_{t-1})): a coprime pair with first >= second.
std::pair<BigCount, BigCount> chi_prime(const std::vector<std::uint64_t>& q);

struct BestQuotientSum {
    std::uint64_t d = 0;
    std::uint64_t s = 0;
};

// Minimizes s(n,d) over d in [1, n-1] coprime to n; ties broken by smallest d.
// Scans only d <= n/2 because reversing a quotient sequence shows
// s(n,d) = s(n,n-d), and prunes each run once its partial sum cannot win.
BestQuotientSum best_quotient_sum(std::uint64_t n);

// hist[m] = number of occurrences of the value m across the quotient
// sequences q(n,d) for all d in [1, n-1] coprime to n; hist has size n+1 and
// index 0 is unused. One pass, O(n log n) divisions.
std::vector<std::uint64_t> quotient_histogram(std::uint64_t n);

// r(n,m): the m-th entry of the histogram above. Requires 1 <= m <= n.
std::uint64_t quotient_multiplicity(std::uint64_t n, std::uint64_t m);

// Euler's totient, single value and sieve (sieve[0] = 0, exact through N).
std::uint64_t totient(std::uint64_t n);
std::vector<std::uint64_t> totient_sieve(std::uint64_t N);

struct TailRatioRow {
    std::uint64_t M = 0;
    std::uint64_t tail = 0;  // sum of hist[m] for m >= M
    double ratio = 0.0;      // tail * M / (n ln n)
};

struct TailRatioReport {
    std::uint64_t n = 0;
    std::vector<TailRatioRow> rows;
    double max_ratio = 0.0;
};

// Tail mass of the quotient histogram at each cutoff M, with the normalized
// ratio whose boundedness the calibration run freezes. Each M must lie in
// [1, n].
TailRatioReport lemma_M_bound_report(std::uint64_t n, const std::vector<std::uint64_t>& Ms);

struct QuotientSumRow {
    std::uint64_t n = 0;
    std::uint64_t d = 0;      // witness from best_quotient_sum's tie-break
    std::uint64_t s_min = 0;
    double normalizer = 0.0;  // (n/phi(n)) ln n ln ln n
    double ratio = 0.0;       // s_min / normalizer
    double log_ratio = 0.0;   // s_min / ln n
};

struct QuotientSumReport {
    std::vector<QuotientSumRow> rows;  // n = 3..N in order
    double max_ratio = 0.0;
    std::uint64_t argmax_n = 0;
    double max_log_ratio = 0.0;
    std::uint64_t argmax_log_n = 0;
};

// s_min(n) for every 3 <= n <= N with the normalized ratios and their maxima.
// Internally walks the tree of coprime pairs (each pair once, quotient sum
// carried incrementally), so the whole sweep costs O(sum of phi) pair visits
// instead of a fresh Euclidean run per (n,d). Workers split the top-level
// subtrees; merging minima is associative, so output is identical for any
// worker count.
QuotientSumReport theorem12_report(std::uint64_t N, unsigned workers = 1);

// CSV: header n,d,s_min,normalizer,ratio,log_ratio then one row per n.
void write_quotient_sum_csv(const QuotientSumReport& report, std::ostream& out);

}  // namespace lextent
