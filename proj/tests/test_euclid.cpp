#include "doctest.h"

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "lextent/errors.hpp"
#include "lextent/euclid.hpp"

using namespace lextent;

namespace {

// All compositions of total into positive parts, smallest totals first.
std::vector<std::vector<std::uint64_t>> compositions_of(std::uint64_t total) {
    std::vector<std::vector<std::uint64_t>> out;
    if (total == 0) {
        out.push_back({});
        return out;
    }
    for (std::uint64_t first = 1; first <= total; ++first)
        for (auto rest : compositions_of(total - first)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

}  // namespace

TEST_CASE("remainder and quotient sequences") {
    CHECK(euclidean_sequence(8, 5) == std::vector<std::uint64_t>{8, 5, 3, 2, 1});
    CHECK(euclidean_sequence(6, 3) == std::vector<std::uint64_t>{6, 3});
    CHECK(euclidean_sequence(5, 5) == std::vector<std::uint64_t>{5, 5});
    CHECK(quotient_sequence(8, 5) == std::vector<std::uint64_t>{1, 1, 1, 2});
    CHECK(quotient_sequence(6, 3) == std::vector<std::uint64_t>{2});
    CHECK(quotient_sequence(5, 3) == std::vector<std::uint64_t>{1, 1, 2});
    CHECK(quotient_sequence(7, 1) == std::vector<std::uint64_t>{7});
    CHECK(quotient_sum(8, 5) == 5);
    CHECK(quotient_sum(7, 1) == 7);

    // quotient list is one shorter than the remainder list
    for (std::uint64_t n = 1; n <= 40; ++n)
        for (std::uint64_t d = 1; d <= n; ++d)
            CHECK(quotient_sequence(n, d).size() + 1 == euclidean_sequence(n, d).size());

    // reversal symmetry of the sum across d <-> n - d
    for (std::uint64_t n = 2; n <= 60; ++n)
        for (std::uint64_t d = 1; d < n; ++d)
            if (std::gcd(n, d) == 1) CHECK(quotient_sum(n, d) == quotient_sum(n, n - d));

    CHECK_THROWS_AS(euclidean_sequence(5, 0), DomainError);
    CHECK_THROWS_AS(euclidean_sequence(0, 1), DomainError);
    CHECK_THROWS_AS(quotient_sequence(3, 4), DomainError);
    CHECK_THROWS_AS(quotient_sum(3, 0), DomainError);
}

TEST_CASE("continuant basics and reversal symmetry") {
    CHECK(continuant({}) == 1);
    CHECK(continuant({7}) == 7);
    CHECK(continuant({1, 1, 1, 2}) == 8);
    CHECK(continuant({2, 1, 2}) == 8);  // X(q1,q2,q3) = q1 q2 q3 + q1 + q3
    CHECK_THROWS_AS(continuant({1, 0, 2}), DomainError);

    for (std::uint64_t total = 0; total <= 14; ++total)
        for (const auto& q : compositions_of(total)) {
            std::vector<std::uint64_t> rev(q.rbegin(), q.rend());
            CHECK(continuant(q) == continuant(rev));
        }
}

TEST_CASE("chi inverts the quotient sequence on coprime pairs") {
    CHECK(chi({}) == std::pair<BigCount, BigCount>{1, 1});
    CHECK(chi({1, 1, 1, 2}) == std::pair<BigCount, BigCount>{8, 5});
    for (std::uint64_t n = 1; n <= 60; ++n)
        for (std::uint64_t d = 1; d <= n; ++d) {
            if (std::gcd(n, d) != 1) continue;
            auto [a, b] = chi(quotient_sequence(n, d));
            CHECK(a == n);
            CHECK(b == d);
        }
}

TEST_CASE("chi_prime yields coprime pairs with first >= second") {
    CHECK(chi_prime({}) == std::pair<BigCount, BigCount>{1, 1});
    CHECK(chi_prime({1, 1, 1, 2}) == std::pair<BigCount, BigCount>{8, 3});
    for (std::uint64_t total = 1; total <= 12; ++total)
        for (const auto& q : compositions_of(total)) {
            auto [x, y] = chi_prime(q);
            CHECK(x >= y);
            BigCount g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            CHECK(g == 1);
            // chi' is chi of the reversed sequence
            std::vector<std::uint64_t> rev(q.rbegin(), q.rend());
            CHECK(chi(rev).first == x);
            CHECK(chi(rev).second == y);
        }
}

TEST_CASE("chi and chi_prime are injective on their Euclidean domains") {
    // chi inverts quotient sequences, whose last entry is >= 2 except for the
    // singleton (1); chi_prime is chi after reversal, so its domain mirrors to
    // first entry >= 2. Outside those domains both maps collide: (2) and
    // (1,1) hit (2,1), and chi_prime sends (3) and (1,2) both to (3,1).
    std::map<std::pair<BigCount, BigCount>, std::vector<std::uint64_t>> seen_chi, seen_chi_prime;
    for (std::uint64_t total = 1; total <= 12; ++total)
        for (const auto& q : compositions_of(total)) {
            if (q.back() >= 2 || q == std::vector<std::uint64_t>{1}) {
                auto inserted = seen_chi.emplace(chi(q), q);
                CHECK(inserted.second);
            }
            if (q.front() >= 2 || q == std::vector<std::uint64_t>{1}) {
                auto inserted = seen_chi_prime.emplace(chi_prime(q), q);
                CHECK(inserted.second);
            }
        }
    // the boundary collisions that force the domain restriction
    CHECK(chi({2}) == chi({1, 1}));
    CHECK(chi_prime({2}) == chi_prime({1, 1}));
    CHECK(chi_prime({3}) == chi_prime({1, 2}));
}

TEST_CASE("best quotient sum matches a naive scan") {
    CHECK_THROWS_AS(best_quotient_sum(1), DomainError);
    auto b2 = best_quotient_sum(2);
    CHECK(b2.d == 1);
    CHECK(b2.s == 2);
    auto b8 = best_quotient_sum(8);
    CHECK(b8.d == 3);
    CHECK(b8.s == 5);
    auto b10 = best_quotient_sum(10);
    CHECK(b10.s == 6);

    for (std::uint64_t n = 2; n <= 500; ++n) {
        std::uint64_t best_s = UINT64_MAX, best_d = 0;
        for (std::uint64_t d = 1; d < n; ++d) {
            if (std::gcd(n, d) != 1) continue;
            std::uint64_t s = quotient_sum(n, d);
            if (s < best_s) {
                best_s = s;
                best_d = d;
            }
        }
        auto got = best_quotient_sum(n);
        CHECK(got.s == best_s);
        CHECK(got.d == best_d);
    }
}

TEST_CASE("quotient histogram counts value occurrences over coprime d") {
    // n = 5: q(5,1)=(5), q(5,2)=(2,2), q(5,3)=(1,1,2), q(5,4)=(1,4)
    auto h5 = quotient_histogram(5);
    CHECK(h5[1] == 3);
    CHECK(h5[2] == 3);
    CHECK(h5[3] == 0);
    CHECK(h5[4] == 1);
    CHECK(h5[5] == 1);
    CHECK(quotient_multiplicity(5, 2) == 3);
    CHECK(quotient_multiplicity(5, 5) == 1);
    for (std::uint64_t n = 2; n <= 30; ++n) CHECK(quotient_multiplicity(n, n) == 1);

    // total quotient count both ways: sum of |q(n,d)| = sum of r(n,m)
    for (std::uint64_t n = 2; n <= 200; ++n) {
        std::uint64_t by_run = 0;
        for (std::uint64_t d = 1; d < n; ++d)
            if (std::gcd(n, d) == 1) by_run += quotient_sequence(n, d).size();
        auto hist = quotient_histogram(n);
        std::uint64_t by_value = std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
        CHECK(by_run == by_value);
    }

    CHECK_THROWS_AS(quotient_histogram(0), DomainError);
    CHECK_THROWS_AS(quotient_multiplicity(5, 0), DomainError);
    CHECK_THROWS_AS(quotient_multiplicity(5, 6), DomainError);
}

TEST_CASE("totient single and sieve") {
    CHECK(totient(1) == 1);
    CHECK(totient(12) == 4);
    CHECK(totient(13) == 12);
    CHECK(totient(100) == 40);
    CHECK_THROWS_AS(totient(0), DomainError);
    auto phi = totient_sieve(2000);
    CHECK(phi[0] == 0);
    for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(phi[n] == totient(n));
}

TEST_CASE("tail ratio report") {
    // n = 5 histogram as above: tail at M=5 is 1, at M=2 is 5
    auto rep = lemma_M_bound_report(5, {5, 2});
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].M == 5);
    CHECK(rep.rows[0].tail == 1);
    CHECK(rep.rows[1].M == 2);
    CHECK(rep.rows[1].tail == 5);
    CHECK(rep.max_ratio == doctest::Approx(rep.rows[1].ratio));
    CHECK_THROWS_AS(lemma_M_bound_report(1, {1}), DomainError);
    CHECK_THROWS_AS(lemma_M_bound_report(5, {0}), DomainError);
    CHECK_THROWS_AS(lemma_M_bound_report(5, {6}), DomainError);
}

TEST_CASE("batch sweep equals per-n minimization and is worker independent") {
    auto report = theorem12_report(300);
    REQUIRE(report.rows.size() == 298);
    for (const auto& row : report.rows) {
        auto single = best_quotient_sum(row.n);
        CHECK(row.s_min == single.s);
        CHECK(row.d == single.d);
    }

    auto r1 = theorem12_report(2000, 1);
    auto r4 = theorem12_report(2000, 4);
    std::ostringstream csv1, csv4;
    write_quotient_sum_csv(r1, csv1);
    write_quotient_sum_csv(r4, csv4);
    CHECK(csv1.str() == csv4.str());
    CHECK(csv1.str().substr(0, 36) == "n,d,s_min,normalizer,ratio,log_ratio");

    CHECK_THROWS_AS(theorem12_report(2), DomainError);
}
