#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "egz/verifier.hpp"
#include "test_support.hpp"

using namespace egz;
using egz_test::brute_count;
using egz_test::make_seq;

namespace {

// the 8-element construction over Z_3^2: each 0/1 vector twice
const std::vector<std::vector<int>> kHarborth32 = {
    {0, 0}, {0, 0}, {0, 1}, {0, 1}, {1, 0}, {1, 0}, {1, 1}, {1, 1},
};

VerifierOptions force(Method m) {
    VerifierOptions opts;
    opts.method = m;
    return opts;
}

} // namespace

TEST_CASE("trivial verdicts") {
    // 2n copies of the zero vector, L = 2n
    GSequence zeros = make_seq(2, 1, 2, {{0}, {0}, {0}, {0}});
    VerifyReport report = has_zero_sum_subsequence(zeros, 4);
    CHECK(report.has_zero_sum);
    REQUIRE(report.witness_indices.has_value());
    CHECK(*report.witness_indices == std::vector<std::size_t>{0, 1, 2, 3});

    GSequence ones = make_seq(2, 1, 1, {{1}, {1}});
    CHECK(has_zero_sum_subsequence(ones, 2).has_zero_sum);
}

TEST_CASE("exact counts on pinned examples") {
    GSequence zeros = make_seq(2, 1, 2, {{0}, {0}, {0}, {0}});
    CHECK(count_zero_sum_subsequences(zeros, 2).total == 6); // all C(4,2) pairs

    // {0,3} and {1,2} are the only zero-sum pairs; checked against the
    // independent bitmask oracle as well
    GSequence mixed = make_seq(2, 1, 1, {{0}, {1}, {1}, {0}});
    CHECK(count_zero_sum_subsequences(mixed, 2).total == 2);
    CHECK(brute_count({{0}, {1}, {1}, {0}}, 2, 2) == 2);
}

TEST_CASE("the 8-element construction has no zero-sum triple") {
    CHECK(brute_count(kHarborth32, 3, 3) == 0); // exhaustive over all C(8,3)=56 subsets
    GSequence seq = make_seq(3, 2, 1, kHarborth32);
    for (Method m : {Method::enumeration, Method::dp}) {
        VerifyReport report = has_zero_sum_subsequence(seq, 3, force(m));
        CHECK_FALSE(report.has_zero_sum);
        CHECK_FALSE(report.witness_indices.has_value());
        CHECK(count_zero_sum_subsequences(seq, 3, force(m)).total == 0);
    }
}

TEST_CASE("subsequence length edge cases") {
    GSequence seq = make_seq(2, 1, 1, {{1}, {0}});
    CHECK_THROWS_AS(has_zero_sum_subsequence(seq, 3), InputError);
    CHECK_THROWS_AS(has_zero_sum_subsequence(seq, -1), InputError);
    CHECK_THROWS_AS(count_zero_sum_subsequences(seq, 3), InputError);

    // L = 0: the empty subsequence is zero-sum
    VerifyReport report = has_zero_sum_subsequence(seq, 0);
    CHECK(report.has_zero_sum);
    REQUIRE(report.witness_indices.has_value());
    CHECK(report.witness_indices->empty());
    CHECK(count_zero_sum_subsequences(seq, 0).total == 1);

    GSequence empty(GroupParams(3, 2, 1));
    CHECK(has_zero_sum_subsequence(empty, 0).has_zero_sum);
}

TEST_CASE("n = 1 degenerates to always-zero") {
    GSequence seq = make_seq(1, 2, 3, {{0, 0}, {0, 0}, {0, 0}});
    CHECK(has_zero_sum_subsequence(seq, 3).has_zero_sum);
    CHECK(count_zero_sum_subsequences(seq, 2).total == 3); // C(3,2)
}

TEST_CASE("select_algorithm thresholds") {
    GroupParams params(3, 2, 1);
    CHECK(select_algorithm(8, 3, params) == Method::enumeration);  // C(8,3)=56
    CHECK(select_algorithm(60, 10, params) == Method::dp);         // C(60,10) > 10^6
    CHECK(select_algorithm(12, 12, params) == Method::enumeration); // single subset
}

TEST_CASE("auto-dispatch uses dp past the enumeration threshold") {
    // C(60,10) > 10^6, so the default path must pick dp and still agree
    // with forced enumeration on a smaller prefix of the same sequence
    std::mt19937_64 rng(11);
    std::vector<std::vector<int>> rows(60, std::vector<int>(2));
    for (auto& row : rows)
        for (auto& x : row) x = static_cast<int>(rng() % 2);
    GSequence seq = make_seq(2, 2, 5, rows);
    VerifyReport auto_report = has_zero_sum_subsequence(seq, 10);
    CHECK(auto_report.method == Method::dp);
    CHECK(auto_report.has_zero_sum); // s_10(C_2^2) certainly below 60
    REQUIRE(auto_report.witness_indices.has_value());
    CHECK(is_zero(sum_of(seq, *auto_report.witness_indices)));
    CHECK(count_zero_sum_subsequences(seq, 10).total > 0);
}

TEST_CASE("dp refuses oversized state tables") {
    // n^r = 2^40 overflows the default budget
    GroupParams params(2, 40, 1);
    std::vector<std::vector<int>> rows(8, std::vector<int>(40, 0));
    GSequence seq = make_seq(2, 40, 1, rows);
    CHECK_THROWS_AS(has_zero_sum_subsequence(seq, 2, force(Method::dp)), ResourceError);
    CHECK(has_zero_sum_subsequence(seq, 2, force(Method::enumeration)).has_zero_sum);

    // and a custom budget trips on small parameters too
    GSequence small = make_seq(3, 2, 1, kHarborth32);
    VerifierOptions tiny = force(Method::dp);
    tiny.state_budget = 10;
    CHECK_THROWS_AS(count_zero_sum_subsequences(small, 3, tiny), ResourceError);
}

TEST_CASE("dp and enumeration agree everywhere", "[property]") {
    std::mt19937_64 rng(424242);
    const std::int64_t ns[] = {2, 3, 5};
    for (int trial = 0; trial < 120; ++trial) {
        const std::int64_t n = ns[rng() % 3];
        const std::int64_t r = 1 + static_cast<std::int64_t>(rng() % 3);
        const std::int64_t k = (n <= 5 && rng() % 2) ? 2 : 1;
        const std::int64_t L = k * n;
        if (L > 12) continue;
        const std::int64_t N = L + static_cast<std::int64_t>(rng() % (13 - L));
        std::vector<std::vector<int>> rows(N, std::vector<int>(r));
        for (auto& row : rows)
            for (auto& x : row) x = static_cast<int>(rng() % n);
        GSequence seq = make_seq(n, r, k, rows);

        VerifyReport de = has_zero_sum_subsequence(seq, L, force(Method::enumeration));
        VerifyReport dd = has_zero_sum_subsequence(seq, L, force(Method::dp));
        CountReport ce = count_zero_sum_subsequences(seq, L, force(Method::enumeration));
        CountReport cd = count_zero_sum_subsequences(seq, L, force(Method::dp));

        CHECK(de.has_zero_sum == dd.has_zero_sum);
        CHECK(ce.total == cd.total);
        CHECK(de.has_zero_sum == (ce.total > 0));
        CHECK(ce.total <= binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(L)));
        if (N <= 16) {
            CHECK(ce.total == brute_count(rows, static_cast<int>(n), static_cast<int>(L)));
        }

        // both engines return the colex-minimal witness
        CHECK(de.witness_indices == dd.witness_indices);
        if (de.has_zero_sum) {
            const auto& w = *de.witness_indices;
            CHECK(static_cast<std::int64_t>(w.size()) == L);
            CHECK(is_zero(sum_of(seq, w)));
        }

        // item permutation: verdict and count are multiset properties
        std::vector<std::vector<int>> shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        GSequence perm_seq = make_seq(n, r, k, shuffled);
        CHECK(has_zero_sum_subsequence(perm_seq, L).has_zero_sum == de.has_zero_sum);
        CHECK(count_zero_sum_subsequences(perm_seq, L).total == ce.total);

        // one coordinate permutation applied to every item
        std::vector<std::size_t> cperm(r);
        for (std::size_t j = 0; j < cperm.size(); ++j) cperm[j] = j;
        std::shuffle(cperm.begin(), cperm.end(), rng);
        std::vector<std::vector<int>> swapped(rows.size(), std::vector<int>(r));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cperm.size(); ++j)
                swapped[i][cperm[j]] = rows[i][j];
        GSequence swapped_seq = make_seq(n, r, k, swapped);
        CHECK(has_zero_sum_subsequence(swapped_seq, L).has_zero_sum == de.has_zero_sum);
        CHECK(count_zero_sum_subsequences(swapped_seq, L).total == ce.total);

        // translation by a constant vector: L*c = kn*c = 0 mod n
        std::vector<int> shift(r);
        for (auto& x : shift) x = static_cast<int>(rng() % n);
        std::vector<std::vector<int>> translated = rows;
        for (auto& row : translated)
            for (std::size_t j = 0; j < row.size(); ++j)
                row[j] = static_cast<int>((row[j] + shift[j]) % n);
        GSequence translated_seq = make_seq(n, r, k, translated);
        CHECK(has_zero_sum_subsequence(translated_seq, L).has_zero_sum == de.has_zero_sum);
        CHECK(count_zero_sum_subsequences(translated_seq, L).total == ce.total);
    }
}
