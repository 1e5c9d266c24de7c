#include <catch2/catch_amalgamated.hpp>

#include "egz/certificate.hpp"
#include "egz/harborth.hpp"
#include "egz/moment.hpp"
#include "egz/sampler.hpp"
#include "egz/verifier.hpp"
#include "test_support.hpp"

using namespace egz;
using egz_test::make_seq;

TEST_CASE("splitmix64 reference values") {
    // pinned against the published splitmix64 reference implementation
    CHECK(splitmix::mix(0) == 0x0ULL);
    CHECK(splitmix::mix(42) == 0xa759ea27d4727622ULL);
    CHECK(splitmix::at(splitmix::mix(42), 0) == 0x989b3f130a063869ULL);
    CHECK(splitmix::at(splitmix::mix(42), 1) == 0x290db4bf2570ded7ULL);
    CHECK(splitmix::at(splitmix::mix(123 ^ 7), 5) == 0xd874376e04d9b622ULL);
}

TEST_CASE("sampling degenerate q") {
    GroupParams params(3, 4, 2);
    SamplerConfig zero(params, Rational(0), 5, 99, 1);
    GSequence all_zero = sample_sequence(zero, 0);
    REQUIRE(all_zero.size() == 5);
    for (const ZVector& v : all_zero.items()) CHECK(is_zero(v));

    SamplerConfig one(params, Rational(1), 5, 99, 1);
    GSequence all_one = sample_sequence(one, 0);
    for (const ZVector& v : all_one.items())
        for (std::uint32_t c : v) CHECK(c == 1);
}

TEST_CASE("sampling is deterministic per (seed, attempt)") {
    GroupParams params(3, 5, 2);
    SamplerConfig config(params, make_rational(1, 3), 20, 1234, 4);
    GSequence a = sample_sequence(config, 2);
    GSequence b = sample_sequence(config, 2);
    CHECK(a.items() == b.items());
    GSequence c = sample_sequence(config, 3);
    CHECK(a.items() != c.items());

    SamplerConfig other(params, make_rational(1, 3), 20, 1235, 4);
    CHECK(sample_sequence(other, 2).items() != a.items());

    CHECK_THROWS_AS(sample_sequence(config, 4), InputError);
    CHECK_THROWS_AS(sample_sequence(config, -1), InputError);
}

TEST_CASE("empirical density of ones stays in the 4-sigma band") {
    // N*r = 10^4 entries at q = 1/2: expect the ones fraction in [0.48, 0.52]
    GroupParams params(2, 10, 2);
    SamplerConfig config(params, make_rational(1, 2), 1000, 31337, 1);
    GSequence seq = sample_sequence(config, 0);
    std::int64_t ones = 0;
    for (const ZVector& v : seq.items())
        for (std::uint32_t c : v) ones += c;
    CHECK(ones >= 4800);
    CHECK(ones <= 5200);
}

TEST_CASE("exact Bernoulli draws are unbiased across residue classes") {
    // q = 1/3 over many entries; 4-sigma band around 1/3
    GroupParams params(2, 1, 2);
    SamplerConfig config(params, make_rational(1, 3), 9000, 555, 1);
    GSequence seq = sample_sequence(config, 0);
    std::int64_t ones = 0;
    for (const ZVector& v : seq.items()) ones += v[0];
    // sd = sqrt(9000 * (1/3)(2/3)) ~ 44.7
    CHECK(ones >= 3000 - 179);
    CHECK(ones <= 3000 + 179);
}

TEST_CASE("harborth construction small cases") {
    GSequence h21 = harborth_construction(2, 1);
    REQUIRE(h21.size() == 2);
    CHECK(h21.items() == std::vector<ZVector>{{0}, {1}});

    GSequence h32 = harborth_construction(3, 2);
    REQUIRE(h32.size() == 8);
    CHECK(h32.items() ==
          std::vector<ZVector>{{0, 0}, {0, 0}, {0, 1}, {0, 1}, {1, 0}, {1, 0}, {1, 1}, {1, 1}});

    CHECK_THROWS_AS(harborth_construction(1, 1), InputError);
    CHECK_THROWS_AS(harborth_construction(3, 0), InputError);
    CHECK_THROWS_AS(harborth_construction(3, 40), ResourceError);
    CHECK_THROWS_AS(harborth_construction(1 << 26, 6), ResourceError);
}

TEST_CASE("harborth construction is zero-sum-free at length p") {
    for (std::int64_t p : {2, 3, 5}) {
        for (std::int64_t r : {1, 2, 3}) {
            GSequence seq = harborth_construction(p, r);
            CHECK(static_cast<std::int64_t>(seq.size()) == (std::int64_t{1} << r) * (p - 1));
            CHECK_FALSE(has_zero_sum_subsequence(seq, p).has_zero_sum);
        }
    }
}

TEST_CASE("certificates serialize deterministically and round-trip") {
    GroupParams params(3, 4, 2);
    SamplerConfig config(params, make_rational(2, 5), 5, 77, 10);
    // N = 5 < kn = 6: vacuous witness, success on attempt 0
    WitnessSearchResult result = find_witness(config);
    REQUIRE(result.success());
    CHECK(result.certificate->attempt_index == 0);
    CHECK(result.attempts_tried == 1);

    const WitnessCertificate& cert = *result.certificate;
    std::string text = certificate_to_string(cert);
    CHECK(text == certificate_to_string(cert)); // byte-identical dumps

    WitnessCertificate parsed = certificate_from_json(nlohmann::json::parse(text));
    CHECK(parsed.params == cert.params);
    CHECK(parsed.q == cert.q);
    CHECK(parsed.seed == cert.seed);
    CHECK(parsed.attempt_index == cert.attempt_index);
    CHECK(parsed.sequence.items() == cert.sequence.items());
    CHECK(parsed.verified_no_zero_sum == cert.verified_no_zero_sum);
    CHECK(certificate_to_string(parsed) == text);

    // the embedded (seed, attempt) regenerate the embedded sequence
    GSequence regen = sample_sequence(
        SamplerConfig(parsed.params, parsed.q, parsed.sequence_length, parsed.seed,
                      parsed.attempt_index + 1),
        parsed.attempt_index);
    CHECK(regen.items() == parsed.sequence.items());
}

TEST_CASE("certificate parsing rejects inconsistent documents") {
    GroupParams params(2, 2, 1);
    SamplerConfig config(params, make_rational(1, 2), 1, 3, 5);
    WitnessSearchResult result = find_witness(config);
    REQUIRE(result.success());
    nlohmann::json doc = nlohmann::json::parse(certificate_to_string(*result.certificate));

    nlohmann::json bad = doc;
    bad["format_version"] = 2;
    CHECK_THROWS_AS(certificate_from_json(bad), InputError);

    bad = doc;
    bad["N"] = 7; // does not match the row count
    CHECK_THROWS_AS(certificate_from_json(bad), InputError);

    bad = doc;
    bad["subsequence_length"] = 5; // != k*n
    CHECK_THROWS_AS(certificate_from_json(bad), InputError);

    bad = doc;
    bad.erase("seed");
    CHECK_THROWS_AS(certificate_from_json(bad), InputError);
}

TEST_CASE("find_witness succeeds quickly when E[Z] is far below 1") {
    GroupParams params(3, 7, 2);
    Rational q = make_rational(3, 4); // optimize_q(3,7,2; 1000) lands here
    // E[Z] at N=7 is about 0.0019, so attempt 0 succeeds almost surely
    CHECK(expected_zero_sum_count(params, q, 7).expected_count < make_rational(1, 100));
    SamplerConfig config(params, q, 7, 2024, 8);
    WitnessSearchResult result = find_witness(config);
    REQUIRE(result.success());
    const WitnessCertificate& cert = *result.certificate;
    CHECK(cert.verified_no_zero_sum);
    CHECK(cert.subsequence_length == 6);
    // independent re-check
    CHECK_FALSE(has_zero_sum_subsequence(cert.sequence, 6).has_zero_sum);
}

TEST_CASE("find_witness failure carries attempts and exact E[Z]") {
    // no length-10 sequence over Z_2 avoids a zero-sum 4-subsequence
    // (s_4(C_2) = 5), so failure is certain; E[Z] = C(10,4)/2 = 105
    GroupParams params(2, 1, 2);
    SamplerConfig config(params, make_rational(1, 2), 10, 9, 3);
    WitnessSearchResult result = find_witness(config);
    CHECK_FALSE(result.success());
    CHECK(result.attempts_tried == 3);
    REQUIRE(result.expected_count.has_value());
    CHECK(*result.expected_count == 105);
}

TEST_CASE("parallel witness search returns the same certificate") {
    GroupParams params(2, 3, 2);
    Rational q = make_rational(1, 2);
    SamplerConfig config(params, q, 6, 4242, 64);
    WitnessSearchResult seq1 = find_witness(config, {}, 1);
    WitnessSearchResult par4 = find_witness(config, {}, 4);
    REQUIRE(seq1.success() == par4.success());
    if (seq1.success()) {
        CHECK(certificate_to_string(*seq1.certificate) ==
              certificate_to_string(*par4.certificate));
        CHECK(seq1.attempts_tried == par4.attempts_tried);
    }
}

TEST_CASE("sampled mean of Z agrees with exact E[Z] within 4 standard errors") {
    GroupParams params(2, 2, 2);
    Rational q = make_rational(1, 3);
    const std::int64_t N = 6;
    const std::int64_t trials = 10000;
    SamplerConfig config(params, q, N, 271828, trials);
    BigInt sum = 0, sum_sq = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        BigInt z = count_zero_sum_subsequences(sample_sequence(config, t), 4).total;
        sum += z;
        sum_sq += z * z;
    }
    const BigInt T(trials);
    Rational mean(sum, T);
    mean.canonicalize();
    Rational se_sq(T * sum_sq - sum * sum, T * T * (T - 1));
    se_sq.canonicalize();
    Rational exact = expected_zero_sum_count(params, q, N).expected_count;
    Rational dev = mean - exact;
    CHECK(dev * dev <= Rational(16) * se_sq);
}
