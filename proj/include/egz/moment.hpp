#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "egz/group.hpp"
#include "egz/rational.hpp"

namespace egz {

/// Distribution of a single coordinate of a random length-kn subsequence
/// whose entries are independent Bernoulli(q) bits: probs[i] is the
/// probability that the coordinate holds exactly i*n ones,
///   probs[i] = C(kn, i*n) * q^(i*n) * (1-q)^((k-i)*n).
struct CoordinateDistribution {
    GroupParams params;
    Rational q;
    std::vector<Rational> probs; // i = 0..k
};

inline CoordinateDistribution coordinate_distribution(const GroupParams& params,
                                                      const Rational& q) {
    if (q < 0 || q > 1) throw InputError("coordinate_distribution: q must lie in [0, 1]");
    CoordinateDistribution dist{params, q, {}};
    const std::uint64_t n = static_cast<std::uint64_t>(params.n);
    const std::uint64_t kn = static_cast<std::uint64_t>(params.subsequence_length());
    const Rational one_minus_q = Rational(1) - q;
    dist.probs.reserve(static_cast<std::size_t>(params.k) + 1);
    for (std::uint64_t i = 0; i <= static_cast<std::uint64_t>(params.k); ++i) {
        Rational term(binomial(kn, i * n));
        term *= pow_rational(q, i * n);
        term *= pow_rational(one_minus_q, kn - i * n);
        dist.probs.push_back(term);
    }
    return dist;
}

/// Q: the probability that one coordinate of a random kn-subsequence sums
/// to 0 mod n. A coordinate sums to zero exactly when its number of ones is
/// a multiple of n.
inline Rational coordinate_zero_prob(const GroupParams& params, const Rational& q) {
    CoordinateDistribution dist = coordinate_distribution(params, q);
    Rational total(0);
    for (const Rational& p : dist.probs) total += p;
    return total;
}

struct MomentReport {
    GroupParams params;
    Rational q;
    std::int64_t sequence_length = 0; // N
    Rational coordinate_prob;         // Q
    Rational expected_count;          // E[Z] = C(N, kn) * Q^r, exactly
};

/// Exact E[Z]: coordinates are independent, every kn-subsequence is
/// zero-sum with probability Q^r, and there are C(N, kn) of them. Zero when
/// N < kn (no subsequence of that length exists).
inline MomentReport expected_zero_sum_count(const GroupParams& params, const Rational& q,
                                            std::int64_t N) {
    if (N < 0) throw InputError("expected_zero_sum_count: N must be >= 0");
    MomentReport report{params, q, N, coordinate_zero_prob(params, q), Rational(0)};
    const std::int64_t kn = params.subsequence_length();
    if (N >= kn) {
        report.expected_count =
            Rational(binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(kn))) *
            pow_rational(report.coordinate_prob, static_cast<std::uint64_t>(params.r));
    }
    return report;
}

namespace detail {

inline Rational expected_count_given_Q(const GroupParams& params, const Rational& Qr_pow,
                                       std::int64_t N) {
    const std::int64_t kn = params.subsequence_length();
    if (N < kn) return Rational(0);
    return Rational(binomial(static_cast<std::uint64_t>(N),
                             static_cast<std::uint64_t>(kn))) *
           Qr_pow;
}

} // namespace detail

/// Largest N with C(N, kn) * Q^r < 1, i.e. the longest random sequence the
/// first-moment argument certifies a witness for. At least kn-1 (below kn
/// the expectation is zero). Throws VacuousBoundError when Q >= 1, where
/// only the vacuous regime remains.
inline std::int64_t max_admissible_sequence_length(const GroupParams& params,
                                                   const Rational& q) {
    const Rational Q = coordinate_zero_prob(params, q);
    if (Q >= 1)
        throw VacuousBoundError(
            "max_admissible_sequence_length: Q >= 1, bound unbounded only vacuously");
    const Rational Qr = pow_rational(Q, static_cast<std::uint64_t>(params.r));
    const std::int64_t kn = params.subsequence_length();
    if (detail::expected_count_given_Q(params, Qr, kn) >= 1) return kn - 1;
    // C(N, kn) is strictly increasing in N for N >= kn, so E[Z] crosses 1
    // exactly once: exponential growth to bracket it, then binary search.
    std::int64_t lo = kn, hi = kn;
    constexpr std::int64_t kLimit = std::int64_t{1} << 62;
    while (detail::expected_count_given_Q(params, Qr, hi) < 1) {
        lo = hi;
        if (hi > kLimit / 2)
            throw ResourceError("max_admissible_sequence_length: bound exceeds supported range");
        hi *= 2;
    }
    while (lo + 1 < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (detail::expected_count_given_Q(params, Qr, mid) < 1)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

struct OptimizeResult {
    Rational q;              // q*, reduced
    std::int64_t max_length; // N* = max_admissible_sequence_length at q*
};

/// Grid search for the q maximizing the admissible length. Candidates live
/// on the lattice i/budget; a coarse pass is followed by two local
/// refinement rounds around the best cell, so results are exactly
/// reproducible. Ties (the objective is integer-valued, so plateaus are
/// common) are broken toward the smaller reduced denominator, then the
/// smaller numerator.
///
/// The search is restricted to the half of [0, 1] that the corresponding
/// analysis works in: [1/2, 1] for k = 2 and [0, 1/2] otherwise. Q is
/// exactly symmetric under q <-> 1-q, so this loses no optimum.
inline OptimizeResult optimize_q(const GroupParams& params, std::int64_t denominator_budget) {
    if (denominator_budget < 2) throw InputError("optimize_q: denominator budget must be >= 2");
    const std::int64_t B = denominator_budget;
    std::int64_t lo_i = 0, hi_i = B / 2;
    if (params.k == 2) {
        lo_i = (B + 1) / 2;
        hi_i = B;
    }

    std::map<std::int64_t, std::optional<std::int64_t>> evaluated;
    auto eval = [&](std::int64_t i) {
        if (evaluated.count(i)) return;
        Rational q(i, B);
        q.canonicalize();
        std::optional<std::int64_t> N;
        try {
            N = max_admissible_sequence_length(params, q);
        } catch (const VacuousBoundError&) {
            N = std::nullopt;
        }
        evaluated.emplace(i, N);
    };
    auto best = [&]() -> std::int64_t {
        std::int64_t best_i = -1;
        std::int64_t best_N = -1;
        BigInt best_den, best_num;
        for (const auto& [i, N] : evaluated) {
            if (!N) continue;
            Rational q(i, B);
            q.canonicalize();
            const BigInt& den = q.get_den();
            const BigInt& num = q.get_num();
            if (best_i < 0 || *N > best_N ||
                (*N == best_N && (den < best_den || (den == best_den && num < best_num)))) {
                best_i = i;
                best_N = *N;
                best_den = den;
                best_num = num;
            }
        }
        if (best_i < 0)
            throw VacuousBoundError("optimize_q: every candidate q gives Q >= 1");
        return best_i;
    };

    const std::int64_t span = hi_i - lo_i;
    const std::int64_t s1 = std::max<std::int64_t>(1, span / 48);
    for (std::int64_t i = lo_i; i <= hi_i; i += s1) eval(i);
    eval(hi_i);
    std::int64_t b = best();

    const std::int64_t s2 = std::max<std::int64_t>(1, s1 / 8);
    const std::int64_t rounds[2][2] = {{s1, s2}, {s2, 1}};
    for (const auto& [window, step] : rounds) {
        const std::int64_t start = std::max(lo_i, b - window);
        const std::int64_t stop = std::min(hi_i, b + window);
        for (std::int64_t i = start; i <= stop; i += step) eval(i);
        b = best();
    }

    Rational q(b, B);
    q.canonicalize();
    return OptimizeResult{q, *evaluated.at(b)};
}

/// Leading-term reference for how the admissible length scales with r:
/// (n/2)*(5/4)^r when k = 2, (kn/4)*(1 + 1/(e*k))^r otherwise. Asymptotic
/// reference only, not a guarantee at finite n.
inline double asymptotic_reference_bound(const GroupParams& params) {
    const double n = static_cast<double>(params.n);
    const double k = static_cast<double>(params.k);
    const double r = static_cast<double>(params.r);
    if (params.k == 2) return n / 2.0 * std::pow(1.25, r);
    return k * n / 4.0 * std::pow(1.0 + 1.0 / (std::exp(1.0) * k), r);
}

/// Exact test of A^(kn) * Q < 1. When it holds, E[Z] < 1 at
/// N = floor((kn/4) * A^r) for every r, because C(N, kn) <= (4N/kn)^(kn):
/// the admissible length grows at least like a constant times A^r.
inline bool per_coordinate_certificate(const GroupParams& params, const Rational& q,
                                       const Rational& A) {
    if (A <= 0) throw InputError("per_coordinate_certificate: A must be > 0");
    const Rational lhs =
        pow_rational(A, static_cast<std::uint64_t>(params.subsequence_length())) *
        coordinate_zero_prob(params, q);
    return lhs < 1;
}

} // namespace egz
