#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "egz/group.hpp"
#include "egz/rational.hpp"

namespace egz {

enum class Method { enumeration, dp };

inline const char* method_name(Method m) {
    return m == Method::enumeration ? "enumeration" : "dp";
}

inline Method parse_method(const std::string& s) {
    if (s == "enumeration") return Method::enumeration;
    if (s == "dp") return Method::dp;
    throw InputError("unknown verifier method '" + s + "'");
}

struct VerifyReport {
    Method method = Method::enumeration;
    bool has_zero_sum = false;
    // Present iff has_zero_sum; exactly L indices, ascending, summing to zero.
    // Both engines return the colexicographically smallest witness.
    std::optional<std::vector<std::size_t>> witness_indices;
    std::uint64_t states_explored = 0;
};

struct CountReport {
    BigInt total;
    std::int64_t length = 0;          // L
    std::int64_t sequence_length = 0; // N
};

struct VerifierOptions {
    std::optional<Method> method;              // overrides select_algorithm
    std::uint64_t state_budget = 100'000'000;  // DP guard on L * n^r entries
};

/// enumeration while C(N, L) <= 10^6, dp otherwise.
inline Method select_algorithm(std::int64_t N, std::int64_t L, const GroupParams&) {
    if (L < 0 || L > N) return Method::enumeration; // degenerate, no subsets
    return binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(L)) <= 1'000'000
               ? Method::enumeration
               : Method::dp;
}

namespace detail {

inline void check_subsequence_length(const GSequence& seq, std::int64_t L) {
    if (L < 0)
        throw InputError("verifier: subsequence length must be >= 0");
    if (L > static_cast<std::int64_t>(seq.size()))
        throw InputError("verifier: subsequence length " + std::to_string(L) +
                         " exceeds sequence length " + std::to_string(seq.size()));
}

// Sum vectors are packed into a single integer with digits base n
// (little-endian mixed radix), so DP states hash as plain integers.
struct SumCodec {
    std::uint64_t n = 1;
    std::vector<std::uint64_t> place;

    SumCodec(std::int64_t n_, std::int64_t r_) : n(static_cast<std::uint64_t>(n_)) {
        place.resize(static_cast<std::size_t>(r_));
        std::uint64_t p = 1;
        for (auto& pl : place) {
            pl = p;
            p *= n;
        }
    }

    std::uint64_t add(std::uint64_t s, const ZVector& v) const {
        std::uint64_t out = s;
        for (std::size_t j = 0; j < place.size(); ++j) {
            std::uint64_t digit = (s / place[j]) % n;
            std::uint64_t next = digit + v[j];
            if (next >= n) next -= n;
            out += (next - digit) * place[j];
        }
        return out;
    }

    std::uint64_t subtract(std::uint64_t s, const ZVector& v) const {
        std::uint64_t out = s;
        for (std::size_t j = 0; j < place.size(); ++j) {
            std::uint64_t digit = (s / place[j]) % n;
            std::uint64_t next = digit + n - v[j];
            if (next >= n) next -= n;
            out += (next - digit) * place[j];
        }
        return out;
    }
};

// n^r if it stays within the DP budget, nullopt otherwise.
inline std::optional<std::uint64_t> state_space_within(const GroupParams& p,
                                                       std::uint64_t budget) {
    const std::uint64_t n = static_cast<std::uint64_t>(p.n);
    if (budget == 0) return std::nullopt;
    std::uint64_t acc = 1;
    for (std::int64_t j = 0; j < p.r; ++j) {
        if (acc > budget / n) return std::nullopt;
        acc *= n;
    }
    return acc;
}

inline std::uint64_t dp_state_space_or_throw(const GSequence& seq, std::int64_t L,
                                             std::uint64_t budget) {
    const GroupParams& p = seq.params();
    auto space = state_space_within(p, budget);
    if (!space || *space > budget / static_cast<std::uint64_t>(L))
        throw ResourceError("verifier: dp state budget exceeded (L * n^r > " +
                            std::to_string(budget) + " for n=" + std::to_string(p.n) +
                            " r=" + std::to_string(p.r) + " L=" + std::to_string(L) + ")");
    return *space;
}

// Visits all size-L index subsets in colexicographic order; fn returns true
// to stop early. Returns the number of subsets visited.
template <typename Fn>
std::uint64_t for_each_subset_colex(std::size_t N, std::int64_t L, Fn&& fn) {
    std::vector<std::size_t> combo(static_cast<std::size_t>(L));
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = i;
    std::uint64_t visited = 0;
    while (true) {
        ++visited;
        if (fn(combo)) return visited;
        // smallest position that can advance without colliding with the next
        std::size_t i = 0;
        for (; i < combo.size(); ++i) {
            std::size_t limit = (i + 1 < combo.size()) ? combo[i + 1] : N;
            if (combo[i] + 1 < limit) break;
        }
        if (i == combo.size()) return visited;
        ++combo[i];
        for (std::size_t j = 0; j < i; ++j) combo[j] = j;
    }
}

inline ZVector subset_sum(const GSequence& seq, const std::vector<std::size_t>& combo) {
    const std::uint64_t n = static_cast<std::uint64_t>(seq.params().n);
    ZVector acc = zero_vector(seq.params().r);
    for (std::size_t ix : combo) {
        const ZVector& v = seq[ix];
        for (std::size_t j = 0; j < acc.size(); ++j) {
            std::uint64_t s = acc[j] + static_cast<std::uint64_t>(v[j]);
            if (s >= n) s -= n;
            acc[j] = static_cast<std::uint32_t>(s);
        }
    }
    return acc;
}

inline VerifyReport decide_enumeration(const GSequence& seq, std::int64_t L) {
    VerifyReport report;
    report.method = Method::enumeration;
    std::optional<std::vector<std::size_t>> witness;
    report.states_explored = for_each_subset_colex(
        seq.size(), L, [&](const std::vector<std::size_t>& combo) {
            if (is_zero(subset_sum(seq, combo))) {
                witness = combo;
                return true;
            }
            return false;
        });
    report.has_zero_sum = witness.has_value();
    report.witness_indices = std::move(witness);
    return report;
}

inline CountReport count_enumeration(const GSequence& seq, std::int64_t L) {
    CountReport report;
    report.length = L;
    report.sequence_length = static_cast<std::int64_t>(seq.size());
    report.total = 0;
    for_each_subset_colex(seq.size(), L, [&](const std::vector<std::size_t>& combo) {
        if (is_zero(subset_sum(seq, combo))) report.total += 1;
        return false;
    });
    return report;
}

// Layered reachability over states (items considered, count chosen, packed
// sum). Sparse sets exploit that reachable sums per layer are at most
// min(n^r, C(N, L)). Backtracking prefers skipping the highest index, which
// yields the colex-minimal witness, matching enumeration.
inline VerifyReport decide_dp(const GSequence& seq, std::int64_t L, std::uint64_t budget) {
    VerifyReport report;
    report.method = Method::dp;
    dp_state_space_or_throw(seq, L, budget);
    const std::size_t N = seq.size();
    const std::size_t Lz = static_cast<std::size_t>(L);
    SumCodec codec(seq.params().n, seq.params().r);

    std::vector<std::vector<std::unordered_set<std::uint64_t>>> reach(
        N + 1, std::vector<std::unordered_set<std::uint64_t>>(Lz + 1));
    reach[0][0].insert(0);
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < N; ++i) {
        const ZVector& v = seq[i];
        std::size_t cmax = std::min(i, Lz);
        for (std::size_t c = 0; c <= cmax; ++c) {
            for (std::uint64_t s : reach[i][c]) {
                if (reach[i + 1][c].insert(s).second) ++states;
                if (c < Lz && reach[i + 1][c + 1].insert(codec.add(s, v)).second) ++states;
            }
        }
    }
    report.states_explored = states;
    if (!reach[N][Lz].count(0)) {
        report.has_zero_sum = false;
        return report;
    }
    std::vector<std::size_t> witness;
    std::uint64_t s = 0;
    std::size_t c = Lz;
    for (std::size_t i = N; i > 0; --i) {
        if (reach[i - 1][c].count(s)) continue; // skipping keeps high indices out
        witness.push_back(i - 1);
        s = codec.subtract(s, seq[i - 1]);
        --c;
    }
    std::reverse(witness.begin(), witness.end());
    report.has_zero_sum = true;
    report.witness_indices = std::move(witness);
    return report;
}

inline CountReport count_dp(const GSequence& seq, std::int64_t L, std::uint64_t budget) {
    CountReport report;
    report.length = L;
    report.sequence_length = static_cast<std::int64_t>(seq.size());
    dp_state_space_or_throw(seq, L, budget);
    const std::size_t Lz = static_cast<std::size_t>(L);
    SumCodec codec(seq.params().n, seq.params().r);

    std::vector<std::unordered_map<std::uint64_t, BigInt>> layer(Lz + 1);
    layer[0].emplace(0, 1);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const ZVector& v = seq[i];
        std::size_t cmax = std::min(i, Lz - 1);
        for (std::size_t c = cmax + 1; c-- > 0;) {
            for (const auto& [s, cnt] : layer[c]) layer[c + 1][codec.add(s, v)] += cnt;
        }
    }
    auto it = layer[Lz].find(0);
    report.total = (it == layer[Lz].end()) ? BigInt(0) : it->second;
    return report;
}

} // namespace detail

/// Decides whether some size-L index subset sums to zero in Z_n^r. The
/// verdict is independent of item order; the witness, when present, is the
/// colex-smallest qualifying subset.
inline VerifyReport has_zero_sum_subsequence(const GSequence& seq, std::int64_t L,
                                             const VerifierOptions& opts = {}) {
    detail::check_subsequence_length(seq, L);
    if (L == 0) {
        VerifyReport report;
        report.method = opts.method.value_or(Method::enumeration);
        report.has_zero_sum = true; // the empty sum is zero
        report.witness_indices.emplace();
        report.states_explored = 1;
        return report;
    }
    Method m = opts.method.value_or(
        select_algorithm(static_cast<std::int64_t>(seq.size()), L, seq.params()));
    return m == Method::enumeration ? detail::decide_enumeration(seq, L)
                                    : detail::decide_dp(seq, L, opts.state_budget);
}

/// Exact count of zero-sum size-L subsets, over all C(N, L) of them.
inline CountReport count_zero_sum_subsequences(const GSequence& seq, std::int64_t L,
                                               const VerifierOptions& opts = {}) {
    detail::check_subsequence_length(seq, L);
    if (L == 0) {
        CountReport report;
        report.total = 1;
        report.length = 0;
        report.sequence_length = static_cast<std::int64_t>(seq.size());
        return report;
    }
    Method m = opts.method.value_or(
        select_algorithm(static_cast<std::int64_t>(seq.size()), L, seq.params()));
    return m == Method::enumeration ? detail::count_enumeration(seq, L)
                                    : detail::count_dp(seq, L, opts.state_budget);
}

} // namespace egz
