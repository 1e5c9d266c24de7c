#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "egz/group.hpp"
#include "egz/verifier.hpp"

namespace egz {

struct OracleOptions {
    std::uint64_t work_budget = 10'000'000; // measured in verifier calls
    VerifierOptions verifier;
};

struct OracleResult {
    GroupParams params;
    bool exact = false;       // false: the constant exceeds cap
    std::int64_t value = 0;   // meaningful when exact
    std::int64_t cap = 0;
    // Longest zero-sum-free sequence found (length value-1 when exact,
    // length cap otherwise); canonically smallest count vector among
    // maximum-length ones.
    GSequence extremal_sequence;
    std::uint64_t work_counter = 0;
};

namespace detail {

// Exhaustive search over multisets of Z_n^r in canonical nondecreasing
// element order. Zero-sum-freeness is downward closed, so extending only
// with elements >= the last and pruning any multiset that already contains
// a zero-sum kn-subsequence visits every free multiset exactly once.
class OracleSearch {
public:
    OracleSearch(const GroupParams& params, std::int64_t cap, const OracleOptions& opts)
        : params_(params), cap_(cap), opts_(opts), L_(params.subsequence_length()),
          current_(params) {
        if (cap_ < L_) throw InputError("oracle: cap must be >= k*n");
        const std::uint64_t element_cap =
            std::min<std::uint64_t>(opts_.work_budget, 100'000'000);
        auto elems = state_space_within(params_, element_cap);
        if (!elems)
            throw ResourceError("oracle: element space n^r exceeds the work budget");
        element_count_ = static_cast<std::int64_t>(*elems);
        counts_.assign(static_cast<std::size_t>(element_count_), 0);
        best_counts_.assign(counts_.size(), 0);
        best_length_ = 0;
    }

    OracleResult run() {
        dfs(0);
        OracleResult result;
        result.params = params_;
        result.cap = cap_;
        result.exact = best_length_ < cap_;
        if (result.exact) result.value = best_length_ + 1;
        result.extremal_sequence = expand(best_counts_);
        result.work_counter = calls_;
        return result;
    }

private:
    ZVector element_vector(std::int64_t index) const {
        ZVector v(static_cast<std::size_t>(params_.r), 0);
        std::int64_t rest = index;
        for (std::int64_t j = params_.r; j-- > 0;) {
            v[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(rest % params_.n);
            rest /= params_.n;
        }
        return v; // big-endian digits: element order = lex order on vectors
    }

    GSequence expand(const std::vector<std::int64_t>& counts) const {
        GSequence seq(params_);
        for (std::int64_t e = 0; e < element_count_; ++e) {
            ZVector v = element_vector(e);
            for (std::int64_t c = 0; c < counts[static_cast<std::size_t>(e)]; ++c)
                seq.push_back(v);
        }
        return seq;
    }

    void note_current() {
        const std::int64_t len = static_cast<std::int64_t>(current_.size());
        if (len > best_length_ || (len == best_length_ && counts_ < best_counts_)) {
            best_length_ = len;
            best_counts_ = counts_;
        }
    }

    bool stays_free(std::int64_t element) {
        current_.push_back(element_vector(element));
        bool free_of_zero_sum = true;
        if (static_cast<std::int64_t>(current_.size()) >= L_) {
            if (calls_ >= opts_.work_budget) {
                current_.pop_back();
                throw ResourceError(
                    "oracle: work budget exhausted after " + std::to_string(calls_) +
                    " verifier calls; best zero-sum-free length so far: " +
                    std::to_string(best_length_) + " (partial lower bound " +
                    std::to_string(best_length_ + 1) + ")");
            }
            ++calls_;
            free_of_zero_sum =
                !has_zero_sum_subsequence(current_, L_, opts_.verifier).has_zero_sum;
        }
        if (!free_of_zero_sum) current_.pop_back();
        return free_of_zero_sum;
    }

    void dfs(std::int64_t first_element) {
        note_current();
        if (static_cast<std::int64_t>(current_.size()) == cap_) return;
        for (std::int64_t e = first_element; e < element_count_; ++e) {
            if (!stays_free(e)) continue;
            ++counts_[static_cast<std::size_t>(e)];
            dfs(e);
            --counts_[static_cast<std::size_t>(e)];
            current_.pop_back();
        }
    }

    GroupParams params_;
    std::int64_t cap_;
    OracleOptions opts_;
    std::int64_t L_;
    std::int64_t element_count_ = 0;
    GSequence current_;
    std::vector<std::int64_t> counts_;
    std::vector<std::int64_t> best_counts_;
    std::int64_t best_length_ = 0;
    std::uint64_t calls_ = 0;
};

} // namespace detail

/// s_kn(C_n^r) by exhaustive multiset search: the smallest m such that
/// every multiset of size m contains a zero-sum kn-subsequence, provided
/// m <= cap; otherwise reports that the constant exceeds cap.
inline OracleResult egz_constant(const GroupParams& params, std::int64_t cap,
                                 const OracleOptions& opts = {}) {
    return detail::OracleSearch(params, cap, opts).run();
}

/// The extremal side: a maximum-length (up to cap) sequence with no
/// zero-sum kn-subsequence. Length equals egz_constant - 1 whenever the
/// constant is exact.
inline GSequence longest_zero_sum_free(const GroupParams& params, std::int64_t cap,
                                       const OracleOptions& opts = {}) {
    return egz_constant(params, cap, opts).extremal_sequence;
}

} // namespace egz
