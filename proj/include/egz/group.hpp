#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "egz/errors.hpp"

namespace egz {

/// The ambient problem triple: sequences over Z_n^r, target subsequence
/// length L = k*n.
struct GroupParams {
    std::int64_t n = 1;
    std::int64_t r = 1;
    std::int64_t k = 1;

    GroupParams() = default;
    GroupParams(std::int64_t n_, std::int64_t r_, std::int64_t k_) : n(n_), r(r_), k(k_) {
        if (n < 1) throw InputError("GroupParams: n must be >= 1");
        if (r < 1) throw InputError("GroupParams: r must be >= 1");
        if (k < 1) throw InputError("GroupParams: k must be >= 1");
        if (n > kMaxLength || k > kMaxLength / n)
            throw InputError("GroupParams: k*n exceeds supported length range");
        if (r > kMaxRank) throw InputError("GroupParams: rank too large");
    }

    // Keeps L and every sequence length comfortably inside int64 arithmetic.
    static constexpr std::int64_t kMaxLength = std::int64_t{1} << 31;
    static constexpr std::int64_t kMaxRank = std::int64_t{1} << 20;

    std::int64_t subsequence_length() const { return k * n; }

    bool operator==(const GroupParams&) const = default;
};

// A group element: r residues, each kept in canonical range [0, n).
using ZVector = std::vector<std::uint32_t>;

inline bool is_zero(const ZVector& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint32_t c) { return c == 0; });
}

inline ZVector zero_vector(std::int64_t r) {
    return ZVector(static_cast<std::size_t>(r), 0);
}

/// Reduces arbitrary integers into canonical residues.
inline ZVector reduce_row(std::span<const long long> row, std::int64_t n) {
    ZVector out;
    out.reserve(row.size());
    for (long long x : row) {
        long long m = x % n;
        if (m < 0) m += n;
        out.push_back(static_cast<std::uint32_t>(m));
    }
    return out;
}

/// An ordered sequence of group elements. Order is preserved for
/// reproducible serialization, but all operations treat it as a multiset.
class GSequence {
public:
    GSequence() = default;
    explicit GSequence(GroupParams params) : params_(params) {}
    GSequence(GroupParams params, std::vector<ZVector> items)
        : params_(params), items_(std::move(items)) {
        for (const ZVector& v : items_) check_item(v);
    }

    const GroupParams& params() const { return params_; }
    const std::vector<ZVector>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    const ZVector& operator[](std::size_t i) const { return items_[i]; }

    void push_back(ZVector v) {
        check_item(v);
        items_.push_back(std::move(v));
    }
    void pop_back() { items_.pop_back(); }

    /// Multiset equality: same params, same items in some order.
    bool same_multiset(const GSequence& other) const {
        if (params_ != other.params_ || items_.size() != other.items_.size()) return false;
        auto a = items_, b = other.items_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

private:
    void check_item(const ZVector& v) const {
        if (static_cast<std::int64_t>(v.size()) != params_.r)
            throw InputError("GSequence: item rank mismatch");
        for (std::uint32_t c : v)
            if (c >= static_cast<std::uint64_t>(params_.n))
                throw InputError("GSequence: residue out of range [0, n)");
    }

    GroupParams params_;
    std::vector<ZVector> items_;
};

/// Coordinatewise sum mod n of the selected items. Indices may come in any
/// order but must be distinct and in range.
inline ZVector sum_of(const GSequence& seq, std::span<const std::size_t> indices) {
    const std::int64_t n = seq.params().n;
    ZVector acc = zero_vector(seq.params().r);
    std::vector<std::size_t> seen(indices.begin(), indices.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw InputError("sum_of: duplicate index");
    for (std::size_t ix : indices) {
        if (ix >= seq.size()) throw InputError("sum_of: index out of range");
        const ZVector& v = seq[ix];
        for (std::size_t j = 0; j < acc.size(); ++j) {
            std::uint64_t s = static_cast<std::uint64_t>(acc[j]) + v[j];
            if (s >= static_cast<std::uint64_t>(n)) s -= n;
            acc[j] = static_cast<std::uint32_t>(s);
        }
    }
    return acc;
}

} // namespace egz
