#pragma once

#include <cstdint>

#include "egz/group.hpp"

namespace egz {

/// The deterministic lower-bound construction for k = 1: every vector of
/// {0,1}^r repeated p-1 times, length 2^r * (p-1). A zero-sum p-subsequence
/// would need each coordinate sum in {0, p}, i.e. p identical vectors, but
/// every multiplicity is p-1.
inline GSequence harborth_construction(std::int64_t p, std::int64_t r) {
    if (p < 2) throw InputError("harborth_construction: p must be >= 2");
    if (r < 1) throw InputError("harborth_construction: r must be >= 1");
    if (r >= 31)
        throw ResourceError("harborth_construction: 2^r vectors exceed supported size");
    const std::int64_t count = std::int64_t{1} << r;
    if ((p - 1) > (std::int64_t{1} << 31) / count)
        throw ResourceError("harborth_construction: length 2^r*(p-1) exceeds supported size");
    GSequence seq(GroupParams(p, r, 1));
    for (std::int64_t bits = 0; bits < count; ++bits) {
        ZVector v(static_cast<std::size_t>(r), 0);
        for (std::int64_t j = 0; j < r; ++j)
            v[static_cast<std::size_t>(j)] =
                static_cast<std::uint32_t>((bits >> (r - 1 - j)) & 1);
        for (std::int64_t copy = 0; copy < p - 1; ++copy) seq.push_back(v);
    }
    return seq;
}

} // namespace egz
