#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>

#include "egz/errors.hpp"

namespace egz {

// Exact arithmetic carriers. All probability and expectation work in this
// library is done on these; floating point appears only in display helpers.
using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
    if (den == 0) throw InputError("rational: zero denominator");
    Rational x(num, den);
    x.canonicalize();
    return x;
}

// Parses "num/den" or a bare integer "num". Sign allowed on the numerator
// only; denominator must be a positive integer.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&]() -> InputError {
        return InputError("rational: cannot parse '" + text + "' (expected num/den)");
    };
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        ++digits;
    }
    if (digits == 0) throw bad();
    std::string num = text.substr(0, pos);
    std::string den = "1";
    if (pos < text.size()) {
        if (text[pos] != '/') throw bad();
        den = text.substr(pos + 1);
        if (den.empty()) throw bad();
        for (char c : den)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    }
    BigInt n(num), d(den);
    if (d == 0) throw InputError("rational: zero denominator in '" + text + "'");
    Rational x(n, d);
    x.canonicalize();
    return x;
}

// Always "num/den", even for integers ("3" -> "3/1"); round-trips exactly
// through parse_rational.
inline std::string fraction_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational pow_rational(const Rational& base, std::uint64_t exp) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    // base is canonical, so num^e / den^e already is.
    return out;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// Display-only: decimal string with the given number of significant digits.
inline std::string decimal_string(double x, int significant = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, x);
    return buf;
}

} // namespace egz
