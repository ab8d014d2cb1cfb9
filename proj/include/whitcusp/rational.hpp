#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace whitcusp {

// Exact rational scalar. GMP canonicalizes on arithmetic but not on the
// two-argument constructor, so build values through these helpers.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::int64_t to_int64(const Rational& r) {
    if (!is_integer(r)) throw std::runtime_error("to_int64: not an integer: " + r.get_str());
    if (!r.get_num().fits_slong_p()) throw std::runtime_error("to_int64: out of range");
    return r.get_num().get_si();
}

// Serialized as "num/den" with the denominator always explicit, e.g. "3/1".
inline std::string rational_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// q^e for integer e of either sign.
inline Rational q_power(long q, long e) {
    Rational r = 1;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= q;
    if (e < 0) r = 1 / r;
    return r;
}

}  // namespace whitcusp
