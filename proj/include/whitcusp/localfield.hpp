#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "whitcusp/cyclo.hpp"
#include "whitcusp/errors.hpp"

namespace whitcusp {

// Element of F_q((t)) (q prime) known to finite or infinite absolute precision.
//
// Representation: value = sum_i digits[i] * t^(val + i)  (mod t^prec), with
//   - exact elements: prec = kExactPrec, digit list is the whole element;
//   - truncated elements: all digits at exponents < prec are known, none above;
//   - the leading stored digit is nonzero (empty digit list = no nonzero digit
//     known below prec, i.e. "zero modulo t^prec", or exact zero when exact).
//
// Addition has no carries (coefficientwise in F_q), so precision tracking is
// plain interval bookkeeping. Digit windows longer than the inline capacity
// are truncated in precision — an information loss, never a wrong digit.
class LocalNum {
  public:
    static constexpr std::int64_t kExactPrec = INT64_MAX;
    static constexpr int kDigitCap = 64;

    LocalNum() : q_(2), val_(kExactPrec), prec_(kExactPrec), len_(0) {}

    static LocalNum zero(int q);
    static LocalNum one(int q) { return digit(q, 1, 0); }
    static LocalNum digit(int q, int c, std::int64_t e);  // c * t^e, exact
    static LocalNum uniformizer_pow(int q, std::int64_t e) { return digit(q, 1, e); }
    static LocalNum from_digits(int q, std::int64_t val, const std::vector<int>& ds,
                                std::int64_t prec = kExactPrec);

    int q() const { return q_; }
    std::int64_t prec() const { return prec_; }
    bool is_exact() const { return prec_ == kExactPrec; }

    // Exactly the zero element (all digits known, all zero).
    bool is_exact_zero() const { return len_ == 0 && is_exact(); }
    // No nonzero digit known; could still be nonzero above prec unless exact.
    bool has_digits() const { return len_ > 0; }

    // True valuation; throws PrecisionExhausted when no nonzero digit is known
    // and the element is not exact zero (valuation then only bounded below).
    std::int64_t val() const;
    bool val_known() const { return len_ > 0 || is_exact_zero(); }

    // Decide val(x) >= c, throwing PrecisionExhausted when the digits cannot.
    bool val_at_least(std::int64_t c) const;

    // Digit at exponent e; throws PrecisionExhausted when e >= prec.
    int digit_at(std::int64_t e) const;

    // Lower the absolute precision to at most p.
    LocalNum truncated(std::int64_t p) const;
    // Multiply by t^e (exact shift).
    LocalNum shifted(std::int64_t e) const;

    LocalNum operator-() const;
    friend LocalNum operator+(const LocalNum& a, const LocalNum& b);
    friend LocalNum operator-(const LocalNum& a, const LocalNum& b) { return a + (-b); }
    friend LocalNum operator*(const LocalNum& a, const LocalNum& b);

    // Multiplicative inverse. Exact nonzero input is inverted to the module
    // default precision; truncated input t^v*unit known mod t^p yields
    // precision p - 2v. Throws DivisionByZero on exact zero and
    // PrecisionExhausted when the leading digit is not determined.
    LocalNum inverse() const;
    friend LocalNum operator/(const LocalNum& a, const LocalNum& b) { return a * b.inverse(); }

    // Structural identity of representations (same digits, same precision).
    friend bool operator==(const LocalNum& a, const LocalNum& b);
    friend bool operator!=(const LocalNum& a, const LocalNum& b) { return !(a == b); }

    std::string str() const;

  private:
    void normalize();
    int q_;
    std::int64_t val_;   // exponent of digits_[0]; kExactPrec when len_ == 0
    std::int64_t prec_;  // absolute precision; kExactPrec = exact
    int len_ = 0;
    std::array<std::uint8_t, kDigitCap> digits_{};
};

// Working absolute precision used when inverting exact elements (CLI --precision).
std::int64_t local_default_prec();
void set_local_default_prec(std::int64_t p);

// Additive character of conductor O: psi(x) = zeta_q^(coefficient of t^-1).
// No carries in F_q((t)) makes this coefficient F_q-linear in x. Requires the
// t^-1 digit to be determined (prec >= 0). Value lands in Q(zeta_M), q | M.
CycloScalar psi_additive(const LocalNum& x, unsigned M);

bool is_prime(int n);

}  // namespace whitcusp
