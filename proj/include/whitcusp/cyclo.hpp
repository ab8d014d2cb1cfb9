#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "whitcusp/rational.hpp"

namespace whitcusp {

// Shared data for Q(zeta_M) represented as Q[X]/Phi_M(X).
// pow[j] holds X^j reduced mod Phi_M for every j < max(M, 2*phi-1), which
// covers both exponent folding (zeta^k, k mod M) and convolution tails.
struct CycloCtx {
    unsigned M = 1;
    unsigned phi = 1;
    std::vector<long> minpoly;              // Phi_M, degree phi, monic
    std::vector<std::vector<long>> pow;     // pow[j].size() == phi
};

const CycloCtx& cyclo_ctx(unsigned M);

unsigned euler_phi(unsigned n);

// Element of Q(zeta_M). Values with modulus 1 are plain rationals and promote
// to any other modulus on mixed arithmetic; two non-trivial moduli never mix.
class CycloScalar {
  public:
    CycloScalar() : M_(1), c_(1) {}
    static CycloScalar zero(unsigned M);
    static CycloScalar one(unsigned M);
    static CycloScalar from_rational(unsigned M, const Rational& r);
    static CycloScalar zeta(unsigned M, long k = 1);  // zeta_M^k

    unsigned modulus() const { return M_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational as_rational() const;  // throws unless is_rational()

    CycloScalar conj() const;      // zeta^k -> zeta^{-k}
    CycloScalar inverse() const;   // throws DivisionByZero on zero
    // self * conj(self): conj-fixed, hence real and nonnegative, but lies in
    // the real subfield of Q(zeta_M) — rational only when that subfield is Q.
    CycloScalar norm_sq() const { return *this * conj(); }

    std::complex<double> embed() const;  // numeric image, diagnostics only

    CycloScalar operator-() const;
    CycloScalar& operator+=(const CycloScalar& o);
    CycloScalar& operator-=(const CycloScalar& o);
    CycloScalar& operator*=(const CycloScalar& o);
    friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
    friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
    friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
    friend bool operator==(const CycloScalar& a, const CycloScalar& b);
    friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

    CycloScalar& operator*=(const Rational& r);
    friend CycloScalar operator*(CycloScalar a, const Rational& r) { return a *= r; }
    friend CycloScalar operator*(const Rational& r, CycloScalar a) { return a *= r; }

  private:
    CycloScalar(unsigned M, std::vector<Rational> c) : M_(M), c_(std::move(c)) {}
    // Align moduli: promotes the modulus-1 side, rejects distinct non-trivial ones.
    static void align(CycloScalar& a, CycloScalar& b);
    void promote(unsigned M);

    unsigned M_;
    std::vector<Rational> c_;  // size phi(M_)
};

}  // namespace whitcusp
