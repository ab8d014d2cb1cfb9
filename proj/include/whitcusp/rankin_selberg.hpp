#pragma once

#include <cstdint>
#include <vector>

#include "whitcusp/cyclo.hpp"
#include "whitcusp/laurent.hpp"
#include "whitcusp/localfield.hpp"
#include "whitcusp/supercuspidal.hpp"

namespace whitcusp {

// One product term of a Schwartz-Bruhat function on F^r:
//   coeff * prod_i 1_{center_i + t^level_i O}(xi_i) * psi(phase_i * xi_i).
struct SchwartzTerm {
    CycloScalar coeff;
    std::vector<LocalNum> center;
    std::vector<std::int64_t> level;
    std::vector<LocalNum> phase;
};

class SchwartzFn {
  public:
    SchwartzFn(int q, int r, unsigned M, std::vector<SchwartzTerm> terms);
    // 1 on the lattice (t^level O)^r.
    static SchwartzFn lattice(int q, int r, unsigned M, std::int64_t level);
    static SchwartzFn unit_ball(int q, int r, unsigned M);   // 1_{O^r}
    static SchwartzFn unit_shell(int q, int r, unsigned M);  // primitive vectors of O^r

    int q() const { return q_; }
    int r() const { return r_; }
    unsigned modulus() const { return M_; }
    const std::vector<SchwartzTerm>& terms() const { return terms_; }

    CycloScalar value(const std::vector<LocalNum>& xi) const;
    // hat(f)(eta) = int f(xi) psi(xi . eta) dxi, term by term: each factor
    // (c, l, e) turns into q^-l psi(c e) times the factor (-e, -l, c).
    SchwartzFn fourier() const;
    SchwartzFn negated() const;                        // xi -> value(-xi)
    SchwartzFn scaled(std::int64_t vlambda) const;     // xi -> value(t^vlambda xi)

    // All terms centered at zero, phase-free, with one level shared by the
    // coordinates of each term: then value only depends on the valuation
    // floor of the argument, and radial_weight(b) is the value on vectors
    // whose coordinates generate t^b O.
    bool balanced_radial() const;
    CycloScalar radial_weight(std::int64_t b) const;

  private:
    int q_, r_;
    unsigned M_;
    std::vector<SchwartzTerm> terms_;
};

// Shells of the zeta integral of W against its dual and a balanced radial
// Phi: on the cell diag(t^a, t^(a+1)) K the integrand contributes
//   S_a = delta_B^{-1} * Phi(t^(a+1) e_2) * avg_kbar W * Wdual,
// and the full integral is sum_a S_a x^(2a+1). The series is reported
// multiplied by (1 - x^clear); the window certifies that the cleared series
// terminates (stable tail), else WindowTooSmall.
struct RSSeries {
    LaurentPoly cleared;
    std::vector<CycloScalar> shells;  // S_a, a = -window .. window
    std::int64_t window;
    int clear;
};
RSSeries rs_series(const WhittakerFn& W, const SchwartzFn& phi, int clear,
                   std::int64_t window = 6);

// Functional-equation solve: find the unique (f, eps) with
//   q^(f/2) x^f (1-x^t)(1-y^r) P(x) = eps (1-y^t)(1-x^r) Pdual(y),
// y = 1/(q x), Pdual(y) expanded through the q-twisted substitution. Throws
// OddConductor when the exponent is odd, FunctionalEquationMismatch when no
// scalar balances the two sides.
struct ConductorReport {
    int f;
    Rational eps;
    int bound_wild;   // r(r+1) - 2(t + v_q(t))
    int bound_tame;   // r(r+1) - 2t
    bool wild_ok, tame_ok, tame_sharp;
};
ConductorReport conductor_solve(const LaurentPoly& P, const LaurentPoly& Pdual, int t, int r,
                                int q);

// Twist order of the representation: structurally, the number of unramified
// twists trivial on the inducing subgroup (counted through the determinant
// valuations it realizes); divisionally, the smallest d | r with
// (1-x^r)/(1-x^d) dividing the r-cleared zeta series. Disagreement throws
// InconsistentT.
struct TwistOrderReport {
    int structural;
    int divisional;
};
int divisional_twist_order(const LaurentPoly& cleared, int r);
TwistOrderReport reconcile_twist_order(int structural, const LaurentPoly& r_cleared, int r);
TwistOrderReport twist_order(const WhittakerFn& W, std::int64_t window = 6);

// Formal degree bookkeeping at conductor f and twist order t; direct is the
// Schur integral of the diagonal matrix coefficient over K modulo the
// central units, and steinberg_ratio must land in the positive integers
// (NonIntegralRatio otherwise).
struct FormalDegreeReport {
    Rational from_conductor;  // (t/r) q^(f/2) (1 - 1/q) / (1 - q^-t)
    Rational direct;
    Rational measure_ratio;   // direct / from_conductor
    Rational steinberg_ratio;  // t q^(t-3+f/2) (q^r-1)/(q^t-1)
};
FormalDegreeReport formal_degree(const DepthZeroRep& pi, int t, int f);

}  // namespace whitcusp
