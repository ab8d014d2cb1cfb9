#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "whitcusp/charsum.hpp"
#include "whitcusp/cyclo.hpp"
#include "whitcusp/finite_gl2.hpp"
#include "whitcusp/gmat.hpp"

namespace whitcusp {

// Depth-zero supercuspidal representation of GL_2(F_q((t))), compactly
// induced from Z*K: K = GL_2(O) acts through the cuspidal model of its
// residue quotient, units of the center act by the restriction of the
// inducing character, and the uniformizer acts by the chosen unit scalar
// omega_varpi (default 1).
class DepthZeroRep {
  public:
    DepthZeroRep(int q, long theta_exponent, const CycloScalar& omega_varpi);
    DepthZeroRep(int q, long theta_exponent);

    int q() const { return model_.character().q(); }
    unsigned modulus() const { return model_.modulus(); }
    const CuspidalModel& model() const { return model_; }
    const CycloScalar& omega_varpi() const { return omega_; }
    CycloScalar omega_power(std::int64_t m) const;

    // g lies in Z*K iff val det g = 2m and t^-m g is in K; returns m.
    std::optional<std::int64_t> zk_exponent(const GMat& g) const;

    // <pi(g) v, w>, supported on Z*K. The one-argument form pairs the
    // Whittaker vector with itself.
    CycloScalar matrix_coefficient(const GMat& g) const;
    CycloScalar matrix_coefficient(const GMat& g, const std::vector<CycloScalar>& v,
                                   const std::vector<CycloScalar>& w) const;

    // The diagonal matrix coefficient as a stability-corpus member: supported
    // inside K (determinant valuation 0 on N), invariant under K(1) on both
    // sides.
    CorpusFn matrix_coefficient_corpus_fn() const;

  private:
    CuspidalModel model_;
    CycloScalar omega_, omega_inv_;
};

// Whittaker function of a depth-zero supercuspidal:
//   W(g) = int_N <pi(a0 u g) v, w> psi_N(u)^{-1} du,   a0 = diag(t, 1).
// The integrand is supported on the cells diag(t^a, t^(a+1)) K of the torus,
// where the integral collapses to the residue-level sums
//   C(kbar) = sum_{c in F_q} zeta_q^{-c} <sigma(ubar_c kbar) v, w>,
// tabulated over the whole residue group at construction. Evaluation routes
// any g through its Iwasawa decomposition:
//   W(u t^(a,b) k) = psi_N(u) * omega_varpi^(a+1) * C(kbar)  if b = a + 1,
// and 0 otherwise; the table makes every later value a lookup.
class WhittakerFn {
  public:
    explicit WhittakerFn(const DepthZeroRep& pi);
    WhittakerFn(const DepthZeroRep& pi, const std::vector<CycloScalar>& v,
                const std::vector<CycloScalar>& w);

    const DepthZeroRep& rep() const { return pi_; }
    int q() const { return pi_.q(); }
    unsigned modulus() const { return pi_.modulus(); }

    CycloScalar value(const GMat& g) const;
    // W~(g) = W(w_long (g^T)^{-1}): a Whittaker function of the dual
    // representation with respect to the inverse character of N.
    CycloScalar dual_value(const GMat& g) const;

    // Residue table C(kbar).
    const CycloScalar& cell_value(const FMat& kbar) const;

  private:
    DepthZeroRep pi_;
    std::vector<CycloScalar> cells_;
    std::unordered_map<std::uint64_t, int> index_;
};

// Certified bracket of the shells diag(t^a, 1) K with a nonzero value,
// scanned over |a| <= window.
struct SupportProfile {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t window;
};

// Scans W (resp. W~) on diag(t^a, 1) k over every residue class; throws
// WindowTooSmall if a boundary shell is nonzero or no shell is.
SupportProfile whittaker_support(const WhittakerFn& W, std::int64_t window = 6);
SupportProfile dual_whittaker_support(const WhittakerFn& W, std::int64_t window = 6);

// <pi(g) W, W~> over ZN\G. The dual factor vanishes off the single shell
// diag(t^-1, 1) K, so the integral is delta_B^{-1} times an average over the
// residue group. As a function of g this is a matrix coefficient of pi:
// supported on Z*K, invariant under K(1) on both sides.
CycloScalar pairing_whittaker(const WhittakerFn& W, const GMat& g);

// Same pairing computed through the truncation X = {0 <= val det < 2}:
// sum over the center of the N\G pairing of W*1_X against its dual twin.
// Proportional to pairing_whittaker with one g-independent constant.
CycloScalar pairing_truncated(const WhittakerFn& W, const GMat& g);

}  // namespace whitcusp
