#include "whitcusp/supercuspidal.hpp"

#include <algorithm>
#include <stdexcept>

#include "whitcusp/errors.hpp"
#include "whitcusp/subgroups.hpp"

namespace whitcusp {

namespace {

std::int64_t valdet(const GMat& g) {
    const LocalNum d = g.det();
    if (d.is_exact_zero()) throw DivisionByZero("valdet: singular matrix");
    return d.val();
}

}  // namespace

DepthZeroRep::DepthZeroRep(int q, long theta_exponent, const CycloScalar& omega_varpi)
    : model_(RegularChar(q, theta_exponent)),
      omega_(omega_varpi),
      omega_inv_(omega_varpi.inverse()) {}

DepthZeroRep::DepthZeroRep(int q, long theta_exponent)
    : DepthZeroRep(q, theta_exponent, CycloScalar::one(1)) {}

CycloScalar DepthZeroRep::omega_power(std::int64_t m) const {
    CycloScalar acc = CycloScalar::one(modulus());
    const CycloScalar& base = m >= 0 ? omega_ : omega_inv_;
    for (std::int64_t i = 0; i < (m >= 0 ? m : -m); ++i) acc *= base;
    return acc;
}

std::optional<std::int64_t> DepthZeroRep::zk_exponent(const GMat& g) const {
    const std::int64_t vd = valdet(g);
    if (vd % 2 != 0) return std::nullopt;
    const std::int64_t m = vd / 2;
    const GMat shifted = GMat::diag_tpow(g.q(), {-m, -m}) * g;
    if (!in_K(shifted)) return std::nullopt;
    return m;
}

CycloScalar DepthZeroRep::matrix_coefficient(const GMat& g) const {
    return matrix_coefficient(g, model_.whittaker_vector(), model_.whittaker_vector());
}

CycloScalar DepthZeroRep::matrix_coefficient(const GMat& g, const std::vector<CycloScalar>& v,
                                             const std::vector<CycloScalar>& w) const {
    const auto m = zk_exponent(g);
    if (!m) return CycloScalar::zero(modulus());
    const GMat unit = GMat::diag_tpow(g.q(), {-*m, -*m}) * g;
    return omega_power(*m) * model_.matrix_coeff(residue(unit), v, w);
}

CorpusFn DepthZeroRep::matrix_coefficient_corpus_fn() const {
    DepthZeroRep copy = *this;
    return CorpusFn{
        "matcoef_theta" + std::to_string(model_.character().exponent()),
        1,
        0,
        [copy](const GMat& g) { return copy.matrix_coefficient(g); },
    };
}

WhittakerFn::WhittakerFn(const DepthZeroRep& pi)
    : WhittakerFn(pi, pi.model().whittaker_vector(), pi.model().whittaker_vector()) {}

WhittakerFn::WhittakerFn(const DepthZeroRep& pi, const std::vector<CycloScalar>& v,
                         const std::vector<CycloScalar>& w)
    : pi_(pi) {
    const int q = pi_.q();
    const unsigned M = pi_.modulus();
    const CuspidalModel& m = pi_.model();

    // C(kbar) = <sigma(kbar) v, w0> with w0 = sum_c zeta_q^{-c} sigma(ubar_c) w:
    // unitarity of sigma and conjugate-linearity of the pairing move the
    // averaging operator onto the second slot, where it is self-adjoint.
    std::vector<CycloScalar> w0(w.size(), CycloScalar::zero(M));
    for (int c = 0; c < q; ++c) {
        FMat uc = FMat::identity(q, 2);
        uc.at(0, 1) = c;
        const std::vector<CycloScalar> moved = m.act(uc, w);
        const CycloScalar lam = CycloScalar::zeta(M, -static_cast<long>(M / static_cast<unsigned>(q)) * c);
        for (size_t i = 0; i < w0.size(); ++i) w0[i] += lam * moved[i];
    }

    const std::vector<FMat>& G = all_gl2(q);
    cells_.reserve(G.size());
    index_.reserve(G.size());
    bool any = false;
    for (size_t i = 0; i < G.size(); ++i) {
        index_.emplace(G[i].key(), static_cast<int>(i));
        cells_.push_back(m.pair(m.act(G[i], v), w0));
        any = any || !cells_.back().is_zero();
    }
    if (!any) throw ZeroFunction("whittaker data vanishes on every cell");
}

const CycloScalar& WhittakerFn::cell_value(const FMat& kbar) const {
    return cells_[static_cast<size_t>(index_.at(kbar.key()))];
}

CycloScalar WhittakerFn::value(const GMat& g) const {
    const IwasawaNAK nak = iwasawa(g);
    if (nak.exps[1] != nak.exps[0] + 1) return CycloScalar::zero(modulus());
    return psi_N(nak.u, modulus()) * pi_.omega_power(nak.exps[0] + 1) * cell_value(residue(nak.k));
}

CycloScalar WhittakerFn::dual_value(const GMat& g) const { return value(dual_transform(g)); }

namespace {

SupportProfile scan_shells(const WhittakerFn& W, std::int64_t window, bool dual) {
    if (window < 1) throw std::logic_error("support scan needs a positive window");
    const int q = W.q();
    const std::vector<FMat>& G = all_gl2(q);
    std::int64_t lo = window + 1, hi = -window - 1;
    for (std::int64_t a = -window; a <= window; ++a) {
        const GMat shell = GMat::diag_tpow(q, {a, 0});
        bool nonzero = false;
        for (const FMat& kb : G) {
            const GMat g = shell * lift(kb);
            const CycloScalar val = dual ? W.dual_value(g) : W.value(g);
            if (!val.is_zero()) {
                nonzero = true;
                break;
            }
        }
        if (nonzero) {
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    if (hi < lo) throw WindowTooSmall("no nonzero shell within the scan window");
    if (lo == -window || hi == window)
        throw WindowTooSmall("nonzero boundary shell: support not bracketed");
    return SupportProfile{lo, hi, window};
}

}  // namespace

SupportProfile whittaker_support(const WhittakerFn& W, std::int64_t window) {
    return scan_shells(W, window, false);
}

SupportProfile dual_whittaker_support(const WhittakerFn& W, std::int64_t window) {
    return scan_shells(W, window, true);
}

CycloScalar pairing_whittaker(const WhittakerFn& W, const GMat& g) {
    const int q = W.q();
    const unsigned M = W.modulus();
    const std::vector<FMat>& G = all_gl2(q);
    // x runs over the shell diag(t^-1, 1) K, the only one meeting the support
    // of the dual factor; delta_B^{-1}(diag(t^-1, 1)) = 1/q.
    const GMat shell = GMat::diag_tpow(q, {-1, 0});
    CycloScalar acc = CycloScalar::zero(M);
    for (const FMat& kb : G) {
        const GMat x = shell * lift(kb);
        const CycloScalar dual = W.dual_value(x);
        if (dual.is_zero()) continue;
        acc += W.value(x * g) * dual;
    }
    return acc * make_rational(1, q * gl_order(q, 2));
}

CycloScalar pairing_truncated(const WhittakerFn& W, const GMat& g) {
    const int q = W.q();
    const unsigned M = W.modulus();
    const std::vector<FMat>& G = all_gl2(q);
    const std::int64_t vd = valdet(g);
    const GMat shell = GMat::diag_tpow(q, {0, 1});

    // Truncated factors live on {0 <= val det < 2}; the x-shell has
    // determinant valuation 1, so the condition on W*1_X picks at most one
    // central translate. Scan a window wide enough to contain it.
    const std::int64_t reach = (vd >= 0 ? vd : -vd) / 2 + 1;
    CycloScalar acc = CycloScalar::zero(M);
    for (std::int64_t j = -reach; j <= reach; ++j) {
        const std::int64_t vx = 1 + 2 * j + vd;
        if (vx < 0 || vx >= 2) continue;
        const GMat h = GMat::diag_tpow(q, {j, j}) * g;
        for (const FMat& kb : G) {
            const GMat x = shell * lift(kb);
            const CycloScalar dual = W.dual_value(x);
            if (dual.is_zero()) continue;
            acc += W.value(x * h) * dual;
        }
    }
    return acc * make_rational(1, q * gl_order(q, 2));
}

}  // namespace whitcusp
