#include "whitcusp/rankin_selberg.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "whitcusp/errors.hpp"
#include "whitcusp/subgroups.hpp"

namespace whitcusp {

namespace {

CycloScalar rational_scalar(unsigned M, const Rational& r) { return CycloScalar::from_rational(M, r); }

LaurentPoly rational_monomial(std::int64_t e, const Rational& c) {
    return LaurentPoly::monomial(e, CycloScalar::from_rational(1, c));
}

}  // namespace

SchwartzFn::SchwartzFn(int q, int r, unsigned M, std::vector<SchwartzTerm> terms)
    : q_(q), r_(r), M_(M), terms_(std::move(terms)) {
    for (const auto& term : terms_)
        if (static_cast<int>(term.center.size()) != r_ || static_cast<int>(term.level.size()) != r_ ||
            static_cast<int>(term.phase.size()) != r_)
            throw std::logic_error("schwartz term arity mismatch");
}

SchwartzFn SchwartzFn::lattice(int q, int r, unsigned M, std::int64_t level) {
    SchwartzTerm term{CycloScalar::one(M),
                      std::vector<LocalNum>(static_cast<size_t>(r), LocalNum::zero(q)),
                      std::vector<std::int64_t>(static_cast<size_t>(r), level),
                      std::vector<LocalNum>(static_cast<size_t>(r), LocalNum::zero(q))};
    return SchwartzFn(q, r, M, {std::move(term)});
}

SchwartzFn SchwartzFn::unit_ball(int q, int r, unsigned M) { return lattice(q, r, M, 0); }

SchwartzFn SchwartzFn::unit_shell(int q, int r, unsigned M) {
    SchwartzFn ball = unit_ball(q, r, M);
    SchwartzFn shrunk = lattice(q, r, M, 1);
    std::vector<SchwartzTerm> terms = ball.terms_;
    shrunk.terms_[0].coeff = -shrunk.terms_[0].coeff;
    terms.push_back(shrunk.terms_[0]);
    return SchwartzFn(q, r, M, std::move(terms));
}

CycloScalar SchwartzFn::value(const std::vector<LocalNum>& xi) const {
    if (static_cast<int>(xi.size()) != r_) throw std::logic_error("schwartz argument arity mismatch");
    CycloScalar acc = CycloScalar::zero(M_);
    for (const auto& term : terms_) {
        bool inside = true;
        CycloScalar factor = term.coeff;
        for (int i = 0; i < r_ && inside; ++i) {
            const LocalNum d = xi[static_cast<size_t>(i)] - term.center[static_cast<size_t>(i)];
            if (!d.val_at_least(term.level[static_cast<size_t>(i)])) {
                inside = false;
                break;
            }
            const LocalNum& e = term.phase[static_cast<size_t>(i)];
            if (!e.is_exact_zero()) factor *= psi_additive(e * xi[static_cast<size_t>(i)], M_);
        }
        if (inside) acc += factor;
    }
    return acc;
}

SchwartzFn SchwartzFn::fourier() const {
    std::vector<SchwartzTerm> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) {
        SchwartzTerm t = term;
        for (int i = 0; i < r_; ++i) {
            const size_t k = static_cast<size_t>(i);
            const LocalNum c = term.center[k];
            const LocalNum e = term.phase[k];
            const std::int64_t l = term.level[k];
            t.coeff *= rational_scalar(M_, q_power(q_, -l));
            if (!c.is_exact_zero() && !e.is_exact_zero()) t.coeff *= psi_additive(c * e, M_);
            t.center[k] = -e;
            t.level[k] = -l;
            t.phase[k] = c;
        }
        out.push_back(std::move(t));
    }
    return SchwartzFn(q_, r_, M_, std::move(out));
}

SchwartzFn SchwartzFn::negated() const {
    std::vector<SchwartzTerm> out = terms_;
    for (auto& term : out)
        for (int i = 0; i < r_; ++i) {
            term.center[static_cast<size_t>(i)] = -term.center[static_cast<size_t>(i)];
            term.phase[static_cast<size_t>(i)] = -term.phase[static_cast<size_t>(i)];
        }
    return SchwartzFn(q_, r_, M_, std::move(out));
}

SchwartzFn SchwartzFn::scaled(std::int64_t vlambda) const {
    const LocalNum tpow_neg = LocalNum::from_digits(q_, -vlambda, {1});
    const LocalNum tpow_pos = LocalNum::from_digits(q_, vlambda, {1});
    std::vector<SchwartzTerm> out = terms_;
    for (auto& term : out)
        for (int i = 0; i < r_; ++i) {
            const size_t k = static_cast<size_t>(i);
            term.center[k] = tpow_neg * term.center[k];
            term.level[k] -= vlambda;
            term.phase[k] = tpow_pos * term.phase[k];
        }
    return SchwartzFn(q_, r_, M_, std::move(out));
}

bool SchwartzFn::balanced_radial() const {
    for (const auto& term : terms_) {
        for (int i = 0; i < r_; ++i) {
            if (!term.center[static_cast<size_t>(i)].is_exact_zero()) return false;
            if (!term.phase[static_cast<size_t>(i)].is_exact_zero()) return false;
            if (term.level[static_cast<size_t>(i)] != term.level[0]) return false;
        }
    }
    return true;
}

CycloScalar SchwartzFn::radial_weight(std::int64_t b) const {
    if (!balanced_radial()) throw std::logic_error("radial weight of non-radial data");
    CycloScalar acc = CycloScalar::zero(M_);
    for (const auto& term : terms_)
        if (b >= term.level[0]) acc += term.coeff;
    return acc;
}

RSSeries rs_series(const WhittakerFn& W, const SchwartzFn& phi, int clear, std::int64_t window) {
    if (phi.q() != W.q() || phi.r() != 2 || phi.modulus() != W.modulus())
        throw std::logic_error("zeta shells: schwartz data does not match the representation");
    if (!phi.balanced_radial())
        throw std::logic_error("zeta shells need balanced radial schwartz data");
    if (clear <= 0 || clear % 2 != 0) throw std::logic_error("clearing exponent must be even");
    if (window < clear + 2) throw WindowTooSmall("window too narrow for the clearing exponent");

    const int q = W.q();
    const unsigned M = W.modulus();
    const std::vector<FMat>& G = all_gl2(q);
    const Rational norm = make_rational(1, q * gl_order(q, 2));

    std::vector<CycloScalar> shells;
    shells.reserve(static_cast<size_t>(2 * window + 1));
    for (std::int64_t a = -window; a <= window; ++a) {
        CycloScalar s = CycloScalar::zero(M);
        const CycloScalar wgt = phi.radial_weight(a + 1);
        if (!wgt.is_zero()) {
            const GMat cell = GMat::diag_tpow(q, {a, a + 1});
            for (const FMat& kb : G) {
                const GMat g = cell * lift(kb);
                const CycloScalar lhs = W.value(g);
                if (lhs.is_zero()) continue;
                s += lhs * W.dual_value(g);
            }
            s = s * norm * wgt;
        }
        shells.push_back(s);
    }

    // (1 - x^clear) telescopes the shell series; stability of the tail
    // certifies that nothing survives past the window (the weight of a
    // balanced radial function is eventually constant in the shell index,
    // and the averaged product does not depend on it at all).
    const std::int64_t step = clear / 2;
    LaurentPoly cleared;
    for (std::int64_t a = -window; a <= window; ++a) {
        const CycloScalar& here = shells[static_cast<size_t>(a + window)];
        const std::int64_t below = a - step + window;
        const CycloScalar prev =
            below >= 0 ? shells[static_cast<size_t>(below)] : CycloScalar::zero(M);
        cleared += LaurentPoly::monomial(2 * a + 1, here - prev);
    }
    for (std::int64_t a = window - step; a <= window; ++a) {
        const CycloScalar& here = shells[static_cast<size_t>(a + window)];
        const CycloScalar& prev = shells[static_cast<size_t>(a - step + window)];
        if (!(here - prev).is_zero())
            throw WindowTooSmall("zeta shells still moving at the window boundary");
    }
    return RSSeries{std::move(cleared), std::move(shells), window, clear};
}

ConductorReport conductor_solve(const LaurentPoly& P, const LaurentPoly& Pdual, int t, int r,
                                int q) {
    if (P.is_zero() || Pdual.is_zero())
        throw FunctionalEquationMismatch("functional equation with a vanishing side");
    const LaurentPoly one = LaurentPoly::one();
    auto one_minus_xpow = [&](int k) { return one - rational_monomial(k, make_rational(1)); };
    auto one_minus_ypow = [&](int k) { return one - rational_monomial(-k, q_power(q, -k)); };

    const LaurentPoly A = one_minus_xpow(t) * one_minus_ypow(r) * P;
    const LaurentPoly B = one_minus_ypow(t) * one_minus_xpow(r) * Pdual.inv_subst(q);

    const std::int64_t f_deg = B.deg() - A.deg();
    const std::int64_t f_low = B.low() - A.low();
    if (f_deg != f_low)
        throw FunctionalEquationMismatch("the two sides of the functional equation have widths " +
                                         std::to_string(A.deg() - A.low()) + " and " +
                                         std::to_string(B.deg() - B.low()));
    if (f_deg % 2 != 0)
        throw OddConductor("functional equation exponent " + std::to_string(f_deg) + " is odd");
    const int f = static_cast<int>(f_deg);

    // q^{f/2} x^f (1-x^t)(1-y^r) P(x) == eps (1-y^t)(1-x^r) P~(y), y = 1/(qx).
    const LaurentPoly lhs = A.shifted(f) * CycloScalar::from_rational(1, q_power(q, f / 2));
    const CycloScalar ratio = lhs.coeff(lhs.deg()) * B.coeff(B.deg()).inverse();
    if (!ratio.is_rational())
        throw FunctionalEquationMismatch("leading ratio of the functional equation is irrational");
    const Rational eps = ratio.as_rational();
    if (!(eps == make_rational(1) || eps == make_rational(-1)))
        throw FunctionalEquationMismatch("root number " + rational_str(eps) + " is not a sign");
    if (lhs != B * ratio) {
        const LaurentPoly residual = lhs - B * ratio;
        throw FunctionalEquationMismatch("functional equation residual " + residual.str());
    }

    int vq = 0;
    for (int tt = t; tt % q == 0; tt /= q) ++vq;
    const int bound_wild = r * (r + 1) - 2 * (t + vq);
    const int bound_tame = r * (r + 1) - 2 * t;
    return ConductorReport{f,        eps,           bound_wild,      bound_tame,
                           f >= bound_wild, f >= bound_tame, f == bound_tame};
}

int divisional_twist_order(const LaurentPoly& cleared, int r) {
    for (int d = 1; d <= r; ++d) {
        if (r % d != 0) continue;
        LaurentPoly divisor;
        for (int j = 0; j * d < r; ++j) divisor += rational_monomial(j * d, make_rational(1));
        try {
            (void)cleared.divide_exact(divisor);
            return d;
        } catch (const FunctionalEquationMismatch&) {
        }
    }
    throw std::logic_error("divisional twist order: no divisor of r works");
}

TwistOrderReport reconcile_twist_order(int structural, const LaurentPoly& r_cleared, int r) {
    const int divisional = divisional_twist_order(r_cleared, r);
    if (structural != divisional)
        throw InconsistentT("twist order " + std::to_string(structural) +
                            " from the inducing subgroup vs " + std::to_string(divisional) +
                            " from the zeta series");
    return TwistOrderReport{structural, divisional};
}

TwistOrderReport twist_order(const WhittakerFn& W, std::int64_t window) {
    const int r = 2;
    // Determinant valuations realized by the inducing subgroup: r on the
    // central uniformizer, 0 on the maximal compact. An unramified twist
    // s^(val det) is trivial there iff s kills the lattice they generate.
    std::int64_t lattice = 0;
    for (std::int64_t v : {static_cast<std::int64_t>(r), static_cast<std::int64_t>(0)})
        lattice = std::gcd(lattice, v);
    int structural = 0;
    for (int j = 1; j <= r; ++j)
        if ((j * lattice) % r == 0) ++structural;

    const SchwartzFn phi = SchwartzFn::unit_ball(W.q(), 2, W.modulus());
    const RSSeries series = rs_series(W, phi, r, window);
    return reconcile_twist_order(structural, series.cleared, r);
}

FormalDegreeReport formal_degree(const DepthZeroRep& pi, int t, int f) {
    if (f % 2 != 0) throw OddConductor("formal degree at odd conductor " + std::to_string(f));
    const int q = pi.q();
    const int r = 2;

    const Rational one = make_rational(1);
    const Rational from_conductor = make_rational(t, r) * q_power(q, f / 2) *
                                    make_rational(q - 1, q) / (one - q_power(q, -t));

    const CuspidalModel& m = pi.model();
    const std::vector<CycloScalar>& v = m.whittaker_vector();
    CycloScalar sum = CycloScalar::zero(pi.modulus());
    for (const FMat& kb : all_gl2(q)) {
        const CycloScalar c = m.matrix_coeff(kb, v, v);
        sum += c * c.conj();
    }
    const Rational norm4 = (m.pair(v, v) * m.pair(v, v)).as_rational();
    const Rational integral = sum.as_rational() / make_rational(gl_order(q, 2));
    const Rational direct = norm4 / integral;

    const Rational steinberg = make_rational(t) * q_power(q, t - 3 + f / 2) *
                               (q_power(q, r) - one) / (q_power(q, t) - one);
    if (steinberg.get_den() != 1 || steinberg <= 0)
        throw NonIntegralRatio("steinberg ratio " + rational_str(steinberg));

    return FormalDegreeReport{from_conductor, direct, direct / from_conductor, steinberg};
}

}  // namespace whitcusp
