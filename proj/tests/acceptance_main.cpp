// Acceptance gate: the headline claims, each verified end to end by exact
// computation, one line per criterion. Exit 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "whitcusp/charsum.hpp"
#include "whitcusp/errors.hpp"
#include "whitcusp/finite_gl2.hpp"
#include "whitcusp/gmat.hpp"
#include "whitcusp/rankin_selberg.hpp"
#include "whitcusp/report.hpp"
#include "whitcusp/subgroups.hpp"
#include "whitcusp/suites.hpp"
#include "whitcusp/supercuspidal.hpp"

using namespace whitcusp;

namespace {

constexpr std::int64_t kBudget = 400'000'000;

struct Gate {
    int passed = 0;
    int failed = 0;

    void report(const std::string& name, bool ok, const std::string& detail, double secs) {
        std::printf("[%s] %-12s %s (%.1fs)\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.c_str(), secs);
        std::fflush(stdout);
        ok ? ++passed : ++failed;
    }

    template <typename F>
    void run(const std::string& name, F&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            detail = body(ok);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report(name, ok, detail, secs);
    }
};

unsigned psi_modulus(int q) { return static_cast<unsigned>(q) * static_cast<unsigned>(q * q - 1); }

LocalNum rand_local(std::mt19937_64& rng, int q, std::int64_t v, int ndig) {
    std::vector<int> ds(static_cast<size_t>(ndig));
    for (int& d : ds) d = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    ds[0] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(q - 1));
    return LocalNum::from_digits(q, v, ds);
}

FMat rand_res(std::mt19937_64& rng, int q) {
    for (;;) {
        FMat m = FMat::identity(q, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m.at(i, j) = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
        if (((m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)) % q + q) % q != 0) return m;
    }
}

CycloScalar whittaker_integral(const DepthZeroRep& pi, const GMat& g, std::int64_t gran,
                               Budget& budget) {
    const int q = pi.q();
    const GMat left = GMat::diag_tpow(q, {1, 0});
    auto f = [&](const GMat& u) { return pi.matrix_coefficient(left * u * g); };
    return integrate_N_box(q, 2, pi.modulus(), radius_box(2, 1, gran), -1, f, budget);
}

// Criterion 1: the unipotent average of the corner character equals its
// closed form psi_N(v) 1_V(v), for every r, q, n and a boundary-complete
// sample of at least fifty shifts per configuration.
std::string crit_averages(bool& ok) {
    ok = true;
    std::string detail;
    int configs = 0;
    for (int r : {2, 3})
        for (int q : {2, 3})
            for (int n : {1, 2}) {
                const unsigned M = psi_modulus(q);
                const auto bounds = aux_lattice_bounds(r, n);
                std::mt19937_64 rng(1000u + static_cast<unsigned>(100 * r + 10 * q + n));
                std::vector<std::vector<LocalNum>> probes;
                auto grid = [&](std::int64_t lam) {
                    return std::vector<LocalNum>{
                        LocalNum::digit(q, 1, -lam - 2), LocalNum::digit(q, 1, -lam - 1),
                        LocalNum::digit(q, 1, -lam),     LocalNum::from_digits(q, -lam, {1, 1}),
                        LocalNum::digit(q, 1, -lam + 1), LocalNum::zero(q)};
                };
                if (r == 2)
                    for (const auto& c : grid(bounds[0])) probes.push_back({c});
                else
                    for (const auto& c0 : grid(bounds[0]))
                        for (const auto& c1 : grid(bounds[1])) probes.push_back({c0, c1});
                while (probes.size() < 50) {
                    std::vector<LocalNum> c;
                    for (int j = 0; j + 1 < r; ++j)
                        c.push_back(rand_local(
                            rng, q,
                            -bounds[static_cast<size_t>(j)] - 2 + static_cast<std::int64_t>(rng() % 4),
                            5));
                    probes.push_back(std::move(c));
                }
                for (const auto& c : probes) {
                    Budget budget{kBudget, 0};
                    if (!(aux_conjugation_average(q, r, n, c, M, budget) ==
                          aux_conjugation_reference(q, r, n, c, M))) {
                        ok = false;
                        detail = "mismatch at r=" + std::to_string(r) + " q=" + std::to_string(q) +
                                 " n=" + std::to_string(n);
                    }
                }
                ++configs;
            }
    if (detail.empty())
        detail = std::to_string(configs) + " configs x >=50 boundary-complete samples";
    return detail;
}

// Criterion 2: the depth-n congruence-box integral equals the stable value
// for every corpus member, and vanishes off the stability ball.
std::string crit_stability(bool& ok) {
    ok = true;
    std::string detail;
    int members = 0;
    for (int r : {2, 3})
        for (int q : {2, 3}) {
            const int n = 1;
            const unsigned M = psi_modulus(q);
            Budget budget{kBudget, 0};
            std::vector<CorpusFn> corpus = build_corpus(q, r, 1, budget);
            if (r == 2) corpus.push_back(DepthZeroRep(q, 1).matrix_coefficient_corpus_fn());
            if (corpus.size() < 10) {
                ok = false;
                detail = "corpus too small at r=" + std::to_string(r) + " q=" + std::to_string(q);
            }
            for (const CorpusFn& f : corpus) {
                const CycloScalar lhs = psi_integral_torus(f, q, r, n, M, budget);
                const CycloScalar rhs = psi_integral_full(f, q, r, M, budget);
                if (!(lhs == rhs)) {
                    ok = false;
                    detail = "unstable member " + f.name;
                }
                ++members;
            }
            const std::int64_t ball = ((std::int64_t{1} << (r - 1)) - 1) * n;
            for (int extra = 1; extra <= 2; ++extra) {
                std::vector<std::int64_t> d(static_cast<size_t>(r), 0);
                d[0] = ball + extra;
                d[static_cast<size_t>(r - 1)] = -(ball + extra);
                const CorpusFn f = corpus_indicator_cartan(q, r, d);
                if (!psi_integral_torus(f, q, r, n, M, budget).is_zero()) {
                    ok = false;
                    detail = "nonzero integral off the stability ball";
                }
            }
        }
    if (detail.empty()) detail = std::to_string(members) + " corpus members stable, off-ball zero";
    return detail;
}

// Criterion 3: for q in {2,3,5} and every regular exponent, the cuspidal
// model has rank q-1, unit character norm, and a one-dimensional space of
// equivariant vectors.
std::string crit_models(bool& ok) {
    ok = true;
    std::string detail;
    int models = 0;
    for (int q : {2, 3, 5}) {
        for (long a = 1; a < static_cast<long>(q) * q - 1; ++a) {
            bool regular = true;
            try {
                RegularChar probe(q, a);
            } catch (const NotRegular&) {
                regular = false;
            }
            if (!regular) continue;
            const RegularChar th(q, a);
            const CuspidalModel m(th);
            if (m.dim() != q - 1 || !(cuspidal_character_norm(th) == CycloScalar::one(m.modulus())) ||
                m.whittaker_multiplicity() != 1) {
                ok = false;
                detail = "model invariants fail at q=" + std::to_string(q) +
                         " theta=" + std::to_string(a);
            }
            ++models;
        }
    }
    if (detail.empty()) detail = std::to_string(models) + " regular characters, all rank q-1";
    return detail;
}

// Criterion 4: the Whittaker function vanishes once |t1/t2| exceeds q, and
// the certified support bracket is the single shell at -1.
std::string crit_support(bool& ok) {
    ok = true;
    std::string detail;
    for (int q : {2, 3}) {
        const DepthZeroRep pi(q, 1);
        WhittakerFn W(pi);
        const SupportProfile s = whittaker_support(W);
        if (s.lo != -1 || s.hi != -1) {
            ok = false;
            detail = "support bracket off at q=" + std::to_string(q);
        }
        for (const auto& d : std::vector<std::vector<std::int64_t>>{
                 {0, 2}, {-1, 1}, {0, 3}, {1, 4}, {-2, 1}, {0, 0}, {1, 1}})
            for (const FMat& kb : all_gl2(q))
                if (!W.value(GMat::diag_tpow(q, d) * lift(kb)).is_zero()) {
                    ok = false;
                    detail = "nonzero value on a far cell at q=" + std::to_string(q);
                }
    }
    if (detail.empty()) detail = "single shell at -1, far cells zero, q=2,3";
    return detail;
}

// Criterion 5: the functional equation pins f=2 with sign +1 at t=2 for
// q in {2,3}; f is even, obeys both conductor bounds with the tame one
// sharp, and does not move across three independent vector pairs.
std::string crit_equation(bool& ok) {
    ok = true;
    std::string detail;
    for (int q : {2, 3}) {
        const DepthZeroRep pi(q, 1);
        WhittakerFn W(pi);
        const unsigned M = pi.modulus();
        const SchwartzFn ball = SchwartzFn::unit_ball(q, 2, M);
        const LaurentPoly P = rs_series(W, ball, 2).cleared;
        const ConductorReport r0 = conductor_solve(P, P, 2, 2, q);
        if (r0.f != 2 || !(r0.eps == make_rational(1)) || r0.f % 2 != 0 || !r0.wild_ok ||
            !r0.tame_ok || !r0.tame_sharp) {
            ok = false;
            detail = "equation solve off at q=" + std::to_string(q);
        }
        const CuspidalModel& m = pi.model();
        const std::vector<CycloScalar>& v = m.whittaker_vector();
        const std::vector<FMat>& G = all_gl2(q);
        int pinned = 1;  // the base pair above
        for (size_t gi = 1; gi < G.size() && pinned < 3; ++gi) {
            try {
                WhittakerFn Wv(pi, m.act(G[gi], v), v);
                const LaurentPoly Pv = rs_series(Wv, ball, 2).cleared;
                if (Pv.is_zero()) continue;
                const ConductorReport rv = conductor_solve(Pv, Pv, 2, 2, q);
                if (rv.f != 2) {
                    ok = false;
                    detail = "conductor moved with the vector pair at q=" + std::to_string(q);
                }
                ++pinned;
            } catch (const ZeroFunction&) {
            }
        }
        if (pinned < 3) {
            ok = false;
            detail = "fewer than three informative vector pairs at q=" + std::to_string(q);
        }
    }
    if (detail.empty()) detail = "f=2, eps=+1, bounds sharp, >=3 vector pairs, q=2,3";
    return detail;
}

// Criterion 6: the independent support scans and the equation solver agree:
// M_W + m_dual = r - t - f = -2.
std::string crit_duality(bool& ok) {
    ok = true;
    std::string detail;
    for (int q : {2, 3}) {
        const DepthZeroRep pi(q, 1);
        WhittakerFn W(pi);
        const SupportProfile s = whittaker_support(W);
        const SupportProfile d = dual_whittaker_support(W);
        const LaurentPoly P =
            rs_series(W, SchwartzFn::unit_ball(q, 2, pi.modulus()), 2).cleared;
        const ConductorReport r0 = conductor_solve(P, P, 2, 2, q);
        if (s.hi + d.lo != 2 - 2 - r0.f || s.hi + d.lo != -2) {
            ok = false;
            detail = "shell duality broken at q=" + std::to_string(q);
        }
    }
    if (detail.empty()) detail = "M + m~ = r - t - f = -2 at q=2,3";
    return detail;
}

// Criterion 7: formal degrees: the Steinberg ratio is the positive integer 2,
// and one volume rule direct/formula = 1 - q^{-2} holds for both q.
std::string crit_degrees(bool& ok) {
    ok = true;
    std::string detail;
    for (int q : {2, 3}) {
        const DepthZeroRep pi(q, 1);
        const FormalDegreeReport fd = formal_degree(pi, 2, 2);
        const Rational measure =
            make_rational(static_cast<long>(q) * q - 1, static_cast<long>(q) * q);
        if (!(fd.steinberg_ratio == make_rational(2)) || !(fd.measure_ratio == measure) ||
            !(fd.direct == make_rational(q - 1))) {
            ok = false;
            detail = "degree bookkeeping off at q=" + std::to_string(q);
        }
    }
    if (detail.empty()) detail = "steinberg ratio 2, one volume rule 1-q^-2, q=2,3";
    return detail;
}

// Criterion 8: across more than two hundred Cartan-cell representatives
// filling the radius-4 ball, the diagonal matrix coefficient vanishes
// exactly off Z K and is somewhere nonzero on it.
std::string crit_coefficients(bool& ok) {
    ok = true;
    std::string detail;
    int reps = 0, nonzero_on = 0;
    for (int q : {2, 3}) {
        const DepthZeroRep pi(q, 1);
        std::mt19937_64 rng(77);
        const std::vector<FMat> sandwiches = {FMat::identity(q, 2), rand_res(rng, q),
                                              rand_res(rng, q)};
        for (std::int64_t d1 = -4; d1 <= 4; ++d1)
            for (std::int64_t d2 = -4; d2 <= 4; ++d2)
                for (size_t si = 0; si < sandwiches.size(); ++si) {
                    const GMat g = lift(sandwiches[si]) * GMat::diag_tpow(q, {d1, d2}) *
                                   lift(sandwiches[(si + 1) % sandwiches.size()]);
                    const CycloScalar c = pi.matrix_coefficient(g);
                    ++reps;
                    if (d1 != d2) {
                        if (!c.is_zero()) {
                            ok = false;
                            detail = "nonzero off Z K at q=" + std::to_string(q);
                        }
                    } else if (!c.is_zero()) {
                        ++nonzero_on;
                    }
                }
    }
    if (reps < 200 || nonzero_on == 0) {
        ok = false;
        detail = "coverage too thin: " + std::to_string(reps) + " reps";
    }
    if (detail.empty())
        detail = std::to_string(reps) + " reps in the radius-4 ball, zero off Z K";
    return detail;
}

// Criterion 9: ten integrals per family recomputed one granularity or window
// level deeper, unchanged: box integrals, defining Whittaker integrals, and
// zeta-shell enumerations.
std::string crit_refinement(bool& ok) {
    ok = true;
    std::string detail;
    const int q = 2, r = 2, n = 1;
    const unsigned M = psi_modulus(q);
    Budget budget{kBudget, 0};

    int boxes = 0;
    std::vector<CorpusFn> corpus = build_corpus(q, r, 1, budget);
    for (size_t i = 0; i < corpus.size() && i < 5; ++i) {
        const CorpusFn& f = corpus[i];
        const std::int64_t g0 = std::max<std::int64_t>(f.level_m, 1);
        for (int family = 0; family < 2; ++family) {
            const auto coarse = family == 0 ? torus_box(r, n, g0) : radius_box(r, 1, g0);
            const auto fine = family == 0 ? torus_box(r, n, g0 + 1) : radius_box(r, 1, g0 + 1);
            if (!(integrate_N_box(q, r, M, coarse, +1, f.eval, budget) ==
                  integrate_N_box(q, r, M, fine, +1, f.eval, budget))) {
                ok = false;
                detail = "box integral moved under refinement: " + f.name;
            }
            ++boxes;
        }
    }

    const DepthZeroRep pi(q, 1);
    WhittakerFn W(pi);
    int integrals = 0;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const GMat g = GMat::diag_tpow(q, {static_cast<std::int64_t>(i % 4) - 2,
                                           static_cast<std::int64_t>(i % 4) - 1}) *
                       lift(rand_res(rng, q));
        if (!(whittaker_integral(pi, g, 2, budget) == whittaker_integral(pi, g, 3, budget))) {
            ok = false;
            detail = "defining integral moved under refinement";
        }
        ++integrals;
    }

    int series = 0;
    const SchwartzFn ball = SchwartzFn::unit_ball(q, 2, pi.modulus());
    const SchwartzFn shell = SchwartzFn::unit_shell(q, 2, pi.modulus());
    for (const SchwartzFn& phi : {ball, shell, shell.fourier(), ball.scaled(1), ball.scaled(-1)}) {
        const RSSeries narrow = rs_series(W, phi, 2, 6);
        const RSSeries wide = rs_series(W, phi, 2, 8);
        if (!(narrow.cleared == wide.cleared)) {
            ok = false;
            detail = "zeta series moved under window widening";
        }
        ++series;
        for (std::int64_t a = -6; a <= 6; ++a)
            if (!(narrow.shells[static_cast<size_t>(a + 6)] ==
                  wide.shells[static_cast<size_t>(a + 8)])) {
                ok = false;
                detail = "zeta shell moved under window widening";
            }
    }

    if (detail.empty())
        detail = std::to_string(boxes) + " box + " + std::to_string(integrals) + " defining + " +
                 std::to_string(series) + " series refinements";
    return detail;
}

}  // namespace

int main() {
    Gate gate;
    gate.run("averages", crit_averages);
    gate.run("stability", crit_stability);
    gate.run("models", crit_models);
    gate.run("support", crit_support);
    gate.run("equation", crit_equation);
    gate.run("duality", crit_duality);
    gate.run("degrees", crit_degrees);
    gate.run("coefficients", crit_coefficients);
    gate.run("refinement", crit_refinement);
    std::printf("%d/9 criteria passed\n", gate.passed);
    return gate.failed == 0 ? 0 : 1;
}
