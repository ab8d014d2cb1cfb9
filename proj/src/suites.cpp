#include "whitcusp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "whitcusp/charsum.hpp"
#include "whitcusp/errors.hpp"
#include "whitcusp/finite_gl2.hpp"
#include "whitcusp/rankin_selberg.hpp"
#include "whitcusp/report.hpp"
#include "whitcusp/subgroups.hpp"
#include "whitcusp/supercuspidal.hpp"

namespace whitcusp {

namespace {

unsigned psi_modulus(int q) { return static_cast<unsigned>(q) * static_cast<unsigned>(q * q - 1); }

std::string idx2(int i) {
    char b[16];
    std::snprintf(b, sizeof(b), "%02d", i);
    return b;
}

std::string idx3(long i) {
    char b[16];
    std::snprintf(b, sizeof(b), "%03ld", i);
    return b;
}

struct CaseOutcome {
    std::string lhs;
    std::string rhs;
    std::string audit;
    bool pass = false;
};

CaseOutcome scalar_case(const CycloScalar& lhs, const CycloScalar& rhs, std::string audit = "") {
    return CaseOutcome{scalar_str(lhs), scalar_str(rhs), std::move(audit), lhs == rhs};
}

// Times the body and converts exceptions into failing records; a budget or
// window error is evidence, not an abort.
template <typename F>
void run_case(SuiteReport& rep, std::string id, std::string params, std::string claim, F&& body) {
    CaseRecord rec;
    rec.id = std::move(id);
    rec.params = std::move(params);
    rec.claim = std::move(claim);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        CaseOutcome out = body();
        rec.lhs = std::move(out.lhs);
        rec.rhs = std::move(out.rhs);
        rec.audit = std::move(out.audit);
        rec.pass = out.pass;
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.audit = std::string("exception: ") + e.what();
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.cases.push_back(std::move(rec));
}

// Deterministic sampling; raw engine draws only, so the stream depends on
// nothing but the seed.
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    int digit(int q) { return static_cast<int>(rng() % static_cast<std::uint64_t>(q)); }
    LocalNum local_at(int q, std::int64_t v, int ndig) {
        std::vector<int> ds(static_cast<size_t>(ndig));
        for (int& d : ds) d = digit(q);
        ds[0] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(q - 1 ? q - 1 : 1));
        if (ds[0] >= q) ds[0] = 1;
        return LocalNum::from_digits(q, v, ds);
    }
    FMat residue2(int q) {
        for (;;) {
            const int a = digit(q), b = digit(q), c = digit(q), d = digit(q);
            if (((a * d - b * c) % q + q) % q == 0) continue;
            FMat m = FMat::identity(q, 2);
            m.at(0, 0) = a;
            m.at(0, 1) = b;
            m.at(1, 0) = c;
            m.at(1, 1) = d;
            return m;
        }
    }
    GMat k_level1(int q) {
        GMat k = GMat::identity(q, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const std::vector<int> ds = {digit(q), digit(q), digit(q)};
                k.at(i, j) = k.at(i, j) + LocalNum::from_digits(q, 1, ds);
            }
        return k;
    }
};

Budget fresh_budget(const RunConfig& cfg) {
    Budget b;
    b.limit = cfg.budget;
    return b;
}

std::int64_t minimal_enumeration(int q, int r, int n) {
    std::int64_t digits = 0;
    for (const NBoxRange& c : torus_box(r, n, 1)) digits += c.gran - c.lo;
    std::int64_t points = 1;
    for (std::int64_t i = 0; i < digits; ++i) {
        if (points > (std::int64_t{1} << 50)) return points;
        points *= q;
    }
    return points;
}

std::string config_line(const RunConfig& cfg) {
    std::ostringstream s;
    s << "q=" << cfg.q << " r=" << cfg.r << " n=" << cfg.n << " precision=" << cfg.precision
      << " theta=" << cfg.theta << " suite=" << cfg.suite << " budget=" << cfg.budget
      << " seed=" << cfg.seed;
    return s.str();
}

CycloScalar integral_direct(const DepthZeroRep& pi, const GMat& g, std::int64_t gran,
                            Budget& budget) {
    const int q = pi.q();
    const GMat left = GMat::diag_tpow(q, {1, 0});
    auto f = [&](const GMat& u) { return pi.matrix_coefficient(left * u * g); };
    return integrate_N_box(q, 2, pi.modulus(), radius_box(2, 1, gran), -1, f, budget);
}

// ---------------------------------------------------------------------------
// charsum: lattice-embedding membership, the conjugation average identity,
// integral stability across the corpus, kernel equivariance, refinement.

void suite_charsum(const RunConfig& cfg, SuiteReport& rep) {
    const int q = cfg.q, r = cfg.r, n = cfg.n;
    const unsigned M = psi_modulus(q);
    Sampler smp(cfg.seed);
    const std::vector<std::int64_t> bounds = aux_lattice_bounds(r, n);
    const int ndig = std::min(cfg.precision, 6);

    // Embedding membership: x(alpha) and its conjugate stay in the
    // depth-n congruence block for alpha on the lattice, u on the conjugator.
    {
        std::vector<std::vector<LocalNum>> alphas;
        if (r == 2) {
            const std::int64_t b0 = bounds[0];
            alphas = {{LocalNum::digit(q, 1, b0)},
                      {LocalNum::from_digits(q, b0, {1, 1, 1})},
                      {LocalNum::digit(q, 1, b0 + 2)},
                      {LocalNum::zero(q)},
                      {smp.local_at(q, b0, ndig)},
                      {smp.local_at(q, b0 + 1, ndig)}};
        } else {
            const std::int64_t b0 = bounds[0], b1 = bounds[1];
            alphas = {{LocalNum::digit(q, 1, b0), LocalNum::digit(q, 1, b1)},
                      {LocalNum::from_digits(q, b0, {1, 0, 1}), LocalNum::from_digits(q, b1, {1, 1})},
                      {LocalNum::digit(q, 1, b0 + 2), LocalNum::digit(q, 1, b1 + 1)},
                      {LocalNum::zero(q), LocalNum::digit(q, 1, b1)},
                      {smp.local_at(q, b0, ndig), smp.local_at(q, b1, ndig)},
                      {smp.local_at(q, b0 + 2, ndig), LocalNum::zero(q)}};
        }
        std::vector<GMat> us = {GMat::identity(q, r)};
        if (r == 3) {
            auto with_u = [&](const LocalNum& y) {
                GMat u = GMat::identity(q, 3);
                u.at(0, 1) = y;
                return u;
            };
            us.push_back(with_u(LocalNum::digit(q, 1, -n)));
            us.push_back(with_u(LocalNum::from_digits(q, -n, {1, 1})));
            us.push_back(with_u(smp.local_at(q, -n, ndig)));
        }
        int idx = 0;
        for (size_t ai = 0; ai < alphas.size(); ++ai)
            for (size_t ui = 0; ui < us.size(); ++ui) {
                const auto& a = alphas[ai];
                const GMat& u = us[ui];
                std::string params = "q=" + std::to_string(q) + " r=" + std::to_string(r) +
                                     " n=" + std::to_string(n) + " alpha=" + std::to_string(ai) +
                                     " u=" + std::to_string(ui);
                run_case(rep, "charsum/aux1/" + idx2(idx++), params,
                         "lattice embeddings and their conjugates stay in the congruence block",
                         [&]() {
                             const EmbeddingMembership chk = aux_embedding_membership(q, r, n, a, u);
                             auto flag = [](bool v) { return v ? std::string("in") : std::string("out"); };
                             return CaseOutcome{flag(chk.x_in) + "," + flag(chk.conj_in), "in,in",
                                                "alpha[0]=" + a[0].str(),
                                                chk.x_in && chk.conj_in};
                         });
            }
    }

    // The conjugation average equals psi_N(v) on V(t0^n) and vanishes off it;
    // the sample grid covers every boundary valuation in each coordinate.
    {
        std::vector<std::vector<LocalNum>> probes;
        auto coordinate_grid = [&](std::int64_t lam) {
            return std::vector<LocalNum>{
                LocalNum::digit(q, 1, -lam - 2), LocalNum::digit(q, 1, -lam - 1),
                LocalNum::digit(q, 1, -lam),     LocalNum::from_digits(q, -lam, {1, 1, 1}),
                LocalNum::digit(q, 1, -lam + 1), LocalNum::zero(q)};
        };
        if (r == 2) {
            for (const auto& c : coordinate_grid(bounds[0])) probes.push_back({c});
        } else {
            const auto g0 = coordinate_grid(bounds[0]);
            const auto g1 = coordinate_grid(bounds[1]);
            for (const auto& c0 : g0)
                for (const auto& c1 : g1) probes.push_back({c0, c1});
        }
        while (probes.size() < 52) {
            std::vector<LocalNum> c;
            for (int j = 0; j + 1 < r; ++j)
                c.push_back(smp.local_at(
                    q, -bounds[static_cast<size_t>(j)] - 2 + smp.digit(4), ndig));
            probes.push_back(std::move(c));
        }
        for (size_t i = 0; i < probes.size(); ++i) {
            const auto& c = probes[i];
            std::string params = "q=" + std::to_string(q) + " r=" + std::to_string(r) +
                                 " n=" + std::to_string(n) + " v=" + std::to_string(i);
            run_case(rep, "charsum/aux2/v" + idx2(static_cast<int>(i)), params,
                     "the unipotent average of the corner character equals psi_N(v) on the "
                     "torus-bounded lattice and 0 off it",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         const CycloScalar lhs = aux_conjugation_average(q, r, n, c, M, budget);
                         const CycloScalar rhs = aux_conjugation_reference(q, r, n, c, M);
                         std::string audit = std::string("in_V=") +
                                             (in_V_torus(r, n, c) ? "1" : "0") +
                                             " points=" + std::to_string(budget.used);
                         return scalar_case(lhs, rhs, std::move(audit));
                     });
        }
    }

    // Congruence-box integral equals the stable integral across the corpus.
    std::vector<CorpusFn> corpus;
    {
        run_case(rep, "charsum/effstab/build",
                 "q=" + std::to_string(q) + " r=" + std::to_string(r),
                 "the stability corpus enumerates within the configured budget",
                 [&]() {
                     Budget build_budget = fresh_budget(cfg);
                     corpus = build_corpus(q, r, 1, build_budget);
                     if (r == 2)
                         corpus.push_back(DepthZeroRep(q, cfg.theta).matrix_coefficient_corpus_fn());
                     return CaseOutcome{"members=" + std::to_string(corpus.size()), "members>=10",
                                        "points=" + std::to_string(build_budget.used),
                                        corpus.size() >= 10};
                 });
        for (size_t i = 0; i < corpus.size(); ++i) {
            const CorpusFn& f = corpus[i];
            std::string params = "q=" + std::to_string(q) + " r=" + std::to_string(r) +
                                 " n=" + std::to_string(n) + " f=" + f.name;
            run_case(rep, "charsum/effstab/" + idx2(static_cast<int>(i)), params,
                     "the character-weighted integral over the depth-n congruence box equals "
                     "its stable value",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         const CycloScalar lhs = psi_integral_torus(f, q, r, n, M, budget);
                         const CycloScalar rhs = psi_integral_full(f, q, r, M, budget);
                         return scalar_case(lhs, rhs, "points=" + std::to_string(budget.used));
                     });
        }
        // Support beyond the stability ball contributes nothing at depth n.
        const std::int64_t ball = ((std::int64_t{1} << (r - 1)) - 1) * n;
        for (int extra = 1; extra <= 2; ++extra) {
            std::vector<std::int64_t> d(static_cast<size_t>(r), 0);
            d[0] = ball + extra;
            d[static_cast<size_t>(r - 1)] = -(ball + extra);
            const CorpusFn f = corpus_indicator_cartan(q, r, d);
            std::string params = "q=" + std::to_string(q) + " r=" + std::to_string(r) +
                                 " n=" + std::to_string(n) + " radius=" + std::to_string(ball + extra);
            run_case(rep, "charsum/effstab/off" + idx2(extra), params,
                     "test functions supported off the stability ball integrate to zero over "
                     "the congruence box",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         const CycloScalar lhs = psi_integral_torus(f, q, r, n, M, budget);
                         return scalar_case(lhs, CycloScalar::zero(M),
                                            "points=" + std::to_string(budget.used));
                     });
        }
    }

    // Kernel transform equivariance under one-parameter translations.
    {
        GMat id = GMat::identity(q, r);
        GMat n0 = GMat::identity(q, r);
        n0.at(0, 1) = LocalNum::digit(q, 1, -1);
        const std::vector<CorpusFn> kernel_fns = {corpus_indicator_K(q, r),
                                                  corpus_indicator_K_level(q, r, 1)};
        int idx = 0;
        for (const CorpusFn& f : kernel_fns) {
            std::string params =
                "q=" + std::to_string(q) + " r=" + std::to_string(r) + " f=" + f.name;
            run_case(rep, "charsum/kernel/" + idx2(idx++), params,
                     "the kernel transform picks up psi_N(n0)^{-1} under right translation",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         const CycloScalar base = kernel_transform(f, id, id, M, budget);
                         const CycloScalar lhs = kernel_transform(f, id, n0, M, budget);
                         return scalar_case(lhs, psi_N(n0, M, -1) * base,
                                            "points=" + std::to_string(budget.used));
                     });
            run_case(rep, "charsum/kernel/" + idx2(idx++), params,
                     "the kernel transform picks up psi_N(n0) under left translation",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         const CycloScalar base = kernel_transform(f, id, id, M, budget);
                         const CycloScalar lhs = kernel_transform(f, n0, id, M, budget);
                         return scalar_case(lhs, psi_N(n0, M) * base,
                                            "points=" + std::to_string(budget.used));
                     });
        }
    }

    // Refinement: each integral is unchanged one granularity level deeper.
    {
        int idx = 0;
        for (size_t i = 0; i < corpus.size() && i < 5; ++i) {
            const CorpusFn& f = corpus[i];
            const std::int64_t g0 = std::max(f.level_m, 1);
            std::string params =
                "q=" + std::to_string(q) + " r=" + std::to_string(r) + " f=" + f.name;
            for (int family = 0; family < 2; ++family) {
                run_case(rep, "charsum/refine/" + idx2(idx++), params,
                         "the box integral is invariant under one refinement level",
                         [&]() {
                             Budget budget = fresh_budget(cfg);
                             const auto box = family == 0 ? torus_box(r, n, g0)
                                                          : radius_box(r, 1, g0);
                             const auto finer = family == 0 ? torus_box(r, n, g0 + 1)
                                                            : radius_box(r, 1, g0 + 1);
                             const CycloScalar lhs =
                                 integrate_N_box(q, r, M, box, +1, f.eval, budget);
                             const CycloScalar rhs =
                                 integrate_N_box(q, r, M, finer, +1, f.eval, budget);
                             return scalar_case(lhs, rhs,
                                                std::string(family == 0 ? "torus" : "radius") +
                                                    " gran=" + std::to_string(g0) + "," +
                                                    std::to_string(g0 + 1));
                         });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// whittaker: finite-model invariants for every regular character, support
// scans, equivariance, and the defining integral at two granularities.

void suite_whittaker(const RunConfig& cfg, SuiteReport& rep) {
    const int q = cfg.q;
    const unsigned M = psi_modulus(q);
    Sampler smp(cfg.seed + 1);

    for (long a = 1; a < static_cast<long>(q) * q - 1; ++a) {
        bool regular = true;
        try {
            RegularChar probe(q, a);
        } catch (const NotRegular&) {
            regular = false;
        }
        if (!regular) continue;
        run_case(rep, "whittaker/model/a" + idx3(a),
                 "q=" + std::to_string(q) + " theta=" + std::to_string(a),
                 "every regular character cuts out a model of rank q-1 with an irreducible "
                 "character and a one-dimensional equivariant line",
                 [&]() {
                     const RegularChar th(q, a);
                     const CuspidalModel m(th);
                     const CycloScalar norm = cuspidal_character_norm(th);
                     std::string lhs = "dim=" + std::to_string(m.dim()) +
                                       " norm=" + scalar_str(norm) +
                                       " mult=" + std::to_string(m.whittaker_multiplicity());
                     std::string rhs = "dim=" + std::to_string(q - 1) + " norm=1/1 mult=1";
                     return CaseOutcome{lhs, rhs, "cosets=" + std::to_string(m.ncosets()),
                                        lhs == rhs};
                 });
    }

    const DepthZeroRep pi(q, cfg.theta);
    WhittakerFn W(pi);
    const std::string base_params = "q=" + std::to_string(q) + " theta=" + std::to_string(cfg.theta);
    // Deterministic base point with a nonzero value, so the equivariance
    // checks compare nonzero quantities.
    GMat g0 = GMat::diag_tpow(q, {-1, 0});
    for (const FMat& kb : all_gl2(q)) {
        if (!W.cell_value(kb).is_zero()) {
            g0 = g0 * lift(kb);
            break;
        }
    }

    run_case(rep, "whittaker/support/scan", base_params,
             "the support scan finds exactly the shell below the identity and a zero boundary",
             [&]() {
                 const SupportProfile s = whittaker_support(W);
                 return CaseOutcome{"[" + std::to_string(s.lo) + "," + std::to_string(s.hi) + "]",
                                    "[-1,-1]", "window=" + std::to_string(s.window),
                                    s.lo == -1 && s.hi == -1};
             });
    run_case(rep, "whittaker/support/dual", base_params,
             "the contragredient scan finds the same single shell",
             [&]() {
                 const SupportProfile s = dual_whittaker_support(W);
                 return CaseOutcome{"[" + std::to_string(s.lo) + "," + std::to_string(s.hi) + "]",
                                    "[-1,-1]", "window=" + std::to_string(s.window),
                                    s.lo == -1 && s.hi == -1};
             });
    run_case(rep, "whittaker/support/sum", base_params,
             "the top shell of the function plus the bottom shell of its dual is -2",
             [&]() {
                 const SupportProfile s = whittaker_support(W);
                 const SupportProfile d = dual_whittaker_support(W);
                 return CaseOutcome{std::to_string(s.hi + d.lo), "-2", "", s.hi + d.lo == -2};
             });

    {
        const std::vector<std::vector<std::int64_t>> far_cells = {{0, 2}, {-1, 1}, {0, 3}, {1, 4}};
        int idx = 0;
        for (const auto& d : far_cells) {
            run_case(rep, "whittaker/vanish/" + idx2(idx++),
                     base_params + " d=(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + ")",
                     "whittaker values vanish once the torus ratio exceeds the residue size",
                     [&]() {
                         int nonzero = 0, total = 0;
                         const GMat cell = GMat::diag_tpow(q, d);
                         for (const FMat& kb : all_gl2(q)) {
                             if (!W.value(cell * lift(kb)).is_zero()) ++nonzero;
                             ++total;
                         }
                         return CaseOutcome{"nonzero=" + std::to_string(nonzero), "nonzero=0",
                                            "cells=" + std::to_string(total), nonzero == 0};
                     });
        }
        run_case(rep, "whittaker/vanish/" + idx2(idx++), base_params + " d=(0,0),(1,1)",
                 "whittaker values vanish on even determinant valuations",
                 [&]() {
                     int nonzero = 0;
                     for (const auto& d : {std::vector<std::int64_t>{0, 0}, {1, 1}})
                         for (const FMat& kb : all_gl2(q))
                             if (!W.value(GMat::diag_tpow(q, d) * lift(kb)).is_zero()) ++nonzero;
                     return CaseOutcome{"nonzero=" + std::to_string(nonzero), "nonzero=0", "",
                                        nonzero == 0};
                 });
    }

    {
        const std::vector<LocalNum> xs = {LocalNum::digit(q, 1, -1),
                                          LocalNum::from_digits(q, -2, {1, 0, 1}),
                                          LocalNum::one(q)};
        int idx = 0;
        for (const LocalNum& x : xs) {
            run_case(rep, "whittaker/equivariance/n" + idx2(idx++), base_params + " x=" + x.str(),
                     "left translation by the unipotent group multiplies by the character",
                     [&]() {
                         GMat u = GMat::identity(q, 2);
                         u.at(0, 1) = x;
                         return scalar_case(W.value(u * g0), psi_N(u, M) * W.value(g0));
                     });
        }
        run_case(rep, "whittaker/equivariance/center", base_params,
                 "the central uniformizer acts by the central character",
                 [&]() {
                     const GMat z = GMat::diag_tpow(q, {1, 1});
                     return scalar_case(W.value(z * g0), pi.omega_power(1) * W.value(g0));
                 });
        run_case(rep, "whittaker/equivariance/unit", base_params,
                 "central residue units act through the inducing character",
                 [&]() {
                     GMat z = GMat::identity(q, 2);
                     z.at(0, 0) = LocalNum::digit(q, q - 1, 0);
                     z.at(1, 1) = LocalNum::digit(q, q - 1, 0);
                     const CycloScalar om = pi.model().character().value_scalar(q - 1);
                     return scalar_case(W.value(z * g0), om * W.value(g0));
                 });
        for (int i = 0; i < 2; ++i) {
            run_case(rep, "whittaker/equivariance/k" + idx2(i), base_params,
                     "right translation by the depth-one congruence subgroup fixes the function",
                     [&]() {
                         const GMat k = smp.k_level1(q);
                         return scalar_case(W.value(g0 * k), W.value(g0));
                     });
        }
    }

    // The cell table against the defining integral, then one refinement level.
    {
        std::vector<GMat> args = {GMat::diag_tpow(q, {-1, 0}),
                                  GMat::diag_tpow(q, {0, 1}) * lift(smp.residue2(q)),
                                  GMat::diag_tpow(q, {-2, -1}) * lift(smp.residue2(q)),
                                  GMat::diag_tpow(q, {1, 2}),
                                  g0};
        for (size_t i = 0; i < args.size(); ++i) {
            run_case(rep, "whittaker/oracle/" + idx2(static_cast<int>(i)), base_params,
                     "the cell table reproduces the defining integral, stably under refinement",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         const CycloScalar table = W.value(args[i]);
                         const CycloScalar coarse = integral_direct(pi, args[i], 2, budget);
                         const CycloScalar fine = integral_direct(pi, args[i], 3, budget);
                         CaseOutcome out = scalar_case(table, coarse,
                                                       "points=" + std::to_string(budget.used));
                         out.pass = out.pass && coarse == fine;
                         out.audit += out.pass ? " refined=equal" : " refined=MOVED";
                         return out;
                     });
        }
    }

    // The untranslated average vanishes identically: the integral needs the
    // torus shift to see the character (recorded as a positive vanishing claim).
    {
        const std::vector<GMat> args = {GMat::identity(q, 2), GMat::diag_tpow(q, {-1, 0})};
        for (size_t i = 0; i < args.size(); ++i) {
            run_case(rep, "whittaker/zero-average/" + idx2(static_cast<int>(i)), base_params,
                     "without the torus shift the unipotent average of the coefficient vanishes",
                     [&]() {
                         Budget budget = fresh_budget(cfg);
                         auto f = [&](const GMat& u) { return pi.matrix_coefficient(u * args[i]); };
                         const CycloScalar lhs = integrate_N_box(q, 2, pi.modulus(),
                                                                 radius_box(2, 1, 2), -1, f, budget);
                         return scalar_case(lhs, CycloScalar::zero(pi.modulus()),
                                            "points=" + std::to_string(budget.used));
                     });
        }
    }
}

// ---------------------------------------------------------------------------
// rankin-selberg: zeta shells, functional equation, conductor, twist order,
// formal degree, dilation.

void suite_rankin(const RunConfig& cfg, SuiteReport& rep) {
    const int q = cfg.q;
    const DepthZeroRep pi(q, cfg.theta);
    const unsigned M = pi.modulus();
    WhittakerFn W(pi);
    const SchwartzFn ball = SchwartzFn::unit_ball(q, 2, M);
    const SchwartzFn shell = SchwartzFn::unit_shell(q, 2, M);
    const RSSeries base = rs_series(W, ball, 2);
    const CycloScalar S = base.shells[static_cast<size_t>(base.window - 1)];
    const std::string params = "q=" + std::to_string(q) + " r=2 t=2 theta=" +
                               std::to_string(cfg.theta);

    run_case(rep, "rankin-selberg/series/monomial", params,
             "clearing one cyclotomic factor leaves a single monomial at the bottom shell",
             [&]() {
                 return CaseOutcome{base.cleared.str(), LaurentPoly::monomial(-1, S).str(),
                                    "window=" + std::to_string(base.window),
                                    base.cleared == LaurentPoly::monomial(-1, S) && !S.is_zero()};
             });
    for (std::int64_t a = -3; a <= 2; ++a) {
        run_case(rep, "rankin-selberg/series/shell" + idx2(static_cast<int>(a + 3)),
                 params + " a=" + std::to_string(a),
                 "shells vanish below the support and are constant across it",
                 [&]() {
                     const CycloScalar& v = base.shells[static_cast<size_t>(a + base.window)];
                     return scalar_case(v, a <= -2 ? CycloScalar::zero(M) : S);
                 });
    }
    if (q == 2) {
        run_case(rep, "rankin-selberg/series/oracle", params,
                 "the bottom-shell constant equals the defining double integral",
                 [&]() {
                     Budget budget = fresh_budget(cfg);
                     CycloScalar sum = CycloScalar::zero(M);
                     const GMat cell = GMat::diag_tpow(q, {-1, 0});
                     for (const FMat& kb : all_gl2(q)) {
                         const GMat g = cell * lift(kb);
                         sum += integral_direct(pi, g, 2, budget) *
                                integral_direct(pi, dual_transform(g), 2, budget);
                     }
                     const CycloScalar direct = sum * make_rational(1, q * gl_order(q, 2));
                     return scalar_case(S, direct, "points=" + std::to_string(budget.used));
                 });
    }

    // Refinement: a wider scan window re-enumerates every shell.
    {
        const std::vector<std::pair<std::string, SchwartzFn>> fns = {
            {"ball", ball},
            {"shell", shell},
            {"shell-hat", shell.fourier()},
            {"ball-up", ball.scaled(1)},
            {"ball-down", ball.scaled(-1)}};
        for (size_t i = 0; i < fns.size(); ++i) {
            run_case(rep, "rankin-selberg/refine/" + idx2(static_cast<int>(i)),
                     params + " phi=" + fns[i].first,
                     "the cleared series is invariant under widening the shell window",
                     [&]() {
                         const LaurentPoly narrow = rs_series(W, fns[i].second, 2, 6).cleared;
                         const LaurentPoly wide = rs_series(W, fns[i].second, 2, 8).cleared;
                         return CaseOutcome{narrow.str(), wide.str(), "windows=6,8",
                                            narrow == wide};
                     });
        }
    }

    run_case(rep, "rankin-selberg/conductor/main", params,
             "the functional equation holds with conductor exponent f=2 and sign +1 at t=2",
             [&]() {
                 const ConductorReport r0 = conductor_solve(base.cleared, base.cleared, 2, 2, q);
                 std::string lhs = "f=" + std::to_string(r0.f) + " eps=" + rational_str(r0.eps);
                 return CaseOutcome{lhs, "f=2 eps=1/1", "", r0.f == 2 && r0.eps == make_rational(1)};
             });
    run_case(rep, "rankin-selberg/conductor/bounds", params,
             "the conductor meets the tame bound exactly and respects the wild bound",
             [&]() {
                 const ConductorReport r0 = conductor_solve(base.cleared, base.cleared, 2, 2, q);
                 std::string lhs = "wild_ok=" + std::to_string(r0.wild_ok) +
                                   " tame_ok=" + std::to_string(r0.tame_ok) +
                                   " tame_sharp=" + std::to_string(r0.tame_sharp) +
                                   " bound_tame=" + std::to_string(r0.bound_tame);
                 return CaseOutcome{lhs, "wild_ok=1 tame_ok=1 tame_sharp=1 bound_tame=2",
                                    "bound_wild=" + std::to_string(r0.bound_wild),
                                    r0.wild_ok && r0.tame_ok && r0.tame_sharp};
             });
    run_case(rep, "rankin-selberg/conductor/shell-route", params,
             "a different test function yields the same conductor and sign",
             [&]() {
                 const LaurentPoly P1 = rs_series(W, shell, 2).cleared;
                 const LaurentPoly P1d = rs_series(W, shell.fourier(), 2).cleared;
                 const ConductorReport r1 = conductor_solve(P1, P1d, 2, 2, q);
                 std::string lhs = "f=" + std::to_string(r1.f) + " eps=" + rational_str(r1.eps);
                 return CaseOutcome{lhs, "f=2 eps=1/1", "", r1.f == 2 && r1.eps == make_rational(1)};
             });
    {
        const CuspidalModel& m = pi.model();
        const std::vector<CycloScalar>& v = m.whittaker_vector();
        const std::vector<FMat>& G = all_gl2(q);
        std::vector<std::vector<CycloScalar>> alts = {m.act(G[G.size() / 3], v),
                                                      m.act(G[G.size() / 2], v)};
        std::vector<CycloScalar> mixed = v;
        {
            const std::vector<CycloScalar> moved = m.act(G[1], v);
            for (size_t i = 0; i < mixed.size(); ++i) mixed[i] += moved[i];
        }
        alts.push_back(std::move(mixed));
        for (size_t i = 0; i < alts.size(); ++i) {
            run_case(rep, "rankin-selberg/conductor/vec" + idx2(static_cast<int>(i)), params,
                     "the conductor does not depend on the choice of model vectors",
                     [&]() {
                         try {
                             WhittakerFn Wv(pi, alts[i], v);
                             const LaurentPoly Pv = rs_series(Wv, ball, 2).cleared;
                             if (Pv.is_zero())
                                 return CaseOutcome{"series=0", "series=0",
                                                    "pair degenerate, no information", true};
                             const ConductorReport rv = conductor_solve(Pv, Pv, 2, 2, q);
                             return CaseOutcome{"f=" + std::to_string(rv.f), "f=2", "",
                                                rv.f == 2 && rv.eps == make_rational(1)};
                         } catch (const ZeroFunction&) {
                             return CaseOutcome{"function=0", "function=0",
                                                "pair degenerate, no information", true};
                         }
                     });
        }
    }

    run_case(rep, "rankin-selberg/mw/sum", params,
             "independent support scans and the equation solver satisfy M_W + m_dual = r - t - f",
             [&]() {
                 const SupportProfile s = whittaker_support(W);
                 const SupportProfile d = dual_whittaker_support(W);
                 const ConductorReport r0 = conductor_solve(base.cleared, base.cleared, 2, 2, q);
                 const std::int64_t lhs = s.hi + d.lo;
                 const std::int64_t rhs = 2 - 2 - r0.f;
                 return CaseOutcome{std::to_string(lhs), std::to_string(rhs),
                                    "f=" + std::to_string(r0.f), lhs == rhs};
             });

    run_case(rep, "rankin-selberg/degree/formula", params,
             "the conductor-side formal degree evaluates to q^2/(q+1)",
             [&]() {
                 const FormalDegreeReport fd = formal_degree(pi, 2, 2);
                 return CaseOutcome{rational_str(fd.from_conductor),
                                    rational_str(make_rational(static_cast<long>(q) * q, q + 1)),
                                    "",
                                    fd.from_conductor ==
                                        make_rational(static_cast<long>(q) * q, q + 1)};
             });
    run_case(rep, "rankin-selberg/degree/direct", params,
             "the direct orthogonality integral gives formal degree q-1",
             [&]() {
                 const FormalDegreeReport fd = formal_degree(pi, 2, 2);
                 return CaseOutcome{rational_str(fd.direct), rational_str(make_rational(q - 1)), "",
                                    fd.direct == make_rational(q - 1)};
             });
    run_case(rep, "rankin-selberg/degree/measure", params,
             "one volume rule relates the two normalizations: direct/formula = 1 - q^{-2}",
             [&]() {
                 const FormalDegreeReport fd = formal_degree(pi, 2, 2);
                 const Rational expected =
                     make_rational(static_cast<long>(q) * q - 1, static_cast<long>(q) * q);
                 return CaseOutcome{rational_str(fd.measure_ratio), rational_str(expected), "",
                                    fd.measure_ratio == expected};
             });
    run_case(rep, "rankin-selberg/degree/steinberg", params,
             "the ratio against the Steinberg degree is the positive integer 2",
             [&]() {
                 const FormalDegreeReport fd = formal_degree(pi, 2, 2);
                 return CaseOutcome{rational_str(fd.steinberg_ratio), "2/1", "",
                                    fd.steinberg_ratio == make_rational(2)};
             });

    run_case(rep, "rankin-selberg/twist/order", params,
             "the unramified twist torsion order is 2 both structurally and from the series",
             [&]() {
                 const TwistOrderReport tw = twist_order(W);
                 std::string lhs = std::to_string(tw.structural) + "," +
                                   std::to_string(tw.divisional);
                 return CaseOutcome{lhs, "2,2", "", tw.structural == 2 && tw.divisional == 2};
             });

    for (std::int64_t vl : {-1, 1, 2}) {
        run_case(rep, "rankin-selberg/scaling/v" + idx2(static_cast<int>(vl + 1)),
                 params + " v=" + std::to_string(vl),
                 "dilating the test function shifts the series by -r*v",
                 [&]() {
                     const LaurentPoly lhs = rs_series(W, ball.scaled(vl), 2).cleared;
                     const LaurentPoly rhs = base.cleared.shifted(-2 * vl);
                     return CaseOutcome{lhs.str(), rhs.str(), "", lhs == rhs};
                 });
    }
}

// ---------------------------------------------------------------------------
// theorem-main: matrix-coefficient support, the two pairings, containment.

void suite_theorem_main(const RunConfig& cfg, SuiteReport& rep) {
    const int q = cfg.q;
    const DepthZeroRep pi(q, cfg.theta);
    WhittakerFn W(pi);
    Sampler smp(cfg.seed + 3);
    const std::string params = "q=" + std::to_string(q) + " theta=" + std::to_string(cfg.theta);

    // Coefficient support across torus cells with unit sandwiches.
    {
        int idx = 0;
        int nonzero_on_zk = 0;
        const std::int64_t B = 2;
        for (std::int64_t d1 = -B; d1 <= B; ++d1)
            for (std::int64_t d2 = -B; d2 <= B; ++d2)
                for (int s = 0; s < 2; ++s) {
                    const FMat k1 = s == 0 ? FMat::identity(q, 2) : smp.residue2(q);
                    const FMat k2 = s == 0 ? FMat::identity(q, 2) : smp.residue2(q);
                    const GMat g = lift(k1) * GMat::diag_tpow(q, {d1, d2}) * lift(k2);
                    const bool on_zk = d1 == d2;
                    std::string id = "theorem-main/coeff/" + idx3(idx++);
                    run_case(rep, id,
                             params + " d=(" + std::to_string(d1) + "," + std::to_string(d2) +
                                 ") s=" + std::to_string(s),
                             "the pairing coefficient is supported on the center times the "
                             "maximal compact",
                             [&]() {
                                 const CycloScalar c = pi.matrix_coefficient(g);
                                 if (!on_zk)
                                     return scalar_case(c, CycloScalar::zero(pi.modulus()),
                                                        "off-center cell");
                                 if (!c.is_zero()) ++nonzero_on_zk;
                                 return CaseOutcome{scalar_str(c), "(recorded)",
                                                    "on-center cell, value recorded", true};
                             });
                }
        run_case(rep, "theorem-main/coeff/onsupport", params,
                 "the coefficient is not identically zero on its predicted support",
                 [&]() {
                     return CaseOutcome{"nonzero_cases=" + std::to_string(nonzero_on_zk),
                                        "nonzero_cases>=1", "", nonzero_on_zk >= 1};
                 });
        run_case(rep, "theorem-main/coeff/center-exponent", params,
                 "the central exponent is read off the determinant valuation",
                 [&]() {
                     bool ok = true;
                     for (std::int64_t m = -2; m <= 2; ++m) {
                         const GMat g = GMat::diag_tpow(q, {m, m}) * lift(smp.residue2(q));
                         const auto e = pi.zk_exponent(g);
                         ok = ok && e.has_value() && *e == m;
                     }
                     ok = ok && !pi.zk_exponent(GMat::diag_tpow(q, {0, 1})).has_value();
                     return CaseOutcome{ok ? "exponents match" : "mismatch", "exponents match", "",
                                        ok};
                 });
    }

    // The global pairing and its center-truncated form are proportional.
    {
        const CycloScalar a_id = pairing_whittaker(W, GMat::identity(q, 2));
        const CycloScalar b_id = pairing_truncated(W, GMat::identity(q, 2));
        run_case(rep, "theorem-main/pairing/ratio", params,
                 "both normalizations of the pairing are nonzero at the identity",
                 [&]() {
                     CaseOutcome out;
                     out.pass = !a_id.is_zero() && !b_id.is_zero();
                     out.lhs = scalar_str(a_id);
                     out.rhs = scalar_str(b_id);
                     if (out.pass) out.audit = "ratio=" + scalar_str(a_id * b_id.inverse());
                     return out;
                 });
        const CycloScalar ratio =
            b_id.is_zero() ? CycloScalar::zero(pi.modulus()) : a_id * b_id.inverse();
        std::vector<GMat> sweep = {GMat::diag_tpow(q, {1, 1}) * lift(smp.residue2(q)),
                                   lift(smp.residue2(q)),
                                   GMat::diag_tpow(q, {-1, -1}),
                                   GMat::diag_tpow(q, {2, 2}) * lift(smp.residue2(q)),
                                   smp.k_level1(q)};
        for (size_t i = 0; i < sweep.size(); ++i) {
            run_case(rep, "theorem-main/pairing/prop" + idx2(static_cast<int>(i)), params,
                     "the two pairings agree up to one constant fixed at the identity",
                     [&]() {
                         return scalar_case(pairing_whittaker(W, sweep[i]),
                                            ratio * pairing_truncated(W, sweep[i]));
                     });
        }
        const std::vector<std::vector<std::int64_t>> off = {{0, 1}, {1, -1}, {0, 2}};
        for (size_t i = 0; i < off.size(); ++i) {
            run_case(rep, "theorem-main/pairing/vanish" + idx2(static_cast<int>(i)),
                     params + " d=(" + std::to_string(off[i][0]) + "," +
                         std::to_string(off[i][1]) + ")",
                     "both pairings vanish off the center times the maximal compact",
                     [&]() {
                         const GMat g = GMat::diag_tpow(q, off[i]) * lift(smp.residue2(q));
                         const CycloScalar a = pairing_whittaker(W, g);
                         const CycloScalar b = pairing_truncated(W, g);
                         return CaseOutcome{scalar_str(a), scalar_str(b),
                                            "both sides must vanish",
                                            a.is_zero() && b.is_zero()};
                     });
        }
    }

    // Containment: nonzero pairing values sit inside the predicted ball.
    run_case(rep, "theorem-main/corollary/support", params,
             "nonzero pairing values sit inside the center times a bounded ball",
             [&]() {
                 const std::int64_t bound = (std::int64_t{1} << 1) + 2;  // 2^{r-1}+2 at r=2
                 std::int64_t measured = 0;
                 int nonzero = 0;
                 for (std::int64_t d1 = -2; d1 <= 2; ++d1)
                     for (std::int64_t d2 = -2; d2 <= 2; ++d2) {
                         const GMat g = GMat::diag_tpow(q, {d1, d2}) * lift(smp.residue2(q));
                         if (pairing_whittaker(W, g).is_zero()) continue;
                         ++nonzero;
                         const std::int64_t spread = d1 > d2 ? d1 - d2 : d2 - d1;
                         measured = std::max(measured, (spread + 1) / 2);
                     }
                 return CaseOutcome{"measured=" + std::to_string(measured),
                                    "measured<=" + std::to_string(bound),
                                    "nonzero=" + std::to_string(nonzero),
                                    nonzero >= 1 && measured <= bound};
             });
}

}  // namespace

long resolve_theta(int q, long theta) {
    if (theta >= 0) {
        RegularChar probe(q, theta);  // throws NotRegular if unusable
        return theta;
    }
    for (long a = 1;; ++a) {
        try {
            RegularChar probe(q, a);
            return a;
        } catch (const NotRegular&) {
        }
    }
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not key=value");
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        try {
            if (key == "q") base.q = std::stoi(val);
            else if (key == "r") base.r = std::stoi(val);
            else if (key == "n") base.n = std::stoi(val);
            else if (key == "precision") base.precision = std::stoi(val);
            else if (key == "theta") base.theta = std::stol(val);
            else if (key == "suite") base.suite = val;
            else if (key == "budget") base.budget = std::stoll(val);
            else if (key == "out") base.out = val;
            else if (key == "format") base.format = val;
            else if (key == "seed") base.seed = std::stoull(val);
            else if (key == "timings") base.timings = val == "1" || val == "true";
            else throw ConfigError("unknown config key: " + key);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value for " + key);
        }
    }
    return base;
}

RunConfig validated(RunConfig cfg) {
    if (!is_prime(cfg.q)) throw ConfigError("q must be a prime (got " + std::to_string(cfg.q) + ")");
    if (cfg.r != 2 && cfg.r != 3) throw ConfigError("r must be 2 or 3");
    if (cfg.n < 1 || cfg.n > 8) throw ConfigError("n must lie in [1, 8]");
    if (cfg.precision < 4 || cfg.precision > 64) throw ConfigError("precision must lie in [4, 64]");
    if (cfg.format != "json" && cfg.format != "tsv")
        throw ConfigError("format must be json or tsv");
    const bool known = cfg.suite == "charsum" || cfg.suite == "whittaker" ||
                       cfg.suite == "rankin-selberg" || cfg.suite == "theorem-main" ||
                       cfg.suite == "all";
    if (!known) throw ConfigError("unknown suite: " + cfg.suite);
    if (cfg.suite != "charsum" && cfg.r != 2)
        throw ConfigError("representation suites require r=2");
    if (cfg.budget < minimal_enumeration(cfg.q, cfg.r, cfg.n))
        throw ConfigError("budget below the minimal enumeration for these parameters");
    if (cfg.r == 2) {
        try {
            cfg.theta = resolve_theta(cfg.q, cfg.theta);
        } catch (const NotRegular& e) {
            throw ConfigError(std::string("theta exponent is not regular: ") + e.what());
        }
    }
    return cfg;
}

SuiteReport run_suite(const RunConfig& cfg0) {
    const RunConfig cfg = validated(cfg0);
    SuiteReport rep;
    rep.suite = cfg.suite;
    rep.config = config_line(cfg);
    if (cfg.suite == "charsum" || cfg.suite == "all") suite_charsum(cfg, rep);
    if (cfg.suite == "whittaker" || cfg.suite == "all") suite_whittaker(cfg, rep);
    if (cfg.suite == "rankin-selberg" || cfg.suite == "all") suite_rankin(cfg, rep);
    if (cfg.suite == "theorem-main" || cfg.suite == "all") suite_theorem_main(cfg, rep);
    std::sort(rep.cases.begin(), rep.cases.end(),
              [](const CaseRecord& a, const CaseRecord& b) { return a.id < b.id; });
    return rep;
}

std::string dump_char_table(int q, long theta) {
    const RegularChar th(q, resolve_theta(q, theta));
    std::ostringstream out;
    out << "index\ttrace\tdet\tchi\n";
    const std::vector<FMat>& G = all_gl2(q);
    for (size_t i = 0; i < G.size(); ++i) {
        const FMat& g = G[i];
        const int tr = (g.at(0, 0) + g.at(1, 1)) % q;
        const int det = ((g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0)) % q + q) % q;
        out << i << '\t' << tr << '\t' << det << '\t'
            << scalar_str(cuspidal_character_value(th, g)) << "\n";
    }
    return out.str();
}

std::string dump_support(int q, long theta) {
    const DepthZeroRep pi(q, resolve_theta(q, theta));
    WhittakerFn W(pi);
    std::ostringstream out;
    out << "shell\tnonzero\tdual_nonzero\tcells\n";
    const std::vector<FMat>& G = all_gl2(q);
    for (std::int64_t a = -4; a <= 4; ++a) {
        int nz = 0, dnz = 0;
        for (const FMat& kb : G) {
            const GMat g = GMat::diag_tpow(q, {a, 0}) * lift(kb);
            if (!W.value(g).is_zero()) ++nz;
            if (!W.dual_value(g).is_zero()) ++dnz;
        }
        out << a << '\t' << nz << '\t' << dnz << '\t' << G.size() << "\n";
    }
    return out.str();
}

}  // namespace whitcusp
