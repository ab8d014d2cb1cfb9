#include "whitcusp/charsum.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <memory>

#include "whitcusp/errors.hpp"

namespace whitcusp {

std::vector<std::pair<int, int>> superdiag_coords(int r) {
    if (r < 2 || r > 3) throw UnsupportedRank("unipotent coordinates require r in {2,3}");
    if (r == 2) return {{0, 1}};
    return {{0, 1}, {0, 2}, {1, 2}};
}

std::vector<NBoxRange> torus_box(int r, int n, std::int64_t gran) {
    std::vector<NBoxRange> box;
    for (auto [i, j] : superdiag_coords(r)) {
        const std::int64_t lo = static_cast<std::int64_t>(n) * ((1LL << i) - (1LL << j));
        box.push_back({lo, std::max(gran, lo)});
    }
    return box;
}

std::vector<NBoxRange> radius_box(int r, std::int64_t R, std::int64_t gran) {
    std::vector<NBoxRange> box;
    for (size_t c = 0; c < superdiag_coords(r).size(); ++c) box.push_back({-R, std::max(gran, -R)});
    return box;
}

namespace {

// Saturating: an oversized box should trip the budget guard, not overflow.
std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / b) return std::numeric_limits<std::int64_t>::max();
        r *= b;
    }
    return r;
}

}  // namespace

CycloScalar integrate_N_box(int q, int r, unsigned M, const std::vector<NBoxRange>& box, int psi_sign,
                            const std::function<CycloScalar(const GMat&)>& f, Budget& budget) {
    const auto coords = superdiag_coords(r);
    if (box.size() != coords.size()) throw std::logic_error("integrate_N_box: box/coordinate mismatch");
    std::int64_t total_digits = 0, gran_sum = 0;
    for (const auto& b : box) {
        if (b.gran < b.lo) throw std::logic_error("integrate_N_box: gran below lo");
        total_digits += b.gran - b.lo;
        gran_sum += b.gran;
    }
    const std::int64_t points = ipow(q, total_digits);
    budget.charge(points);

    std::vector<int> digits(static_cast<size_t>(total_digits), 0);
    CycloScalar acc = CycloScalar::zero(M);
    for (std::int64_t p = 0;; ++p) {
        GMat u = GMat::identity(q, r);
        size_t pos = 0;
        for (size_t c = 0; c < coords.size(); ++c) {
            const auto nd = static_cast<size_t>(box[c].gran - box[c].lo);
            std::vector<int> ds(digits.begin() + static_cast<long>(pos),
                                digits.begin() + static_cast<long>(pos + nd));
            u.at(coords[c].first, coords[c].second) = LocalNum::from_digits(q, box[c].lo, ds);
            pos += nd;
        }
        const CycloScalar val = f(u);
        if (!val.is_zero()) acc += val * psi_N(u, M, psi_sign);
        // odometer
        size_t k = 0;
        while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    return acc * q_power(q, -gran_sum);
}

CorpusFn corpus_indicator_K(int q, int r) {
    (void)q;
    (void)r;
    return CorpusFn{"ind_K", 0, 0,
                    [](const GMat& g) { return in_K(g) ? CycloScalar::from_rational(1, 1) : CycloScalar(); }};
}

CorpusFn corpus_indicator_K_level(int q, int r, int j) {
    (void)q;
    (void)r;
    return CorpusFn{"ind_K" + std::to_string(j), j, 0, [j](const GMat& g) {
                        return in_K_level(g, j) ? CycloScalar::from_rational(1, 1) : CycloScalar();
                    }};
}

CorpusFn corpus_indicator_cartan(int q, int r, const std::vector<std::int64_t>& d) {
    (void)q;
    std::vector<std::int64_t> ds = d;
    std::sort(ds.begin(), ds.end(), std::greater<std::int64_t>());
    if (static_cast<int>(ds.size()) != r) throw std::logic_error("cartan indicator: wrong pattern length");
    std::int64_t R = 0;
    for (auto e : ds) R = std::max<std::int64_t>(R, std::llabs(e));
    std::string name = "ind_cartan";
    for (auto e : ds) name += "_" + std::to_string(e);
    return CorpusFn{name, 0, static_cast<int>(R), [ds](const GMat& g) {
                        return elementary_divisors(g) == ds ? CycloScalar::from_rational(1, 1)
                                                            : CycloScalar();
                    }};
}

std::int64_t cartan_radius(const GMat& g) {
    std::int64_t R = 0;
    for (auto e : elementary_divisors(g)) R = std::max<std::int64_t>(R, std::llabs(e));
    return R;
}

std::vector<GMat> double_coset_reps(int q, int r, int m, const GMat& g0, Budget& budget) {
    if (m < 1) throw std::logic_error("double_coset_reps: level must be >= 1");
    const std::int64_t R = cartan_radius(g0);
    // Congruence generators deep enough to move every coset: past exponent
    // m + 2R conjugation through any element of the coset lands back in K(m).
    std::vector<GMat> gens;
    for (std::int64_t a = m; a < m + 2 * R + 1; ++a)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int c = 1; c < q; ++c) {
                    GMat s = GMat::identity(q, r);
                    s.at(i, j) = s.at(i, j) + LocalNum::digit(q, c, a);
                    gens.push_back(s);
                }

    std::vector<GMat> reps;
    std::vector<GMat> reps_inv;
    std::map<std::string, std::vector<size_t>> buckets;
    auto try_insert = [&](const GMat& h) {
        const std::string key = lattice_key(h);
        auto& bucket = buckets[key];
        for (size_t idx : bucket)
            if (in_K_level(reps_inv[idx] * h, m)) return false;
        bucket.push_back(reps.size());
        reps.push_back(h);
        reps_inv.push_back(h.inverse());
        return true;
    };
    try_insert(g0);
    std::deque<size_t> frontier{0};
    while (!frontier.empty()) {
        const size_t cur = frontier.front();
        frontier.pop_front();
        const GMat h = reps[cur];
        budget.charge(static_cast<std::int64_t>(gens.size()) * 2);
        for (const GMat& s : gens) {
            if (try_insert(s * h)) frontier.push_back(reps.size() - 1);
            if (try_insert(h * s)) frontier.push_back(reps.size() - 1);
        }
    }
    return reps;
}

std::int64_t double_coset_index_diag(int q, const std::vector<std::int64_t>& d) {
    std::int64_t e = 0;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = 0; j < d.size(); ++j)
            if (d[i] > d[j]) e += d[i] - d[j];
    return ipow(q, e);
}

CorpusFn corpus_indicator_double_coset(int q, int r, int m, const GMat& g0, Budget& budget) {
    auto reps = double_coset_reps(q, r, m, g0, budget);
    auto reps_inv = std::make_shared<std::vector<GMat>>();
    for (const auto& h : reps) reps_inv->push_back(h.inverse());
    std::string name = "ind_dc_m" + std::to_string(m) + "_";
    for (auto e : elementary_divisors(g0)) name += std::to_string(e) + ".";
    return CorpusFn{name, m, static_cast<int>(cartan_radius(g0)), [reps_inv, m](const GMat& g) {
                        for (const auto& hi : *reps_inv)
                            if (in_K_level(hi * g, m)) return CycloScalar::from_rational(1, 1);
                        return CycloScalar();
                    }};
}

std::vector<CorpusFn> build_corpus(int q, int r, int m, Budget& budget) {
    std::vector<CorpusFn> fns;
    fns.push_back(corpus_indicator_K(q, r));
    fns.push_back(corpus_indicator_K_level(q, r, 1));
    fns.push_back(corpus_indicator_K_level(q, r, 2));
    auto pattern = [&](std::vector<std::int64_t> d) { fns.push_back(corpus_indicator_cartan(q, r, d)); };
    if (r == 2) {
        pattern({1, 0});
        pattern({1, 1});
        pattern({1, -1});
        pattern({0, -1});
        pattern({-1, -1});
    } else {
        pattern({1, 0, 0});
        pattern({1, 1, 0});
        pattern({1, 0, -1});
        pattern({0, 0, -1});
        pattern({1, 1, 1});
    }
    const auto e1 = std::vector<std::int64_t>(static_cast<size_t>(r), 0);
    GMat a1 = GMat::diag_tpow(q, [&] {
        auto v = e1;
        v[0] = 1;
        return v;
    }());
    fns.push_back(corpus_indicator_double_coset(q, r, std::max(m, 1), a1, budget));
    GMat a2 = GMat::weyl_long(q, r) * a1;  // non-diagonal representative of the same Cartan cell
    fns.push_back(corpus_indicator_double_coset(q, r, std::max(m, 1), a2, budget));
    return fns;
}

CycloScalar psi_integral_torus(const CorpusFn& f, int q, int r, int n, unsigned M, Budget& budget) {
    const std::int64_t gran = std::max(f.level_m, 0);
    return integrate_N_box(q, r, M, torus_box(r, n, gran), +1, f.eval, budget);
}

CycloScalar psi_integral_full(const CorpusFn& f, int q, int r, unsigned M, Budget& budget) {
    const std::int64_t gran = std::max(f.level_m, 0);
    return integrate_N_box(q, r, M, radius_box(r, f.radius_R, gran), +1, f.eval, budget);
}

CycloScalar kernel_transform(const CorpusFn& f, const GMat& x, const GMat& y, unsigned M,
                             Budget& budget) {
    const int q = x.q(), r = x.r();
    const std::int64_t Ex = cartan_radius(x), Ey = cartan_radius(y);
    const std::int64_t R = f.radius_R + Ex + Ey;
    const GMat xinv = x.inverse();
    auto integrand = [&](const GMat& u) { return f.eval(xinv * u * y); };
    // Granularity: translation by x, y smears the K(m)-invariance by their
    // Cartan radii; validate the bound by one refinement step.
    std::int64_t gran = std::max<std::int64_t>(f.level_m, 0) + Ex + Ey;
    for (int attempt = 0; attempt < 3; ++attempt) {
        CycloScalar a = integrate_N_box(q, r, M, radius_box(r, R, gran), +1, integrand, budget);
        CycloScalar b = integrate_N_box(q, r, M, radius_box(r, R, gran + 1), +1, integrand, budget);
        if (a == b) return a;
        gran += 1;
    }
    throw std::logic_error("kernel_transform: granularity failed to stabilize");
}

bool in_V_torus(int r, int n, const std::vector<LocalNum>& c) {
    const std::vector<std::int64_t> lambda = aux_lattice_bounds(r, n);
    for (int i = 0; i + 1 < r; ++i)
        if (!c[static_cast<size_t>(i)].val_at_least(-lambda[static_cast<size_t>(i)])) return false;
    return true;
}

CycloScalar aux_conjugation_average(int q, int r, int n, const std::vector<LocalNum>& c, unsigned M,
                                    Budget& budget) {
    if (static_cast<int>(c.size()) != r - 1) throw std::logic_error("aux average: need r-1 coordinates");
    const int k = r - 1;
    const std::vector<std::int64_t> lambda = aux_lattice_bounds(r, n);
    auto neg_val = [](const LocalNum& x) -> std::int64_t {
        // -val(x), with exact zero contributing no constraint
        if (x.has_digits()) return -x.val();
        if (x.is_exact_zero()) return INT64_MIN / 2;
        throw PrecisionExhausted("aux average: coordinate valuation undetermined");
    };
    std::vector<std::int64_t> gran(static_cast<size_t>(k));
    for (int j = 0; j + 1 < k; ++j)
        gran[static_cast<size_t>(j)] = std::max(lambda[static_cast<size_t>(j)], neg_val(c[static_cast<size_t>(j)]));
    {
        std::int64_t g = std::max(lambda[static_cast<size_t>(k - 1)], neg_val(c[static_cast<size_t>(k - 1)]));
        for (int i = 0; i + 1 < k; ++i)
            g = std::max(g, -(c[static_cast<size_t>(i)].has_digits()
                                  ? c[static_cast<size_t>(i)].val() + lambda[static_cast<size_t>(i)]
                                  : INT64_MAX / 2));
        gran[static_cast<size_t>(k - 1)] = g;
    }

    std::int64_t total_digits = 0, gran_sum = 0, lambda_sum = 0;
    for (int j = 0; j < k; ++j) {
        total_digits += gran[static_cast<size_t>(j)] - lambda[static_cast<size_t>(j)];
        gran_sum += gran[static_cast<size_t>(j)];
        lambda_sum += lambda[static_cast<size_t>(j)];
    }
    budget.charge(ipow(q, total_digits));

    const LocalNum one = LocalNum::one(q);
    std::vector<int> digits(static_cast<size_t>(total_digits), 0);
    CycloScalar acc = CycloScalar::zero(M);
    for (;;) {
        std::vector<LocalNum> alpha(static_cast<size_t>(k));
        size_t pos = 0;
        for (int j = 0; j < k; ++j) {
            const auto nd = static_cast<size_t>(gran[static_cast<size_t>(j)] - lambda[static_cast<size_t>(j)]);
            std::vector<int> ds(digits.begin() + static_cast<long>(pos),
                                digits.begin() + static_cast<long>(pos + nd));
            alpha[static_cast<size_t>(j)] = LocalNum::from_digits(q, lambda[static_cast<size_t>(j)], ds);
            pos += nd;
        }
        LocalNum s = LocalNum::zero(q);
        for (int i = 0; i < k; ++i) s = s + c[static_cast<size_t>(i)] * alpha[static_cast<size_t>(i)];
        const LocalNum corner =
            c[static_cast<size_t>(k - 1)] - s * (one + alpha[static_cast<size_t>(k - 1)]).inverse();
        acc += psi_additive(corner, M);
        size_t kk = 0;
        while (kk < digits.size() && ++digits[kk] == q) digits[kk++] = 0;
        if (kk == digits.size()) break;
    }
    // cell volume / box volume
    return acc * q_power(q, lambda_sum - gran_sum);
}

CycloScalar aux_conjugation_reference(int q, int r, int n, const std::vector<LocalNum>& c, unsigned M) {
    (void)q;
    if (!in_V_torus(r, n, c)) return CycloScalar::zero(M);
    return psi_additive(c[static_cast<size_t>(r - 2)], M);
}

std::vector<std::int64_t> aux_lattice_bounds(int r, int n) {
    std::vector<std::int64_t> lambda(static_cast<size_t>(r - 1));
    for (int j = 0; j + 1 < r; ++j)
        lambda[static_cast<size_t>(j)] = static_cast<std::int64_t>(n) * ((1LL << (r - 1)) - (1LL << j));
    return lambda;
}

GMat aux_embedding(int q, int r, const std::vector<LocalNum>& alpha) {
    if (static_cast<int>(alpha.size()) != r - 1) throw std::logic_error("aux embedding: need r-1 coordinates");
    GMat x = GMat::identity(q, r);
    for (int j = 0; j + 1 < r; ++j) x.at(r - 2, j) = alpha[static_cast<size_t>(j)];
    x.at(r - 2, r - 2) = alpha[static_cast<size_t>(r - 2)] + LocalNum::one(q);
    x.at(r - 2, r - 1) = LocalNum::zero(q);
    return x;
}

bool in_embedded_K_level(const GMat& g, int n) {
    const int r = g.r();
    // Exact block shape first: last row and column must be e_r on the nose.
    for (int j = 0; j + 1 < r; ++j)
        if (!g.at(r - 1, j).is_exact_zero() || !g.at(j, r - 1).is_exact_zero()) return false;
    if (!(g.at(r - 1, r - 1) - LocalNum::one(g.q())).is_exact_zero()) return false;
    return in_K_level(g, n);
}

EmbeddingMembership aux_embedding_membership(int q, int r, int n, const std::vector<LocalNum>& alpha,
                                             const GMat& u) {
    const GMat x = aux_embedding(q, r, alpha);
    const GMat conj = u.inverse() * x * u;
    return EmbeddingMembership{in_embedded_K_level(x, n), in_embedded_K_level(conj, n)};
}

}  // namespace whitcusp
