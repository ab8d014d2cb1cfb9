#include "whitcusp/subgroups.hpp"

#include <algorithm>
#include <sstream>

#include "whitcusp/errors.hpp"

namespace whitcusp {

namespace {

void col_swap(GMat& m, int j1, int j2) {
    if (j1 == j2) return;
    for (int i = 0; i < m.r(); ++i) std::swap(m.at(i, j1), m.at(i, j2));
}

void row_swap(GMat& m, int i1, int i2) {
    if (i1 == i2) return;
    for (int j = 0; j < m.r(); ++j) std::swap(m.at(i1, j), m.at(i2, j));
}

void col_scale(GMat& m, int j, const LocalNum& s) {
    for (int i = 0; i < m.r(); ++i) m.at(i, j) = m.at(i, j) * s;
}

void row_scale(GMat& m, int i, const LocalNum& s) {
    for (int j = 0; j < m.r(); ++j) m.at(i, j) = m.at(i, j) * s;
}

// col_jdst += c * col_jsrc
void col_axpy(GMat& m, int jdst, int jsrc, const LocalNum& c) {
    for (int i = 0; i < m.r(); ++i) m.at(i, jdst) = m.at(i, jdst) + c * m.at(i, jsrc);
}

// row_idst += c * row_isrc
void row_axpy(GMat& m, int idst, int isrc, const LocalNum& c) {
    for (int j = 0; j < m.r(); ++j) m.at(idst, j) = m.at(idst, j) + c * m.at(isrc, j);
}

// Index of an entry of provably minimal valuation among the given cells.
// Cells with undetermined valuation must be bounded below by the winner.
template <typename Cells>
int choose_pivot(const Cells& cells) {
    std::int64_t vmin = 0;
    int best = -1;
    bool any_exact_nonzero = false;
    for (size_t idx = 0; idx < cells.size(); ++idx) {
        const LocalNum& e = *cells[idx].second;
        if (!e.has_digits()) continue;
        any_exact_nonzero = true;
        if (best < 0 || e.val() < vmin) {
            vmin = e.val();
            best = static_cast<int>(idx);
        }
    }
    if (best < 0) {
        bool all_exact_zero = true;
        for (const auto& c : cells)
            if (!c.second->is_exact_zero()) all_exact_zero = false;
        if (all_exact_zero) throw DivisionByZero("pivot search: matrix is singular");
        throw PrecisionExhausted("pivot search: no entry with determined valuation");
    }
    (void)any_exact_nonzero;
    for (const auto& c : cells) {
        const LocalNum& e = *c.second;
        if (e.has_digits() || e.is_exact_zero()) continue;
        if (e.prec() < vmin)
            throw PrecisionExhausted("pivot search: undetermined entry could undercut pivot");
    }
    return best;
}

// Digits of x at exponents >= e, shifted down by e (the "integral part" of x/t^e).
LocalNum high_part(const LocalNum& x, std::int64_t e, int q) {
    std::int64_t prec = x.is_exact() ? LocalNum::kExactPrec : x.prec() - e;
    if (!x.has_digits()) {
        return LocalNum::from_digits(q, 0, {}, prec);
    }
    std::int64_t lo = std::max(x.val(), e);
    std::vector<int> ds;
    std::int64_t hi = x.is_exact() ? x.val() + LocalNum::kDigitCap : x.prec();
    for (std::int64_t ee = lo; ee < hi; ++ee) ds.push_back(x.digit_at(ee));
    return LocalNum::from_digits(q, lo - e, ds, prec);
}

}  // namespace

IwasawaNAK iwasawa(const GMat& g) {
    const int q = g.q(), r = g.r();
    GMat work = g;
    GMat k = GMat::identity(q, r);
    std::vector<std::int64_t> exps(static_cast<size_t>(r), 0);
    for (int i = r - 1; i >= 0; --i) {
        std::vector<std::pair<int, const LocalNum*>> cells;
        for (int j = 0; j <= i; ++j) cells.emplace_back(j, &work.at(i, j));
        const int jp = cells[static_cast<size_t>(choose_pivot(cells))].first;
        col_swap(work, jp, i);
        row_swap(k, jp, i);
        const std::int64_t v = work.at(i, i).val();
        exps[static_cast<size_t>(i)] = v;
        const LocalNum unit = work.at(i, i).shifted(-v);
        col_scale(work, i, unit.inverse());
        row_scale(k, i, unit);
        for (int j = 0; j < i; ++j) {
            const LocalNum c = work.at(i, j) / work.at(i, i);
            col_axpy(work, j, i, -c);
            row_axpy(k, i, j, c);
        }
    }
    // work is upper triangular with diagonal t^exps (to precision); peel the torus.
    GMat u = GMat::identity(q, r);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) u.at(i, j) = work.at(i, j).shifted(-exps[static_cast<size_t>(j)]);
    return IwasawaNAK{u, exps, k};
}

std::vector<std::int64_t> elementary_divisors(const GMat& g) {
    const int q = g.q(), r = g.r();
    GMat work = g;
    std::vector<std::int64_t> exps(static_cast<size_t>(r), 0);
    for (int s = 0; s < r; ++s) {
        std::vector<std::pair<std::pair<int, int>, const LocalNum*>> cells;
        for (int i = s; i < r; ++i)
            for (int j = s; j < r; ++j) cells.push_back({{i, j}, &work.at(i, j)});
        const auto [pi, pj] = cells[static_cast<size_t>(choose_pivot(cells))].first;
        row_swap(work, pi, s);
        col_swap(work, pj, s);
        exps[static_cast<size_t>(s)] = work.at(s, s).val();
        for (int x = s + 1; x < r; ++x) {
            const LocalNum c = work.at(x, s) / work.at(s, s);
            row_axpy(work, x, s, -c);
        }
        for (int y = s + 1; y < r; ++y) {
            const LocalNum c = work.at(s, y) / work.at(s, s);
            col_axpy(work, y, s, -c);
        }
    }
    std::sort(exps.begin(), exps.end(), std::greater<std::int64_t>());
    return exps;
}

GMat hnf_col(const GMat& g) {
    const int q = g.q(), r = g.r();
    GMat work = g;
    std::vector<std::int64_t> exps(static_cast<size_t>(r), 0);
    for (int i = r - 1; i >= 0; --i) {
        std::vector<std::pair<int, const LocalNum*>> cells;
        for (int j = 0; j <= i; ++j) cells.emplace_back(j, &work.at(i, j));
        const int jp = cells[static_cast<size_t>(choose_pivot(cells))].first;
        col_swap(work, jp, i);
        const std::int64_t v = work.at(i, i).val();
        exps[static_cast<size_t>(i)] = v;
        col_scale(work, i, work.at(i, i).shifted(-v).inverse());
        for (int j = 0; j < i; ++j) {
            const LocalNum c = work.at(i, j) / work.at(i, i);
            col_axpy(work, j, i, -c);
        }
    }
    // Reduce above-pivot entries mod t^e_i, bottom pivot first.
    for (int i = r - 1; i >= 0; --i)
        for (int j = i + 1; j < r; ++j) {
            const LocalNum c = high_part(work.at(i, j), exps[static_cast<size_t>(i)], q);
            col_axpy(work, j, i, -c);
        }
    return work;
}

std::string lattice_key(const GMat& g) {
    GMat h = hnf_col(g);
    const int r = h.r();
    std::ostringstream os;
    for (int i = 0; i < r; ++i) {
        const std::int64_t e = h.at(i, i).val();
        os << e << ";";
        for (int j = i + 1; j < r; ++j) {
            os << "(";
            const LocalNum& x = h.at(i, j);
            if (x.has_digits()) {
                for (std::int64_t ee = x.val(); ee < e; ++ee) os << ee << ":" << x.digit_at(ee) << ",";
            }
            os << ")";
        }
        os << "|";
    }
    return os.str();
}

bool in_K(const GMat& g) {
    for (int i = 0; i < g.r(); ++i)
        for (int j = 0; j < g.r(); ++j)
            if (!g.at(i, j).val_at_least(0)) return false;
    const LocalNum d = g.det();
    if (d.is_exact_zero()) return false;
    if (d.has_digits()) return d.val() == 0;
    if (d.prec() >= 1) return false;  // det == 0 mod t: not a unit
    throw PrecisionExhausted("in_K: determinant unit test undecidable");
}

bool in_K_level(const GMat& g, int m) {
    if (m == 0) return in_K(g);
    for (int i = 0; i < g.r(); ++i)
        for (int j = 0; j < g.r(); ++j) {
            LocalNum e = g.at(i, j);
            if (i == j) e = e - LocalNum::one(g.q());
            if (!e.val_at_least(m)) return false;
        }
    return true;
}

bool in_N(const GMat& g) {
    for (int i = 0; i < g.r(); ++i)
        for (int j = 0; j <= i; ++j) {
            LocalNum e = g.at(i, j);
            if (i == j) e = e - LocalNum::one(g.q());
            if (e.is_exact_zero()) continue;
            if (e.has_digits()) return false;
            throw PrecisionExhausted("in_N: lower/diagonal entry only known to be small");
        }
    return true;
}

bool in_N_torus(const GMat& u, const std::vector<std::int64_t>& exps) {
    for (int i = 0; i < u.r(); ++i)
        for (int j = i + 1; j < u.r(); ++j)
            if (!u.at(i, j).val_at_least(exps[static_cast<size_t>(i)] - exps[static_cast<size_t>(j)]))
                return false;
    return true;
}

CycloScalar psi_N(const GMat& u, unsigned M, int sign) {
    LocalNum s = LocalNum::zero(u.q());
    for (int i = 0; i + 1 < u.r(); ++i) s = s + u.at(i, i + 1);
    if (sign < 0) s = -s;
    return psi_additive(s, M);
}

Rational delta_B(int q, const std::vector<std::int64_t>& exps) {
    long e = 0;
    const int r = static_cast<int>(exps.size());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) e += exps[static_cast<size_t>(j)] - exps[static_cast<size_t>(i)];
    return q_power(q, e);
}

Rational vol_N_torus(int q, const std::vector<std::int64_t>& exps) { return delta_B(q, exps); }

Rational vol_N_cap_level(int q, int r, int m) {
    return q_power(q, -static_cast<long>(m) * r * (r - 1) / 2);
}

Rational vol_K_cap_conj(int q, const std::vector<std::int64_t>& exps) {
    long e = 0;
    const int r = static_cast<int>(exps.size());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            e += std::llabs(exps[static_cast<size_t>(i)] - exps[static_cast<size_t>(j)]);
    return q_power(q, -e);
}

}  // namespace whitcusp
