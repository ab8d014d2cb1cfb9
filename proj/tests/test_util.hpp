#pragma once

#include <random>

#include "whitcusp/gmat.hpp"
#include "whitcusp/subgroups.hpp"

namespace whitcusp::testutil {

// Entries of a - b all have valuation >= level (agreement modulo t^level).
inline bool agree_mod(const GMat& a, const GMat& b, std::int64_t level) {
    for (int i = 0; i < a.r(); ++i)
        for (int j = 0; j < a.r(); ++j)
            if (!(a.at(i, j) - b.at(i, j)).val_at_least(level)) return false;
    return true;
}

inline LocalNum random_exact(int q, std::mt19937_64& rng, std::int64_t vmin = -2, std::int64_t vmax = 2,
                             int window = 4) {
    std::int64_t v = vmin + static_cast<std::int64_t>(rng() % static_cast<unsigned long>(vmax - vmin + 1));
    std::vector<int> ds;
    for (int i = 0; i < window; ++i) ds.push_back(static_cast<int>(rng() % static_cast<unsigned long>(q)));
    return LocalNum::from_digits(q, v, ds);
}

inline GMat random_invertible(int q, int r, std::mt19937_64& rng) {
    for (;;) {
        GMat g(q, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) g.at(i, j) = random_exact(q, rng);
        if (g.det().has_digits()) return g;  // exact entries: det exact, nonzero iff invertible
    }
}

inline FMat random_residue_invertible(int q, int r, std::mt19937_64& rng) {
    for (;;) {
        FMat m;
        m.q = q;
        m.r = r;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m.at(i, j) = static_cast<int>(rng() % static_cast<unsigned long>(q));
        if (m.det() != 0) return m;
    }
}

// Random element of K = GL_r(O): invertible residue plus t * integral tail.
inline GMat random_K(int q, int r, std::mt19937_64& rng, int tail_window = 3) {
    GMat g = lift(random_residue_invertible(q, r, rng));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::vector<int> ds;
            for (int w = 0; w < tail_window; ++w) ds.push_back(static_cast<int>(rng() % static_cast<unsigned long>(q)));
            g.at(i, j) = g.at(i, j) + LocalNum::from_digits(q, 1, ds);
        }
    return g;
}

// Random element of K(m): I + t^m * integral matrix.
inline GMat random_K_level(int q, int r, int m, std::mt19937_64& rng, int tail_window = 3) {
    GMat g = GMat::identity(q, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::vector<int> ds;
            for (int w = 0; w < tail_window; ++w) ds.push_back(static_cast<int>(rng() % static_cast<unsigned long>(q)));
            g.at(i, j) = g.at(i, j) + LocalNum::from_digits(q, m, ds);
        }
    return g;
}

}  // namespace whitcusp::testutil
