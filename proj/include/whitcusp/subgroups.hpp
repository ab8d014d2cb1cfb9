#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "whitcusp/gmat.hpp"
#include "whitcusp/rational.hpp"

namespace whitcusp {

// g = u * diag(t^exps) * k with u upper unitriangular, k in K = GL_r(O).
struct IwasawaNAK {
    GMat u;
    std::vector<std::int64_t> exps;
    GMat k;
};

IwasawaNAK iwasawa(const GMat& g);

// Cartan invariants: K g K = K diag(t^d) K, exponents sorted non-increasing.
std::vector<std::int64_t> elementary_divisors(const GMat& g);

// Canonical column Hermite form of the lattice g*O^r: upper triangular,
// pivots t^e_i, above-pivot entries reduced mod t^e_i.
GMat hnf_col(const GMat& g);
// Deterministic digest of hnf_col(g) truncated at a fixed depth; equal for
// equal cosets gK, used to bucket coset representatives.
std::string lattice_key(const GMat& g);

// Membership predicates; throw PrecisionExhausted when undecidable.
bool in_K(const GMat& g);
bool in_K_level(const GMat& g, int m);       // g == I mod t^m (m >= 1); m == 0 means K
bool in_N(const GMat& g);                    // upper unitriangular, exact shape
// u in N with val(u_ij) >= a_i - a_j for the torus diag(t^a): the conjugate
// t^-1 u t then has integral entries.
bool in_N_torus(const GMat& u, const std::vector<std::int64_t>& exps);

// psi_N(u) = psi(sum of superdiagonal entries); sign -1 gives psi_N(u)^{-1}.
CycloScalar psi_N(const GMat& u, unsigned M, int sign = +1);

// delta_B(diag(t^a)) = prod_{i<j} |t^a_i / t^a_j| = q^(sum_{i<j} (a_j - a_i)).
Rational delta_B(int q, const std::vector<std::int64_t>& exps);
// vol(N(t-hat)) relative to vol(N(O)) = 1; equals delta_B.
Rational vol_N_torus(int q, const std::vector<std::int64_t>& exps);
// vol(N cap K(m)) = q^(-m r(r-1)/2)
Rational vol_N_cap_level(int q, int r, int m);
// vol(K cap a K a^{-1}) / vol(K) = q^(-sum_{i<j} |d_i - d_j|) for a = diag(t^d).
Rational vol_K_cap_conj(int q, const std::vector<std::int64_t>& exps);

}  // namespace whitcusp
