#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "whitcusp/gmat.hpp"
#include "whitcusp/subgroups.hpp"

namespace whitcusp {

// Enumeration work guard shared by the exact integrators.
struct Budget {
    std::int64_t limit = 10'000'000;
    std::int64_t used = 0;
    void charge(std::int64_t n) {
        if (n > limit - used)
            throw BudgetExceeded("enumeration budget exceeded: " + std::to_string(used) + " + " +
                                 std::to_string(n) + " > " + std::to_string(limit));
        used += n;
    }
};

// Superdiagonal coordinates of N in row-major order; r <= 3.
std::vector<std::pair<int, int>> superdiag_coords(int r);

// One unipotent coordinate: digits at exponents in [lo, gran) are enumerated,
// and the integrand must be constant on cells x + t^gran O.
struct NBoxRange {
    std::int64_t lo;
    std::int64_t gran;
};

// Box of N(t-hat) for t-hat = diag(t^(n 2^i)): lo_ij = n(2^i - 2^j) < 0.
std::vector<NBoxRange> torus_box(int r, int n, std::int64_t gran);
// Box {val u_ij >= -R} containing the N-support of any ED-ball(R) function.
std::vector<NBoxRange> radius_box(int r, std::int64_t R, std::int64_t gran);

// Exact integral over the box of f(u) * psi_N(u)^sign, u = I + sum x_c E_(ic,jc),
// computed as a finite digit sum with cell volume q^(-sum gran). Correct whenever
// f * psi_N^sign is invariant under each coordinate perturbation of valuation
// >= gran (the granularity hypothesis; see CorpusFn::level_m).
CycloScalar integrate_N_box(int q, int r, unsigned M, const std::vector<NBoxRange>& box, int psi_sign,
                            const std::function<CycloScalar(const GMat&)>& f, Budget& budget);

// Compactly supported function on G, invariant under K(level_m) on both sides
// (level 0 = bi-K-invariant), supported where elementary divisors lie in
// [-radius_R, radius_R]. Those two facts give the box and granularity for the
// exact integrators.
struct CorpusFn {
    std::string name;
    int level_m = 0;
    int radius_R = 0;
    std::function<CycloScalar(const GMat&)> eval;
};

CorpusFn corpus_indicator_K(int q, int r);
CorpusFn corpus_indicator_K_level(int q, int r, int j);
CorpusFn corpus_indicator_cartan(int q, int r, const std::vector<std::int64_t>& d);
// 1 on K(m) g0 K(m); reps enumerated once up front.
CorpusFn corpus_indicator_double_coset(int q, int r, int m, const GMat& g0, Budget& budget);
// Indicator members only (the representation-theoretic member is added by the
// supercuspidal layer); at least ten per (q, r) with radius <= 1.
std::vector<CorpusFn> build_corpus(int q, int r, int m, Budget& budget);

// Left K(m)-cosets of K(m) g0 K(m): closure of g0 under both-side multiplication
// by congruence generators, deduplicated through lattice keys.
std::vector<GMat> double_coset_reps(int q, int r, int m, const GMat& g0, Budget& budget);
// [K(m) diag(t^d) K(m) : K(m)] for m >= 1.
std::int64_t double_coset_index_diag(int q, const std::vector<std::int64_t>& d);

// max_i |d_i(g)|: how far g sits from K in the Cartan decomposition.
std::int64_t cartan_radius(const GMat& g);

// int_{N(t0^n)} f(u) psi_N(u) du over the congruence box, and the full
// value computed over the support box {val >= -R}. They agree for n >= R.
CycloScalar psi_integral_torus(const CorpusFn& f, int q, int r, int n, unsigned M, Budget& budget);
CycloScalar psi_integral_full(const CorpusFn& f, int q, int r, unsigned M, Budget& budget);

// K_f(x, y) = int_N f(x^{-1} u y) psi_N(u) du. The box radius grows with
// the Cartan radii of x and y; the granularity is validated by refinement.
CycloScalar kernel_transform(const CorpusFn& f, const GMat& x, const GMat& y, unsigned M,
                             Budget& budget);

// Average over the congruence box L(n) of psi applied to the conjugated corner
// coordinate: alpha_j runs over t^(lambda_j) O, lambda_j = n(2^(r-1) - 2^(j-1)),
// integrand psi(c_{r-1} - (sum_i c_i alpha_i) / (1 + alpha_{r-1})).
CycloScalar aux_conjugation_average(int q, int r, int n, const std::vector<LocalNum>& c, unsigned M,
                                    Budget& budget);
// The claimed value: psi(c_{r-1}) when val(c_i) >= -lambda_i for all i, else 0.
CycloScalar aux_conjugation_reference(int q, int r, int n, const std::vector<LocalNum>& c, unsigned M);

// lambda_j = n(2^{r-1} - 2^j) for j = 0..r-2: the valuation floor of the j-th
// coordinate on the conjugating lattice. (The V(t0^n) bound is -lambda_j.)
std::vector<std::int64_t> aux_lattice_bounds(int r, int n);

// x(alpha): the identity matrix except that row r-1 (0-indexed r-2) is
// (alpha_1, ..., alpha_{r-1} + 1, 0).
GMat aux_embedding(int q, int r, const std::vector<LocalNum>& alpha);

// g sits in the embedded block {diag(k, 1) : k in GL_{r-1}(O)} with k congruent
// to the identity mod t^n: last row and column exactly e_r, depth-n congruence
// for the rest.
bool in_embedded_K_level(const GMat& g, int n);

struct EmbeddingMembership {
    bool x_in;     // x(alpha) lands in the embedded congruence block
    bool conj_in;  // and so does u^{-1} x(alpha) u
};
// The membership half of the stability argument: for alpha on the lattice and
// u in U(t0^n) (block-unipotent, possibly with poles), both x(alpha) and its
// u-conjugate stay in the depth-n congruence block.
EmbeddingMembership aux_embedding_membership(int q, int r, int n, const std::vector<LocalNum>& alpha,
                                             const GMat& u);

// val(c_i) >= -lambda_i for every i (the V(t0^n) bound for the column vector).
bool in_V_torus(int r, int n, const std::vector<LocalNum>& c);

}  // namespace whitcusp
