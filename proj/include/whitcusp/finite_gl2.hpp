#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "whitcusp/cyclo.hpp"
#include "whitcusp/gmat.hpp"

namespace whitcusp {

// F_{q^2} = F_q[s]/(s^2 + b s + c), the lexicographically first irreducible
// monic quadratic. Elements are encoded as a0 + q*a1 for a0 + a1*s; the
// tables fix a multiplicative generator and its discrete logarithm.
struct Fq2Ctx {
    int q;
    int b, c;                // s^2 = -b s - c
    int gen;                 // encoded generator of the unit group
    std::vector<int> power;  // power[k] = gen^k for k < q^2 - 1
    std::vector<int> dlog;   // dlog[power[k]] = k; entry 0 is unused
    std::map<std::pair<int, int>, int> elliptic_root;  // (trace, det) -> a root code

    int encode(int a0, int a1) const { return a0 + q * a1; }
    int mul(int x, int y) const;
    int frobenius(int x) const;  // x^q, the nontrivial automorphism
    int norm(int x) const;       // x * x^q, lands in F_q
    int trace(int x) const;      // x + x^q, lands in F_q
    int scalar(int z) const { return encode(z, 0); }
    // Multiplication by x on the basis {1, s}: an embedding of F_{q^2}^*
    // into GL_2(F_q) whose image is an elliptic torus.
    FMat torus_matrix(int x) const;
};

const Fq2Ctx& fq2_ctx(int q);

// Character of F_{q^2}^* sending the fixed generator to zeta_{q^2-1}^a,
// valued in Q(zeta_M) for M = q(q^2 - 1). Regular means not fixed by the
// Frobenius twist a -> qa, i.e. (q^2 - 1) does not divide a(q - 1); only
// regular exponents cut out cuspidal representations.
class RegularChar {
  public:
    RegularChar(int q, long exponent);  // throws NotRegular otherwise

    int q() const { return q_; }
    long exponent() const { return a_; }
    unsigned modulus() const { return M_; }
    RegularChar frobenius_twist() const;

    CycloScalar value(int code) const;      // theta(x) for nonzero x
    CycloScalar value_scalar(int z) const;  // theta on embedded F_q^*

  private:
    int q_;
    long a_;
    unsigned M_;
};

// Character of the cuspidal representation attached to theta:
//   (q-1) theta(z)          central z,
//   -theta(z)               non-central with double eigenvalue z,
//   0                       split regular,
//   -(theta(x)+theta(x^q))  elliptic with eigenvalue x outside F_q.
CycloScalar cuspidal_character_value(const RegularChar& theta, const FMat& g);

// <chi, chi> over the whole group; exactly 1 iff chi is irreducible.
CycloScalar cuspidal_character_norm(const RegularChar& theta);

// The cuspidal representation realized inside the psi-equivariant induced
// space {f : f(u_c g) = zeta_q^c f(g)}, cut out by the isotypic projector of
// theta's character. Vectors are value tuples on the canonical coset
// representatives (minimal key in the left U-orbit); the right action is
// monomial, so only the projector columns ever live in the big field.
// Construction certifies rank = q - 1 both ways: an echelon basis is drawn
// from the projector columns, and every remaining column must reduce to zero
// against it.
class CuspidalModel {
  public:
    explicit CuspidalModel(const RegularChar& theta);

    int q() const { return q_; }
    unsigned modulus() const { return M_; }
    int dim() const { return static_cast<int>(basis_.size()); }  // q - 1, enforced
    int ncosets() const { return ncos_; }
    const RegularChar& character() const { return theta_; }

    // rho(u_c)-eigenvector with eigenvalue zeta_q^c, normalized to take the
    // value 1 at the identity element.
    const std::vector<CycloScalar>& whittaker_vector() const { return v_psi_; }
    // Reduced column echelon basis of the image; coordinates of any image
    // vector can be read off at the pivot rows.
    const std::vector<std::vector<CycloScalar>>& image_basis() const { return basis_; }

    // (rho(g) v)(x) = v(x g) through the monomial coset action.
    std::vector<CycloScalar> act(const FMat& g, const std::vector<CycloScalar>& v) const;
    // Counting inner product over the cosets, conjugate-linear in b.
    CycloScalar pair(const std::vector<CycloScalar>& a, const std::vector<CycloScalar>& b) const;
    // <rho(g) v, w>
    CycloScalar matrix_coeff(const FMat& g, const std::vector<CycloScalar>& v,
                             const std::vector<CycloScalar>& w) const;
    // Value of the modeled function at an arbitrary group element.
    CycloScalar value_at(const FMat& g, const std::vector<CycloScalar>& v) const;

    // Matrix of rho(g) on the image in the echelon basis. Verifies that the
    // translate stays in the span (throws ProjectionRankMismatch otherwise).
    std::vector<std::vector<CycloScalar>> projected_matrix(const FMat& g) const;
    // Dimension of the zeta_q-eigenspace of rho([[1,1],[0,1]]) on the image.
    int whittaker_multiplicity() const;

  private:
    CycloScalar psi_bar(int e) const;  // zeta_q^e inside Q(zeta_M)

    RegularChar theta_;
    int q_;
    unsigned M_;
    int ncos_ = 0;
    int id_coset_ = 0;
    std::unordered_map<std::uint64_t, int> g_index_;  // key -> dense index
    std::vector<int> coset_of_;                       // dense index -> coset
    std::vector<int> shift_of_;                       // g = u_shift * rep
    std::vector<FMat> rep_;                           // canonical representatives
    std::vector<FMat> rep_inv_;
    std::vector<std::vector<CycloScalar>> basis_;
    std::vector<int> pivot_row_;
    std::vector<CycloScalar> v_psi_;
};

}  // namespace whitcusp
