#include "doctest.h"

#include <random>

#include "test_util.hpp"
#include "whitcusp/errors.hpp"
#include "whitcusp/finite_gl2.hpp"

using namespace whitcusp;
using namespace whitcusp::testutil;

namespace {

CycloScalar rat(long num, long den = 1) { return CycloScalar::from_rational(1, make_rational(num, den)); }

std::vector<long> regular_exponents(int q) {
    std::vector<long> out;
    for (long a = 0; a < static_cast<long>(q) * q - 1; ++a) {
        try {
            RegularChar th(q, a);
            out.push_back(a);
        } catch (const NotRegular&) {
        }
    }
    return out;
}

}  // namespace

TEST_CASE("quadratic extension tables are consistent") {
    // First irreducible monic quadratics, found by hand.
    CHECK(fq2_ctx(2).b == 1);
    CHECK(fq2_ctx(2).c == 1);
    CHECK(fq2_ctx(3).b == 0);
    CHECK(fq2_ctx(3).c == 1);
    CHECK(fq2_ctx(5).b == 0);
    CHECK(fq2_ctx(5).c == 2);
    for (int q : {2, 3, 5}) {
        const auto& F = fq2_ctx(q);
        const int units = q * q - 1;
        // power/dlog are inverse bijections on the unit group
        for (int k = 0; k < units; ++k) CHECK(F.dlog[static_cast<size_t>(F.power[static_cast<size_t>(k)])] == k);
        CHECK(F.power[0] == 1);
        // Frobenius is a ring automorphism fixing exactly the base field
        for (int x = 1; x < q * q; ++x) {
            for (int y = 1; y < q * q; ++y)
                CHECK(F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y)));
            CHECK(F.frobenius(F.frobenius(x)) == x);
            CHECK((F.frobenius(x) == x) == (x < q));
        }
        // norm is multiplicative onto the base field
        for (int x = 1; x < q * q; ++x)
            for (int y = 1; y < q * q; ++y)
                CHECK(F.norm(F.mul(x, y)) == (F.norm(x) * F.norm(y)) % q);
    }
}

TEST_CASE("torus matrices embed the quadratic extension multiplicatively") {
    for (int q : {2, 3, 5}) {
        const auto& F = fq2_ctx(q);
        for (int x = 1; x < q * q; ++x) {
            const FMat m = F.torus_matrix(x);
            CHECK(m.det() == F.norm(x));
            CHECK(((m.at(0, 0) + m.at(1, 1)) % q) == F.trace(x));
            for (int y = 1; y < q * q; ++y) CHECK(F.torus_matrix(x).mul(F.torus_matrix(y)) == F.torus_matrix(F.mul(x, y)));
        }
        CHECK(F.torus_matrix(F.scalar(1)) == FMat::identity(q, 2));
    }
}

TEST_CASE("regular exponent counts match the Frobenius-orbit census") {
    CHECK(regular_exponents(2) == std::vector<long>{1, 2});
    CHECK(regular_exponents(3) == std::vector<long>{1, 2, 3, 5, 6, 7});
    CHECK(regular_exponents(5).size() == 20);
    CHECK_THROWS_AS(RegularChar(2, 0), NotRegular);
    CHECK_THROWS_AS(RegularChar(2, 3), NotRegular);
    CHECK_THROWS_AS(RegularChar(3, 4), NotRegular);
    CHECK_THROWS_AS(RegularChar(5, 6), NotRegular);
    CHECK_THROWS_AS(RegularChar(5, 18), NotRegular);
}

TEST_CASE("smallest case reproduces the sign character of the symmetric group") {
    // GL_2(F_2) is S_3; the unique cuspidal line is the sign character:
    // 1 at the identity, -1 on transvections, 1 on the two elliptic elements.
    for (long a : {1L, 2L}) {
        RegularChar th(2, a);
        FMat id = FMat::identity(2, 2);
        FMat u = id;
        u.at(0, 1) = 1;
        FMat ell = FMat::identity(2, 2);  // [[0,1],[1,1]]: x^2 + x + 1 irreducible
        ell.at(0, 0) = 0;
        ell.at(0, 1) = 1;
        ell.at(1, 0) = 1;
        ell.at(1, 1) = 1;
        CHECK(cuspidal_character_value(th, id) == rat(1));
        CHECK(cuspidal_character_value(th, u) == rat(-1));
        CHECK(cuspidal_character_value(th, ell) == rat(1));
    }
}

TEST_CASE("cuspidal characters are irreducible class functions") {
    for (int q : {2, 3, 5}) {
        const auto& G = all_gl2(q);
        for (long a : regular_exponents(q)) {
            RegularChar th(q, a);
            const unsigned M = th.modulus();
            CHECK(cuspidal_character_value(th, FMat::identity(q, 2)) == rat(q - 1));
            CHECK(cuspidal_character_norm(th) == CycloScalar::one(M));
            CycloScalar sum = CycloScalar::zero(M);
            for (const auto& g : G) sum += cuspidal_character_value(th, g);
            CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("distinct character orbits are orthogonal, frobenius twins coincide") {
    for (int q : {2, 3}) {
        const auto& G = all_gl2(q);
        for (long a : regular_exponents(q)) {
            RegularChar th(q, a);
            RegularChar tw = th.frobenius_twist();
            for (const auto& g : G) CHECK(cuspidal_character_value(th, g) == cuspidal_character_value(tw, g));
        }
    }
    // q = 3: exponents 1 and 2 lie in different Frobenius orbits
    {
        RegularChar a1(3, 1), a2(3, 2);
        CycloScalar ip = CycloScalar::zero(a1.modulus());
        for (const auto& g : all_gl2(3))
            ip += cuspidal_character_value(a1, g) * cuspidal_character_value(a2, g).conj();
        CHECK(ip.is_zero());
    }
    // q = 5 spot check on the standard elliptic embedding of a generator power
    {
        RegularChar th(5, 1);
        RegularChar tw = th.frobenius_twist();
        const auto& F = fq2_ctx(5);
        for (int k = 1; k < 8; ++k)
            CHECK(cuspidal_character_value(th, F.torus_matrix(F.power[static_cast<size_t>(k)])) ==
                  cuspidal_character_value(tw, F.torus_matrix(F.power[static_cast<size_t>(k)])));
    }
}

TEST_CASE("character transforms by the central character under center twists") {
    std::mt19937_64 rng(777);
    for (int q : {3, 5}) {
        RegularChar th(q, 1);
        for (int trial = 0; trial < 10; ++trial) {
            FMat g = random_residue_invertible(q, 2, rng);
            for (int z = 1; z < q; ++z) {
                FMat zg = g;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) zg.at(i, j) = (z * g.at(i, j)) % q;
                CHECK(cuspidal_character_value(th, zg) == th.value_scalar(z) * cuspidal_character_value(th, g));
            }
        }
    }
}

namespace {

void check_model_invariants(const CuspidalModel& m, bool full_trace_sweep) {
    const int q = m.q();
    const unsigned M = m.modulus();
    const auto& th = m.character();
    CHECK(m.dim() == q - 1);
    CHECK(m.ncosets() == gl_order(q, 2) / q);
    CHECK(m.whittaker_multiplicity() == 1);

    // Whittaker vector: normalized at the identity, psi-eigenvector under
    // the upper unipotents.
    const auto& v = m.whittaker_vector();
    CHECK(m.value_at(FMat::identity(q, 2), v) == CycloScalar::one(M));
    for (int c = 0; c < q; ++c) {
        FMat uc = FMat::identity(q, 2);
        uc.at(0, 1) = c;
        const CycloScalar lam = CycloScalar::zeta(M, static_cast<long>(M / static_cast<unsigned>(q)) * c);
        const auto moved = m.act(uc, v);
        for (int k = 0; k < m.ncosets(); ++k)
            CHECK(moved[static_cast<size_t>(k)] == lam * v[static_cast<size_t>(k)]);
    }

    // Central elements act by theta on the base field.
    const auto& B = m.image_basis();
    for (int z = 1; z < q; ++z) {
        FMat zi = FMat::identity(q, 2);
        zi.at(0, 0) = z;
        zi.at(1, 1) = z;
        for (const auto& b : B) {
            const auto moved = m.act(zi, b);
            for (int k = 0; k < m.ncosets(); ++k)
                CHECK(moved[static_cast<size_t>(k)] == th.value_scalar(z) * b[static_cast<size_t>(k)]);
        }
    }

    // The trace of the projected action recovers the character: the image
    // carries the representation exactly once.
    std::mt19937_64 rng(101 + static_cast<unsigned>(q));
    const auto& G = all_gl2(q);
    std::vector<FMat> sample;
    if (full_trace_sweep) {
        sample = G;
    } else {
        for (int t = 0; t < 24; ++t) sample.push_back(G[static_cast<size_t>(rng() % G.size())]);
        FMat u1 = FMat::identity(q, 2);
        u1.at(0, 1) = 1;
        sample.push_back(u1);
        sample.push_back(fq2_ctx(q).torus_matrix(fq2_ctx(q).gen));
        FMat z2 = FMat::identity(q, 2);
        z2.at(0, 0) = 2 % q;
        z2.at(1, 1) = 2 % q;
        sample.push_back(z2);
    }
    for (const auto& g : sample) {
        auto S = m.projected_matrix(g);
        CycloScalar tr = CycloScalar::zero(M);
        for (int i = 0; i < m.dim(); ++i) tr += S[static_cast<size_t>(i)][static_cast<size_t>(i)];
        CHECK(tr == cuspidal_character_value(th, g));
    }

    // Unitarity of the action for the counting pairing, via the Gram matrix.
    for (int t = 0; t < 5; ++t) {
        const FMat g = G[static_cast<size_t>(rng() % G.size())];
        for (size_t i = 0; i < B.size(); ++i)
            for (size_t j = 0; j < B.size(); ++j)
                CHECK(m.pair(m.act(g, B[i]), m.act(g, B[j])) == m.pair(B[i], B[j]));
    }

    // Left psi-equivariance of the modeled functions.
    for (int t = 0; t < 10; ++t) {
        const FMat g = G[static_cast<size_t>(rng() % G.size())];
        for (int c = 0; c < q; ++c) {
            FMat uc = FMat::identity(q, 2);
            uc.at(0, 1) = c;
            const CycloScalar lam = CycloScalar::zeta(M, static_cast<long>(M / static_cast<unsigned>(q)) * c);
            CHECK(m.value_at(uc.mul(g), v) == lam * m.value_at(g, v));
        }
    }
}

}  // namespace

TEST_CASE("cuspidal models carry the representation once, unitarily") {
    for (int q : {2, 3})
        for (long a : regular_exponents(q)) check_model_invariants(CuspidalModel(RegularChar(q, a)), true);
    for (long a : {1L, 7L}) check_model_invariants(CuspidalModel(RegularChar(5, a)), false);
}

TEST_CASE("whittaker matrix coefficients satisfy the orthogonality sum") {
    // (dim/|G|) sum_g |<rho(g) v, v>|^2 = |v|^4 for v in an irreducible image.
    for (int q : {2, 3, 5}) {
        CuspidalModel m{RegularChar(q, 1)};
        const auto& v = m.whittaker_vector();
        const CycloScalar n2 = m.pair(v, v);
        CycloScalar sum = CycloScalar::zero(m.modulus());
        for (const auto& g : all_gl2(q)) sum += m.matrix_coeff(g, v, v).norm_sq();
        CHECK(sum * make_rational(q - 1, gl_order(q, 2)) == n2 * n2);
    }
}
