#include "doctest.h"

#include <random>

#include "test_util.hpp"
#include "whitcusp/gmat.hpp"

using namespace whitcusp;
using namespace whitcusp::testutil;

TEST_CASE("matrix inverse round trip") {
    std::mt19937_64 rng(4242);
    for (int q : {2, 3, 5})
        for (int r : {2, 3})
            for (int trial = 0; trial < 6; ++trial) {
                GMat g = random_invertible(q, r, rng);
                GMat p = g * g.inverse();
                CHECK(agree_mod(p, GMat::identity(q, r), 10));
                GMat p2 = g.inverse() * g;
                CHECK(agree_mod(p2, GMat::identity(q, r), 10));
            }
}

TEST_CASE("determinant is multiplicative on exact matrices") {
    std::mt19937_64 rng(555);
    for (int q : {2, 3})
        for (int r : {2, 3})
            for (int trial = 0; trial < 6; ++trial) {
                GMat a = random_invertible(q, r, rng);
                GMat b = random_invertible(q, r, rng);
                CHECK((a * b).det() == a.det() * b.det());
            }
}

TEST_CASE("longest Weyl element is a symmetric involution") {
    for (int q : {2, 3})
        for (int r : {2, 3}) {
            GMat w = GMat::weyl_long(q, r);
            CHECK(agree_mod(w * w, GMat::identity(q, r), 20));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) CHECK(w.at(i, j) == w.at(j, i));
        }
}

TEST_CASE("dual transform applied twice is the identity map") {
    std::mt19937_64 rng(90210);
    for (int q : {2, 3})
        for (int r : {2, 3})
            for (int trial = 0; trial < 5; ++trial) {
                GMat g = random_invertible(q, r, rng);
                CHECK(agree_mod(dual_transform(dual_transform(g)), g, 8));
            }
}

TEST_CASE("elementary matrices compose additively") {
    const int q = 3, r = 3;
    auto c1 = LocalNum::digit(q, 1, -1);
    auto c2 = LocalNum::digit(q, 2, -1);
    GMat e1 = GMat::elementary(q, r, 0, 2, c1);
    GMat e2 = GMat::elementary(q, r, 0, 2, c2);
    CHECK(agree_mod(e1 * e2, GMat::elementary(q, r, 0, 2, c1 + c2), 20));
}

TEST_CASE("residue field matrix group") {
    CHECK(all_gl2(2).size() == 6);
    CHECK(all_gl2(3).size() == 48);
    CHECK(all_gl2(5).size() == 480);
    CHECK(gl_order(2, 2) == 6);
    CHECK(gl_order(3, 2) == 48);
    CHECK(gl_order(5, 2) == 480);
    CHECK(gl_order(2, 3) == 168);
    CHECK(gl_order(3, 3) == 11232);

    std::mt19937_64 rng(31415);
    for (int q : {2, 3, 5}) {
        for (int trial = 0; trial < 10; ++trial) {
            FMat m = random_residue_invertible(q, 2, rng);
            CHECK(m.mul(m.inv()) == FMat::identity(q, 2));
            CHECK(residue(lift(m)) == m);
        }
        // closure: product of two group elements has nonzero det
        FMat a = random_residue_invertible(q, 3, rng);
        FMat b = random_residue_invertible(q, 3, rng);
        CHECK(a.mul(b).det() != 0);
        CHECK(a.mul(a.inv()) == FMat::identity(q, 3));
    }
}

TEST_CASE("residue rejects non-integral matrices") {
    GMat g = GMat::identity(3, 2);
    g.at(0, 1) = LocalNum::digit(3, 1, -1);
    CHECK_THROWS(residue(g));
}
