#include "doctest.h"

#include <random>

#include "whitcusp/localfield.hpp"

using namespace whitcusp;

namespace {

LocalNum random_series(int q, std::mt19937_64& rng, std::int64_t vmin = -3, std::int64_t vmax = 3,
                       int window = 6) {
    std::int64_t v = vmin + static_cast<std::int64_t>(rng() % static_cast<unsigned long>(vmax - vmin + 1));
    std::vector<int> ds;
    for (int i = 0; i < window; ++i) ds.push_back(static_cast<int>(rng() % static_cast<unsigned long>(q)));
    return LocalNum::from_digits(q, v, ds);  // exact polynomial-like element
}

}  // namespace

TEST_CASE("construction and normalization") {
    auto x = LocalNum::digit(3, 4, 2);  // 4 = 1 mod 3
    CHECK(x.val() == 2);
    CHECK(x.digit_at(2) == 1);
    CHECK(x.is_exact());

    auto y = LocalNum::from_digits(3, 0, {0, 0, 2, 0});
    CHECK(y.val() == 2);
    CHECK(y.digit_at(2) == 2);
    CHECK(y.digit_at(5) == 0);  // exact: every digit known

    CHECK(LocalNum::zero(5).is_exact_zero());
    CHECK_THROWS_AS(LocalNum::zero(4), ConfigError);
    CHECK_THROWS_AS(LocalNum::zero(5).val(), DivisionByZero);
}

TEST_CASE("carry-free addition") {
    // q=3: (1 + t) + (2 + 2t) = 0 exactly
    auto a = LocalNum::from_digits(3, 0, {1, 1});
    auto b = LocalNum::from_digits(3, 0, {2, 2});
    CHECK((a + b).is_exact_zero());
    // q=2: t^-1 + t^-1 = 0
    auto u = LocalNum::digit(2, 1, -1);
    CHECK((u + u).is_exact_zero());
    CHECK((a - a).is_exact_zero());
}

TEST_CASE("precision bookkeeping") {
    // add: min of the precisions
    auto a = LocalNum::from_digits(3, 0, {1}, 2);   // 1 + O(t^2)
    auto b = LocalNum::from_digits(3, 0, {2}, 5);   // 2 + O(t^5)
    CHECK((a + b).prec() == 2);
    CHECK((a + b).has_digits() == false);           // 1+2 = 0 mod 3, zero mod t^2
    CHECK_THROWS_AS((a + b).val_at_least(3), PrecisionExhausted);
    CHECK((a + b).val_at_least(2));

    // mul: unknown tail of one factor shifted by the other's valuation
    auto c = LocalNum::digit(3, 1, 1);              // t, exact
    CHECK((a * c).prec() == 3);                     // 2 + val(t)
    auto d = LocalNum::from_digits(3, 2, {1}, 4);   // t^2 + O(t^4)
    CHECK((a * d).prec() == 4);                     // min(2+2, 4+0)
    CHECK((a * d).val() == 2);

    CHECK_THROWS_AS(a.digit_at(2), PrecisionExhausted);
    CHECK(a.digit_at(1) == 0);
}

TEST_CASE("geometric series inverse oracle") {
    // (1 - t)^{-1} = sum_i t^i: check every digit the result claims to know.
    for (int q : {2, 3, 5}) {
        auto one = LocalNum::one(q);
        auto x = one - LocalNum::digit(q, 1, 1);
        auto inv = x.inverse();
        CHECK(inv.prec() == local_default_prec());
        for (std::int64_t e = 0; e < inv.prec(); ++e) CHECK(inv.digit_at(e) == 1);
        auto prod = x * inv;
        CHECK(prod.digit_at(0) == 1);
        for (std::int64_t e = 1; e < prod.prec(); ++e) CHECK(prod.digit_at(e) == 0);
    }
}

TEST_CASE("inverse precision rule p - 2v") {
    // x = t^-2 * unit known mod t^3: inverse must be known mod t^(3 - 2*(-2)) = t^7
    auto x = LocalNum::from_digits(3, -2, {2, 1, 1, 2, 0}, 3);
    auto inv = x.inverse();
    CHECK(inv.prec() == 3 - 2 * (-2));
    auto prod = x * inv;
    CHECK(prod.digit_at(0) == 1);
    for (std::int64_t e = 1; e < prod.prec(); ++e) CHECK(prod.digit_at(e) == 0);

    CHECK_THROWS_AS(LocalNum::zero(3).inverse(), DivisionByZero);
    CHECK_THROWS_AS(LocalNum::from_digits(3, 0, {}, 2).inverse(), PrecisionExhausted);
}

TEST_CASE("random inverse round trips") {
    std::mt19937_64 rng(20240816);
    for (int q : {2, 3, 5}) {
        int done = 0;
        while (done < 25) {
            auto x = random_series(q, rng);
            if (!x.has_digits()) continue;
            ++done;
            auto prod = x * x.inverse();
            REQUIRE(prod.has_digits());
            CHECK(prod.val() == 0);
            CHECK(prod.digit_at(0) == 1);
            const std::int64_t hi = prod.is_exact() ? 32 : prod.prec();
            for (std::int64_t e = 1; e < hi; ++e) CHECK(prod.digit_at(e) == 0);
        }
    }
}

TEST_CASE("division composes multiplication and inverse") {
    auto num = LocalNum::from_digits(5, 2, {1, 1});  // t^2 + t^3
    auto den = LocalNum::digit(5, 1, 2);             // t^2
    auto quo = num / den;
    CHECK(quo.val() == 0);
    CHECK(quo.digit_at(0) == 1);
    CHECK(quo.digit_at(1) == 1);
    CHECK(quo.is_exact());  // monomial divisor inverts exactly
    for (std::int64_t e = 2; e < 32; ++e) CHECK(quo.digit_at(e) == 0);
}

TEST_CASE("shift and truncate") {
    auto x = LocalNum::from_digits(3, 0, {1, 2}, 4);
    auto s = x.shifted(3);
    CHECK(s.val() == 3);
    CHECK(s.prec() == 7);
    CHECK(s.digit_at(4) == 2);
    auto tr = x.truncated(1);
    CHECK(tr.prec() == 1);
    CHECK(tr.val() == 0);
    CHECK_THROWS_AS(tr.digit_at(1), PrecisionExhausted);
}

TEST_CASE("additive character") {
    const unsigned M = 24;  // q = 3 embeds via zeta_24^8
    auto tm1 = LocalNum::digit(3, 1, -1);
    CHECK(psi_additive(tm1, M) == CycloScalar::zeta(24, 8));
    CHECK(psi_additive(LocalNum::one(3), M) == CycloScalar::one(24));
    CHECK(psi_additive(LocalNum::digit(3, 1, -2), M) == CycloScalar::one(24));
    // additivity on random arguments with known polar digits
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_series(3, rng);
        auto y = random_series(3, rng);
        CHECK(psi_additive(x + y, M) == psi_additive(x, M) * psi_additive(y, M));
    }
    // conductor: psi is trivial on O, nontrivial on t^-1 O
    CHECK(psi_additive(LocalNum::digit(2, 1, -1), 6) == CycloScalar::zeta(6, 3));  // = -1
    // precision guard: t^-1 digit must be known
    auto fuzzy = LocalNum::from_digits(3, -3, {1}, -1);
    CHECK_THROWS_AS(psi_additive(fuzzy, M), PrecisionExhausted);
}
