#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "whitcusp/cyclo.hpp"
#include "whitcusp/errors.hpp"

namespace whitcusp {

// Laurent polynomial in one variable over Q(zeta_M). The term map holds the
// exact support: zero coefficients are dropped eagerly, so `terms().empty()`
// is the zero test and the extreme keys are the degree bounds.
class LaurentPoly {
  public:
    LaurentPoly() = default;  // zero

    static LaurentPoly monomial(std::int64_t e, CycloScalar c) {
        LaurentPoly p;
        if (!c.is_zero()) p.t_.emplace(e, std::move(c));
        return p;
    }
    static LaurentPoly one() { return monomial(0, CycloScalar::from_rational(1, make_rational(1))); }

    bool is_zero() const { return t_.empty(); }
    const std::map<std::int64_t, CycloScalar>& terms() const { return t_; }

    CycloScalar coeff(std::int64_t e) const {
        auto it = t_.find(e);
        return it == t_.end() ? CycloScalar() : it->second;
    }
    std::int64_t deg() const {
        if (t_.empty()) throw std::logic_error("degree of the zero Laurent polynomial");
        return t_.rbegin()->first;
    }
    std::int64_t low() const {
        if (t_.empty()) throw std::logic_error("low exponent of the zero Laurent polynomial");
        return t_.begin()->first;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.t_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly p;
        for (const auto& [e, c] : t_) p.t_.emplace(e, -c);
        return p;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly p;
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) p.add_term(ea + eb, ca * cb);
        return p;
    }
    friend LaurentPoly operator*(LaurentPoly a, const CycloScalar& s) {
        LaurentPoly p;
        for (const auto& [e, c] : a.t_) p.add_term(e, c * s);
        return p;
    }
    friend LaurentPoly operator*(const CycloScalar& s, LaurentPoly a) { return std::move(a) * s; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly d = a;
        d -= b;
        return d.is_zero();
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // multiply by x^k
    LaurentPoly shifted(std::int64_t k) const {
        LaurentPoly p;
        for (const auto& [e, c] : t_) p.t_.emplace(e + k, c);
        return p;
    }

    // substitute x -> q^{-1} x^{-1}: each term c x^e becomes c q^{-e} x^{-e}
    LaurentPoly inv_subst(int q) const {
        LaurentPoly p;
        for (const auto& [e, c] : t_) p.t_.emplace(-e, c * q_power(q, -e));
        return p;
    }

    // Exact quotient; throws FunctionalEquationMismatch if d does not divide.
    // Laurent monomials are units, so divisibility is decided on the shifted
    // ordinary polynomials by descending leading-term elimination.
    LaurentPoly divide_exact(const LaurentPoly& d) const {
        if (d.is_zero()) throw DivisionByZero("Laurent division by zero");
        if (is_zero()) return LaurentPoly();
        LaurentPoly rem = *this, quot;
        const CycloScalar dlead_inv = d.t_.rbegin()->second.inverse();
        const std::int64_t ddeg = d.deg(), dwidth = d.deg() - d.low();
        while (!rem.is_zero() && rem.deg() - rem.low() >= dwidth) {
            const CycloScalar c = rem.t_.rbegin()->second * dlead_inv;
            const std::int64_t e = rem.deg() - ddeg;
            quot.add_term(e, c);
            rem -= d.shifted(e) * c;
        }
        if (!rem.is_zero())
            throw FunctionalEquationMismatch("inexact Laurent division, remainder " + rem.str());
        return quot;
    }

    std::string str(const std::string& var = "x") const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : t_) {
            if (!s.empty()) s += " + ";
            if (c.is_rational())
                s += rational_str(c.as_rational());
            else {
                s += "(z" + std::to_string(c.modulus()) + ":";
                for (size_t i = 0; i < c.coeffs().size(); ++i)
                    s += (i ? "," : "") + rational_str(c.coeffs()[i]);
                s += ")";
            }
            if (e != 0) s += "*" + var + "^" + std::to_string(e);
        }
        return s;
    }

  private:
    void add_term(std::int64_t e, const CycloScalar& c) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            if (!c.is_zero()) t_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    std::map<std::int64_t, CycloScalar> t_;
};

}  // namespace whitcusp
