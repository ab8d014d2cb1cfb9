#include "whitcusp/localfield.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace whitcusp {

namespace {

std::atomic<std::int64_t> g_default_prec{24};

int mod_q(long v, int q) {
    int r = static_cast<int>(v % q);
    return r < 0 ? r + q : r;
}

int inv_mod_q(int d, int q) {
    // q prime, 0 < d < q
    int r = 1, base = d, e = q - 2;
    while (e > 0) {
        if (e & 1) r = (r * base) % q;
        base = (base * base) % q;
        e >>= 1;
    }
    return r;
}

}  // namespace

std::int64_t local_default_prec() { return g_default_prec.load(); }
void set_local_default_prec(std::int64_t p) { g_default_prec.store(p); }

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

LocalNum LocalNum::zero(int q) {
    if (!is_prime(q)) throw ConfigError("residue field size must be prime, got " + std::to_string(q));
    LocalNum r;
    r.q_ = q;
    return r;
}

LocalNum LocalNum::digit(int q, int c, std::int64_t e) {
    LocalNum r = zero(q);
    int d = mod_q(c, q);
    if (d == 0) return r;
    r.val_ = e;
    r.len_ = 1;
    r.digits_[0] = static_cast<std::uint8_t>(d);
    return r;
}

LocalNum LocalNum::from_digits(int q, std::int64_t val, const std::vector<int>& ds, std::int64_t prec) {
    LocalNum r = zero(q);
    if (static_cast<int>(ds.size()) > kDigitCap) throw std::logic_error("LocalNum: digit window too long");
    r.val_ = val;
    r.prec_ = prec;
    r.len_ = static_cast<int>(ds.size());
    for (size_t i = 0; i < ds.size(); ++i) r.digits_[i] = static_cast<std::uint8_t>(mod_q(ds[i], q));
    r.normalize();
    return r;
}

void LocalNum::normalize() {
    // Drop digits at exponents >= prec.
    if (prec_ != kExactPrec && len_ > 0) {
        if (val_ >= prec_) len_ = 0;
        else if (val_ + len_ > prec_) len_ = static_cast<int>(prec_ - val_);
    }
    // Advance past leading zeros.
    int lead = 0;
    while (lead < len_ && digits_[static_cast<size_t>(lead)] == 0) ++lead;
    if (lead > 0) {
        for (int i = lead; i < len_; ++i) digits_[static_cast<size_t>(i - lead)] = digits_[static_cast<size_t>(i)];
        val_ += lead;
        len_ -= lead;
    }
    // Trim trailing zeros (they carry no information: digits below prec default to 0).
    while (len_ > 0 && digits_[static_cast<size_t>(len_ - 1)] == 0) --len_;
    if (len_ == 0) val_ = prec_;
}

std::int64_t LocalNum::val() const {
    if (len_ > 0) return val_;
    if (is_exact_zero())
        throw DivisionByZero("val() of exact zero");
    throw PrecisionExhausted("valuation undetermined: zero modulo t^" + std::to_string(prec_));
}

bool LocalNum::val_at_least(std::int64_t c) const {
    if (len_ > 0) return val_ >= c;
    if (is_exact_zero()) return true;
    if (prec_ >= c) return true;
    throw PrecisionExhausted("val >= " + std::to_string(c) + " undecidable at precision t^" +
                             std::to_string(prec_));
}

int LocalNum::digit_at(std::int64_t e) const {
    if (prec_ != kExactPrec && e >= prec_)
        throw PrecisionExhausted("digit at t^" + std::to_string(e) + " beyond precision t^" +
                                 std::to_string(prec_));
    if (len_ == 0 || e < val_ || e >= val_ + len_) return 0;
    return digits_[static_cast<size_t>(e - val_)];
}

LocalNum LocalNum::truncated(std::int64_t p) const {
    LocalNum r = *this;
    r.prec_ = std::min(prec_, p);
    if (r.len_ == 0) r.val_ = r.prec_;
    r.normalize();
    return r;
}

LocalNum LocalNum::shifted(std::int64_t e) const {
    LocalNum r = *this;
    if (r.val_ != kExactPrec) r.val_ += e;
    if (r.prec_ != kExactPrec) r.prec_ += e;
    return r;
}

LocalNum LocalNum::operator-() const {
    LocalNum r = *this;
    for (int i = 0; i < len_; ++i)
        if (r.digits_[static_cast<size_t>(i)] != 0)
            r.digits_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(q_ - r.digits_[static_cast<size_t>(i)]);
    return r;
}

LocalNum operator+(const LocalNum& a, const LocalNum& b) {
    if (a.q_ != b.q_) throw std::logic_error("LocalNum: mixed residue characteristics");
    LocalNum r = LocalNum::zero(a.q_);
    r.prec_ = std::min(a.prec_, b.prec_);
    std::int64_t lo = LocalNum::kExactPrec, hi = -LocalNum::kExactPrec;
    if (a.len_ > 0) { lo = std::min(lo, a.val_); hi = std::max(hi, a.val_ + a.len_); }
    if (b.len_ > 0) { lo = std::min(lo, b.val_); hi = std::max(hi, b.val_ + b.len_); }
    if (lo > hi) { r.normalize(); return r; }  // both windows empty
    if (r.prec_ != LocalNum::kExactPrec) hi = std::min<std::int64_t>(hi, r.prec_);
    if (hi <= lo) { r.normalize(); return r; }
    if (hi - lo > LocalNum::kDigitCap) {
        // Window overflow: keep the leading kDigitCap digits, lose precision.
        hi = lo + LocalNum::kDigitCap;
        r.prec_ = std::min(r.prec_, hi);
    }
    r.val_ = lo;
    r.len_ = static_cast<int>(hi - lo);
    for (std::int64_t e = lo; e < hi; ++e) {
        int s = 0;
        if (a.len_ > 0 && e >= a.val_ && e < a.val_ + a.len_) s += a.digits_[static_cast<size_t>(e - a.val_)];
        if (b.len_ > 0 && e >= b.val_ && e < b.val_ + b.len_) s += b.digits_[static_cast<size_t>(e - b.val_)];
        r.digits_[static_cast<size_t>(e - lo)] = static_cast<std::uint8_t>(s % a.q_);
    }
    r.normalize();
    return r;
}

LocalNum operator*(const LocalNum& a, const LocalNum& b) {
    if (a.q_ != b.q_) throw std::logic_error("LocalNum: mixed residue characteristics");
    const int q = a.q_;
    if (a.is_exact_zero() || b.is_exact_zero()) return LocalNum::zero(q);
    // Effective valuation lower bound: leading digit exponent, or prec when empty.
    const std::int64_t va = a.len_ > 0 ? a.val_ : a.prec_;
    const std::int64_t vb = b.len_ > 0 ? b.val_ : b.prec_;
    LocalNum r = LocalNum::zero(q);
    // Unknown tail of a pollutes at a.prec + vb and symmetrically.
    std::int64_t prec = LocalNum::kExactPrec;
    if (a.prec_ != LocalNum::kExactPrec) prec = std::min(prec, a.prec_ + vb);
    if (b.prec_ != LocalNum::kExactPrec) prec = std::min(prec, b.prec_ + va);
    r.prec_ = prec;
    if (a.len_ == 0 || b.len_ == 0) { r.normalize(); return r; }
    std::int64_t lo = a.val_ + b.val_;
    std::int64_t hi = lo + a.len_ + b.len_ - 1;
    if (prec != LocalNum::kExactPrec) hi = std::min(hi, prec);
    if (hi <= lo) { r.normalize(); return r; }
    if (hi - lo > LocalNum::kDigitCap) {
        hi = lo + LocalNum::kDigitCap;
        r.prec_ = std::min(r.prec_, hi);
    }
    r.val_ = lo;
    r.len_ = static_cast<int>(hi - lo);
    for (int i = 0; i < a.len_; ++i) {
        const int da = a.digits_[static_cast<size_t>(i)];
        if (da == 0) continue;
        for (int j = 0; j < b.len_; ++j) {
            const std::int64_t e = a.val_ + i + b.val_ + j;
            if (e >= hi) break;
            const int db = b.digits_[static_cast<size_t>(j)];
            if (db == 0) continue;
            auto& cell = r.digits_[static_cast<size_t>(e - lo)];
            cell = static_cast<std::uint8_t>((cell + da * db) % q);
        }
    }
    r.normalize();
    return r;
}

LocalNum LocalNum::inverse() const {
    if (is_exact_zero()) throw DivisionByZero("inverse of exact zero");
    if (len_ == 0)
        throw PrecisionExhausted("inverse: leading digit undetermined below t^" + std::to_string(prec_));
    if (is_exact() && len_ == 1)  // (c t^v)^{-1} = c^{-1} t^{-v}, exactly
        return digit(q_, inv_mod_q(digits_[0], q_), -val_);
    const std::int64_t v = val_;
    // Unit part u = t^-v * this, digits d[0..L), d[0] != 0; invert by the
    // convolution recurrence e_k = -d0^{-1} * sum_{j=1..k} d_j e_{k-j}.
    std::int64_t unit_prec;  // digits of u^{-1} computable below this exponent
    if (prec_ == kExactPrec) {
        unit_prec = std::max<std::int64_t>(local_default_prec(), 1);
    } else {
        unit_prec = prec_ - v;  // u known mod t^(prec-v), so is u^{-1}
    }
    const int L = static_cast<int>(std::min<std::int64_t>(unit_prec, kDigitCap));
    const int d0inv = inv_mod_q(digits_[0], q_);
    std::vector<int> e(static_cast<size_t>(L), 0);
    e[0] = d0inv;
    for (int k = 1; k < L; ++k) {
        int acc = 0;
        for (int j = 1; j <= k && j < len_; ++j)
            acc = (acc + digits_[static_cast<size_t>(j)] * e[static_cast<size_t>(k - j)]) % q_;
        e[static_cast<size_t>(k)] = (acc == 0) ? 0 : (q_ - (d0inv * acc) % q_) % q_;
    }
    // u^{-1} known mod t^L, so t^{-v} u^{-1} is known mod t^(L-v);
    // for truncated input L = prec - v and this is the p - 2v rule.
    const std::int64_t out_prec = L - v;
    LocalNum r = zero(q_);
    r.val_ = -v;
    r.prec_ = out_prec;
    r.len_ = L;
    for (int i = 0; i < L; ++i) r.digits_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(e[static_cast<size_t>(i)]);
    r.normalize();
    return r;
}

bool operator==(const LocalNum& a, const LocalNum& b) {
    if (a.q_ != b.q_ || a.prec_ != b.prec_ || a.len_ != b.len_) return false;
    if (a.len_ > 0 && a.val_ != b.val_) return false;
    for (int i = 0; i < a.len_; ++i)
        if (a.digits_[static_cast<size_t>(i)] != b.digits_[static_cast<size_t>(i)]) return false;
    return true;
}

std::string LocalNum::str() const {
    std::ostringstream os;
    if (len_ == 0) {
        os << "0";
    } else {
        bool first = true;
        for (int i = 0; i < len_; ++i) {
            const int d = digits_[static_cast<size_t>(i)];
            if (d == 0) continue;
            if (!first) os << " + ";
            first = false;
            const std::int64_t e = val_ + i;
            if (e == 0) os << d;
            else {
                if (d != 1) os << d << "*";
                os << "t^" << e;
            }
        }
    }
    if (prec_ != kExactPrec) os << " + O(t^" << prec_ << ")";
    return os.str();
}

CycloScalar psi_additive(const LocalNum& x, unsigned M) {
    const int q = x.q();
    if (M % static_cast<unsigned>(q) != 0) throw std::logic_error("psi_additive: q must divide M");
    const int d = x.digit_at(-1);
    return CycloScalar::zeta(M, static_cast<long>(d) * static_cast<long>(M / static_cast<unsigned>(q)));
}

}  // namespace whitcusp
