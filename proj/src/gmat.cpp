#include "whitcusp/gmat.hpp"

#include <map>
#include <sstream>

#include "whitcusp/errors.hpp"

namespace whitcusp {

GMat::GMat(int q, int r) : q_(q), r_(r) {
    if (r < 1 || r > kMaxRank) throw UnsupportedRank("matrix rank must be 1..3, got " + std::to_string(r));
    for (auto& e : a_) e = LocalNum::zero(q);
}

GMat GMat::identity(int q, int r) {
    GMat m(q, r);
    for (int i = 0; i < r; ++i) m.at(i, i) = LocalNum::one(q);
    return m;
}

GMat GMat::diag_tpow(int q, const std::vector<std::int64_t>& exps) {
    GMat m(q, static_cast<int>(exps.size()));
    for (int i = 0; i < m.r_; ++i) m.at(i, i) = LocalNum::uniformizer_pow(q, exps[static_cast<size_t>(i)]);
    return m;
}

GMat GMat::diag(int q, const std::vector<LocalNum>& entries) {
    GMat m(q, static_cast<int>(entries.size()));
    for (int i = 0; i < m.r_; ++i) m.at(i, i) = entries[static_cast<size_t>(i)];
    return m;
}

GMat GMat::elementary(int q, int r, int i, int j, const LocalNum& c) {
    if (i == j) throw std::logic_error("elementary: i == j");
    GMat m = identity(q, r);
    m.at(i, j) = c;
    return m;
}

GMat GMat::weyl_long(int q, int r) {
    GMat m(q, r);
    for (int i = 0; i < r; ++i) m.at(i, r - 1 - i) = LocalNum::one(q);
    return m;
}

GMat GMat::transpose() const {
    GMat m(q_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) m.at(j, i) = at(i, j);
    return m;
}

LocalNum GMat::det() const {
    if (r_ == 1) return at(0, 0);
    if (r_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    LocalNum d = LocalNum::zero(q_);
    for (int j = 0; j < 3; ++j) {
        LocalNum minor = at(1, (j + 1) % 3) * at(2, (j + 2) % 3) - at(1, (j + 2) % 3) * at(2, (j + 1) % 3);
        d = d + at(0, j) * minor;
    }
    return d;
}

GMat GMat::inverse() const {
    LocalNum dinv = det().inverse();
    GMat adj(q_, r_);
    if (r_ == 1) {
        adj.at(0, 0) = LocalNum::one(q_);
    } else if (r_ == 2) {
        adj.at(0, 0) = at(1, 1);
        adj.at(1, 1) = at(0, 0);
        adj.at(0, 1) = -at(0, 1);
        adj.at(1, 0) = -at(1, 0);
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // cofactor C_ji for the adjugate
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                adj.at(i, j) = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
            }
    }
    return adj.scaled(dinv);
}

GMat operator*(const GMat& a, const GMat& b) {
    if (a.q_ != b.q_ || a.r_ != b.r_) throw std::logic_error("GMat: shape/field mismatch");
    GMat m(a.q_, a.r_);
    for (int i = 0; i < a.r_; ++i)
        for (int j = 0; j < a.r_; ++j) {
            LocalNum s = LocalNum::zero(a.q_);
            for (int k = 0; k < a.r_; ++k) s = s + a.at(i, k) * b.at(k, j);
            m.at(i, j) = s;
        }
    return m;
}

GMat GMat::scaled(const LocalNum& c) const {
    GMat m(q_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) m.at(i, j) = at(i, j) * c;
    return m;
}

bool GMat::entries_exact() const {
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            if (!at(i, j).is_exact()) return false;
    return true;
}

std::string GMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < r_; ++j) os << (j ? ", " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

GMat dual_transform(const GMat& g) {
    return GMat::weyl_long(g.q(), g.r()) * g.transpose().inverse();
}

FMat FMat::identity(int q, int r) {
    FMat m;
    m.q = q;
    m.r = r;
    for (int i = 0; i < r; ++i) m.at(i, i) = 1;
    return m;
}

int FMat::det() const {
    if (r == 1) return at(0, 0) % q;
    if (r == 2) return ((at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0)) % q + q) % q;
    long d = 0;
    for (int j = 0; j < 3; ++j)
        d += at(0, j) * (at(1, (j + 1) % 3) * at(2, (j + 2) % 3) - at(1, (j + 2) % 3) * at(2, (j + 1) % 3));
    return static_cast<int>((d % q + q) % q);
}

FMat FMat::mul(const FMat& o) const {
    FMat m;
    m.q = q;
    m.r = r;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            int s = 0;
            for (int k = 0; k < r; ++k) s += at(i, k) * o.at(k, j);
            m.at(i, j) = ((s % q) + q) % q;
        }
    return m;
}

namespace {
int fq_inv(int d, int q) {
    d = ((d % q) + q) % q;
    if (d == 0) throw DivisionByZero("residue matrix not invertible");
    int r = 1, base = d, e = q - 2;
    while (e > 0) {
        if (e & 1) r = (r * base) % q;
        base = (base * base) % q;
        e >>= 1;
    }
    return r;
}
}  // namespace

FMat FMat::inv() const {
    const int dinv = fq_inv(det(), q);
    FMat m;
    m.q = q;
    m.r = r;
    if (r == 1) {
        m.at(0, 0) = dinv;
        return m;
    }
    if (r == 2) {
        m.at(0, 0) = (at(1, 1) * dinv) % q;
        m.at(1, 1) = (at(0, 0) * dinv) % q;
        m.at(0, 1) = ((-at(0, 1) * dinv) % q + q) % q;
        m.at(1, 0) = ((-at(1, 0) * dinv) % q + q) % q;
        return m;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            int cof = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
            m.at(i, j) = (((cof * dinv) % q) + q) % q;
        }
    return m;
}

bool FMat::operator==(const FMat& o) const {
    if (q != o.q || r != o.r) return false;
    for (int i = 0; i < r * r; ++i)
        if (a[static_cast<size_t>(i)] != o.a[static_cast<size_t>(i)]) return false;
    return true;
}

std::uint64_t FMat::key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < r * r; ++i) k = k * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(a[static_cast<size_t>(i)]);
    return k;
}

std::string FMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < r; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < r; ++j) os << (j ? "," : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

FMat residue(const GMat& g) {
    FMat m;
    m.q = g.q();
    m.r = g.r();
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.r; ++j) {
            const LocalNum& e = g.at(i, j);
            if (!e.val_at_least(0)) throw std::logic_error("residue: entry not integral");
            m.at(i, j) = e.digit_at(0);
        }
    return m;
}

GMat lift(const FMat& m) {
    GMat g(m.q, m.r);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.r; ++j) g.at(i, j) = LocalNum::digit(m.q, m.at(i, j), 0);
    return g;
}

const std::vector<FMat>& all_gl2(int q) {
    static std::map<int, std::vector<FMat>> cache;
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    std::vector<FMat> v;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    if (((a * d - b * c) % q + q) % q == 0) continue;
                    FMat m;
                    m.q = q;
                    m.r = 2;
                    m.at(0, 0) = a;
                    m.at(0, 1) = b;
                    m.at(1, 0) = c;
                    m.at(1, 1) = d;
                    v.push_back(m);
                }
    return cache.emplace(q, std::move(v)).first->second;
}

long gl_order(int q, int r) {
    long qr = 1;
    for (int i = 0; i < r; ++i) qr *= q;
    long n = 1, qi = 1;
    for (int i = 0; i < r; ++i) {
        n *= (qr - qi);
        qi *= q;
    }
    return n;
}

}  // namespace whitcusp
