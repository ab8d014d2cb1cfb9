#include "whitcusp/finite_gl2.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "whitcusp/errors.hpp"

namespace whitcusp {

namespace {

int mod(int a, int q) { return ((a % q) + q) % q; }

}  // namespace

int Fq2Ctx::mul(int x, int y) const {
    const int x0 = x % q, x1 = x / q, y0 = y % q, y1 = y / q;
    // (x0 + x1 s)(y0 + y1 s) with s^2 = -b s - c
    const int z0 = mod(x0 * y0 - c * x1 * y1, q);
    const int z1 = mod(x0 * y1 + x1 * y0 - b * x1 * y1, q);
    return encode(z0, z1);
}

int Fq2Ctx::frobenius(int x) const {
    int r = x;
    for (int i = 1; i < q; ++i) r = mul(r, x);
    return r;
}

int Fq2Ctx::norm(int x) const {
    const int n = mul(x, frobenius(x));
    if (n / q != 0) throw std::logic_error("field norm left the base field");
    return n % q;
}

int Fq2Ctx::trace(int x) const {
    const int f = frobenius(x);
    if (mod(x / q + f / q, q) != 0) throw std::logic_error("field trace left the base field");
    return mod(x % q + f % q, q);
}

FMat Fq2Ctx::torus_matrix(int x) const {
    const int a0 = x % q, a1 = x / q;
    FMat m = FMat::identity(q, 2);
    m.at(0, 0) = a0;
    m.at(0, 1) = mod(-c * a1, q);
    m.at(1, 0) = a1;
    m.at(1, 1) = mod(a0 - b * a1, q);
    return m;
}

const Fq2Ctx& fq2_ctx(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Fq2Ctx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;

    auto ctx = std::make_unique<Fq2Ctx>();
    ctx->q = q;
    // first monic irreducible x^2 + b x + c in lexicographic (b, c)
    bool found = false;
    for (int b = 0; b < q && !found; ++b)
        for (int c = 0; c < q && !found; ++c) {
            bool has_root = false;
            for (int z = 0; z < q; ++z)
                if (mod(z * z + b * z + c, q) == 0) has_root = true;
            if (!has_root) {
                ctx->b = b;
                ctx->c = c;
                found = true;
            }
        }
    if (!found) throw std::logic_error("no irreducible quadratic found");

    const int units = q * q - 1;
    for (int g = 1; g < q * q; ++g) {
        int x = g, order = 1;
        while (x != 1) {
            x = ctx->mul(x, g);
            ++order;
        }
        if (order == units) {
            ctx->gen = g;
            break;
        }
    }
    ctx->power.assign(static_cast<size_t>(units), 0);
    ctx->dlog.assign(static_cast<size_t>(q * q), -1);
    int x = 1;
    for (int k = 0; k < units; ++k) {
        ctx->power[static_cast<size_t>(k)] = x;
        ctx->dlog[static_cast<size_t>(x)] = k;
        x = ctx->mul(x, ctx->gen);
    }
    for (int code = q; code < q * q; ++code) {
        if (code / q == 0) continue;  // base-field element
        const auto key = std::make_pair(ctx->trace(code), ctx->norm(code));
        ctx->elliptic_root.emplace(key, code);  // first hit wins, deterministic
    }
    auto& slot = cache[q];
    slot = std::move(ctx);
    return *slot;
}

RegularChar::RegularChar(int q, long exponent) : q_(q) {
    const long units = static_cast<long>(q) * q - 1;
    a_ = ((exponent % units) + units) % units;
    if ((a_ * (q - 1)) % units == 0)
        throw NotRegular("character exponent " + std::to_string(a_) + " is Frobenius-fixed for q = " +
                         std::to_string(q));
    M_ = static_cast<unsigned>(q) * static_cast<unsigned>(units);
}

RegularChar RegularChar::frobenius_twist() const { return RegularChar(q_, a_ * q_); }

CycloScalar RegularChar::value(int code) const {
    const auto& F = fq2_ctx(q_);
    const int k = F.dlog[static_cast<size_t>(code)];
    if (k < 0) throw DivisionByZero("character of the zero element");
    const long units = static_cast<long>(q_) * q_ - 1;
    return CycloScalar::zeta(M_, ((a_ * k) % units) * (M_ / units));
}

CycloScalar RegularChar::value_scalar(int z) const {
    return value(fq2_ctx(q_).scalar(mod(z, q_)));
}

CycloScalar cuspidal_character_value(const RegularChar& theta, const FMat& g) {
    const int q = theta.q();
    if (g.at(0, 1) == 0 && g.at(1, 0) == 0 && g.at(0, 0) == g.at(1, 1))
        return make_rational(q - 1) * theta.value_scalar(g.at(0, 0));
    const int tr = mod(g.at(0, 0) + g.at(1, 1), q);
    const int det = g.det();
    int nroots = 0, root = 0;
    for (int z = 0; z < q; ++z)
        if (mod(z * z - tr * z + det, q) == 0) {
            ++nroots;
            root = z;
        }
    if (nroots == 2) return CycloScalar::zero(theta.modulus());
    if (nroots == 1) return -theta.value_scalar(root);
    const auto& F = fq2_ctx(q);
    const int x = F.elliptic_root.at({tr, det});
    return -(theta.value(x) + theta.value(F.frobenius(x)));
}

CycloScalar cuspidal_character_norm(const RegularChar& theta) {
    CycloScalar sum = CycloScalar::zero(theta.modulus());
    const auto& G = all_gl2(theta.q());
    for (const auto& g : G) {
        const CycloScalar v = cuspidal_character_value(theta, g);
        if (!v.is_zero()) sum += v.norm_sq();
    }
    return sum * make_rational(1, gl_order(theta.q(), 2));
}

CycloScalar CuspidalModel::psi_bar(int e) const {
    return CycloScalar::zeta(M_, static_cast<long>(M_ / static_cast<unsigned>(q_)) * mod(e, q_));
}

CuspidalModel::CuspidalModel(const RegularChar& theta)
    : theta_(theta), q_(theta.q()), M_(theta.modulus()) {
    const auto& G = all_gl2(q_);
    const int n = static_cast<int>(G.size());
    g_index_.reserve(static_cast<size_t>(2 * n));
    for (int i = 0; i < n; ++i) g_index_.emplace(G[i].key(), i);

    std::vector<FMat> u(static_cast<size_t>(q_));
    for (int c = 0; c < q_; ++c) {
        u[static_cast<size_t>(c)] = FMat::identity(q_, 2);
        u[static_cast<size_t>(c)].at(0, 1) = c;
    }

    coset_of_.assign(static_cast<size_t>(n), -1);
    shift_of_.assign(static_cast<size_t>(n), 0);
    std::unordered_map<std::uint64_t, int> coset_by_rep;
    for (int i = 0; i < n; ++i) {
        int cmin = 0;
        FMat best = u[0].mul(G[static_cast<size_t>(i)]);
        for (int c = 1; c < q_; ++c) {
            const FMat h = u[static_cast<size_t>(c)].mul(G[static_cast<size_t>(i)]);
            if (h.key() < best.key()) {
                best = h;
                cmin = c;
            }
        }
        auto [it, fresh] = coset_by_rep.emplace(best.key(), ncos_);
        if (fresh) {
            rep_.push_back(best);
            rep_inv_.push_back(best.inv());
            ++ncos_;
        }
        coset_of_[static_cast<size_t>(i)] = it->second;
        shift_of_[static_cast<size_t>(i)] = mod(q_ - cmin, q_);  // g = u_shift * rep
    }
    id_coset_ = coset_of_[static_cast<size_t>(g_index_.at(FMat::identity(q_, 2).key()))];

    // conj(chi(g)) psi_bar(e) for the whole group: the projector column at
    // (k, j) is the sum of these over the q elements g = rep_k^{-1} u_e rep_j.
    std::vector<std::vector<CycloScalar>> prod(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const CycloScalar chi = cuspidal_character_value(theta_, G[static_cast<size_t>(i)]);
        if (chi.is_zero()) continue;
        auto& row = prod[static_cast<size_t>(i)];
        row.reserve(static_cast<size_t>(q_));
        const CycloScalar cc = chi.conj();
        for (int e = 0; e < q_; ++e) row.push_back(cc * psi_bar(e));
    }
    const Rational scale = make_rational(q_ - 1, gl_order(q_, 2));

    std::vector<CycloScalar> vpsi_raw;
    for (int j = 0; j < ncos_; ++j) {
        std::vector<FMat> uej(static_cast<size_t>(q_));
        for (int e = 0; e < q_; ++e) uej[static_cast<size_t>(e)] = u[static_cast<size_t>(e)].mul(rep_[static_cast<size_t>(j)]);
        std::vector<CycloScalar> col(static_cast<size_t>(ncos_), CycloScalar::zero(M_));
        for (int k = 0; k < ncos_; ++k) {
            CycloScalar s = CycloScalar::zero(M_);
            for (int e = 0; e < q_; ++e) {
                const int gi = g_index_.at(rep_inv_[static_cast<size_t>(k)].mul(uej[static_cast<size_t>(e)]).key());
                const auto& row = prod[static_cast<size_t>(gi)];
                if (!row.empty()) s += row[static_cast<size_t>(e)];
            }
            col[static_cast<size_t>(k)] = s * scale;
        }
        if (j == id_coset_) vpsi_raw = col;

        // reduced column echelon update; spent columns must lie in the span
        for (size_t bi = 0; bi < basis_.size(); ++bi) {
            const CycloScalar f = col[static_cast<size_t>(pivot_row_[bi])];
            if (f.is_zero()) continue;
            for (int k = 0; k < ncos_; ++k) col[static_cast<size_t>(k)] -= basis_[bi][static_cast<size_t>(k)] * f;
        }
        int p = -1;
        for (int k = 0; k < ncos_ && p < 0; ++k)
            if (!col[static_cast<size_t>(k)].is_zero()) p = k;
        if (p < 0) continue;
        const CycloScalar pinv = col[static_cast<size_t>(p)].inverse();
        for (int k = 0; k < ncos_; ++k) col[static_cast<size_t>(k)] *= pinv;
        for (size_t bi = 0; bi < basis_.size(); ++bi) {
            const CycloScalar f = basis_[bi][static_cast<size_t>(p)];
            if (f.is_zero()) continue;
            for (int k = 0; k < ncos_; ++k) basis_[bi][static_cast<size_t>(k)] -= col[static_cast<size_t>(k)] * f;
        }
        basis_.push_back(std::move(col));
        pivot_row_.push_back(p);
    }
    if (static_cast<int>(basis_.size()) != q_ - 1)
        throw ProjectionRankMismatch("isotypic projector rank " + std::to_string(basis_.size()) +
                                     ", expected " + std::to_string(q_ - 1));

    const CycloScalar at_identity = value_at(FMat::identity(q_, 2), vpsi_raw);
    if (at_identity.is_zero())
        throw ZeroFunction("evaluation vector vanishes at the identity");
    const CycloScalar norm = at_identity.inverse();
    v_psi_ = vpsi_raw;
    for (auto& x : v_psi_) x *= norm;
}

std::vector<CycloScalar> CuspidalModel::act(const FMat& g, const std::vector<CycloScalar>& v) const {
    std::vector<CycloScalar> out(static_cast<size_t>(ncos_), CycloScalar::zero(M_));
    for (int k = 0; k < ncos_; ++k) {
        const int gi = g_index_.at(rep_[static_cast<size_t>(k)].mul(g).key());
        const CycloScalar& src = v[static_cast<size_t>(coset_of_[static_cast<size_t>(gi)])];
        if (!src.is_zero()) out[static_cast<size_t>(k)] = psi_bar(shift_of_[static_cast<size_t>(gi)]) * src;
    }
    return out;
}

CycloScalar CuspidalModel::pair(const std::vector<CycloScalar>& a, const std::vector<CycloScalar>& b) const {
    CycloScalar s = CycloScalar::zero(M_);
    for (int k = 0; k < ncos_; ++k) {
        const auto& x = a[static_cast<size_t>(k)];
        const auto& y = b[static_cast<size_t>(k)];
        if (!x.is_zero() && !y.is_zero()) s += x * y.conj();
    }
    return s;
}

CycloScalar CuspidalModel::matrix_coeff(const FMat& g, const std::vector<CycloScalar>& v,
                                        const std::vector<CycloScalar>& w) const {
    return pair(act(g, v), w);
}

CycloScalar CuspidalModel::value_at(const FMat& g, const std::vector<CycloScalar>& v) const {
    const int gi = g_index_.at(g.key());
    return psi_bar(shift_of_[static_cast<size_t>(gi)]) * v[static_cast<size_t>(coset_of_[static_cast<size_t>(gi)])];
}

std::vector<std::vector<CycloScalar>> CuspidalModel::projected_matrix(const FMat& g) const {
    const int d = dim();
    std::vector<std::vector<CycloScalar>> S(static_cast<size_t>(d),
                                            std::vector<CycloScalar>(static_cast<size_t>(d), CycloScalar::zero(M_)));
    for (int j = 0; j < d; ++j) {
        std::vector<CycloScalar> w = act(g, basis_[static_cast<size_t>(j)]);
        for (int i = 0; i < d; ++i) S[static_cast<size_t>(i)][static_cast<size_t>(j)] = w[static_cast<size_t>(pivot_row_[static_cast<size_t>(i)])];
        for (int i = 0; i < d; ++i) {
            const CycloScalar& f = S[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (f.is_zero()) continue;
            for (int k = 0; k < ncos_; ++k)
                w[static_cast<size_t>(k)] -= basis_[static_cast<size_t>(i)][static_cast<size_t>(k)] * f;
        }
        for (int k = 0; k < ncos_; ++k)
            if (!w[static_cast<size_t>(k)].is_zero())
                throw ProjectionRankMismatch("translate left the certified image");
    }
    return S;
}

int CuspidalModel::whittaker_multiplicity() const {
    FMat u1 = FMat::identity(q_, 2);
    u1.at(0, 1) = 1;
    auto S = projected_matrix(u1);
    const int d = dim();
    const CycloScalar lam = CycloScalar::zeta(M_, static_cast<long>(M_ / static_cast<unsigned>(q_)));
    for (int i = 0; i < d; ++i) S[static_cast<size_t>(i)][static_cast<size_t>(i)] -= lam;
    // rank of S - lambda by destructive elimination
    int rank = 0;
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int row = rank; row < d && piv < 0; ++row)
            if (!S[static_cast<size_t>(row)][static_cast<size_t>(col)].is_zero()) piv = row;
        if (piv < 0) continue;
        std::swap(S[static_cast<size_t>(piv)], S[static_cast<size_t>(rank)]);
        const CycloScalar inv = S[static_cast<size_t>(rank)][static_cast<size_t>(col)].inverse();
        for (int c2 = col; c2 < d; ++c2) S[static_cast<size_t>(rank)][static_cast<size_t>(c2)] *= inv;
        for (int row = 0; row < d; ++row) {
            if (row == rank) continue;
            const CycloScalar f = S[static_cast<size_t>(row)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int c2 = col; c2 < d; ++c2)
                S[static_cast<size_t>(row)][static_cast<size_t>(c2)] -= S[static_cast<size_t>(rank)][static_cast<size_t>(c2)] * f;
        }
        ++rank;
    }
    return d - rank;
}

}  // namespace whitcusp
