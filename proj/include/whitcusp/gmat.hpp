#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "whitcusp/localfield.hpp"

namespace whitcusp {

// Square matrix over F_q((t)), r <= 3.
class GMat {
  public:
    static constexpr int kMaxRank = 3;

    GMat(int q, int r);
    static GMat identity(int q, int r);
    // diag(t^e1, ..., t^er)
    static GMat diag_tpow(int q, const std::vector<std::int64_t>& exps);
    static GMat diag(int q, const std::vector<LocalNum>& entries);
    // I + c * E_ij (i != j)
    static GMat elementary(int q, int r, int i, int j, const LocalNum& c);
    // Antidiagonal permutation (longest Weyl element); symmetric involution.
    static GMat weyl_long(int q, int r);

    int q() const { return q_; }
    int r() const { return r_; }
    LocalNum& at(int i, int j) { return a_[static_cast<size_t>(i * r_ + j)]; }
    const LocalNum& at(int i, int j) const { return a_[static_cast<size_t>(i * r_ + j)]; }

    GMat transpose() const;
    LocalNum det() const;
    GMat inverse() const;  // adjugate / det

    friend GMat operator*(const GMat& a, const GMat& b);
    GMat scaled(const LocalNum& c) const;

    bool entries_exact() const;
    std::string str() const;

  private:
    int q_, r_;
    std::array<LocalNum, kMaxRank * kMaxRank> a_;
};

// g -> w_r * (g^T)^{-1}. Applying it twice gives g back: w_r is symmetric,
// so the transpose-inverse of w_r g^{-T} is g w_r^{-1} = g w_r.
GMat dual_transform(const GMat& g);

// Matrix over the residue field F_q.
struct FMat {
    int q = 2, r = 2;
    std::array<int, GMat::kMaxRank * GMat::kMaxRank> a{};

    static FMat identity(int q, int r);
    int& at(int i, int j) { return a[static_cast<size_t>(i * r + j)]; }
    int at(int i, int j) const { return a[static_cast<size_t>(i * r + j)]; }
    int det() const;
    FMat mul(const FMat& o) const;
    FMat inv() const;  // throws DivisionByZero if det == 0
    bool operator==(const FMat& o) const;
    // Injective encoding, usable as a hash/map key.
    std::uint64_t key() const;
    std::string str() const;
};

// Reduction mod t: requires every entry integral (val >= 0) at precision >= 1.
FMat residue(const GMat& g);
// Exact lift with digit entries.
GMat lift(const FMat& m);

// All of GL_2(F_q), deterministic order; cached per q.
const std::vector<FMat>& all_gl2(int q);
// |GL_r(F_q)| = prod_{i<r} (q^r - q^i)
long gl_order(int q, int r);

}  // namespace whitcusp
