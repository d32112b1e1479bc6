#pragma once

#include "qwres/walk.hpp"

#include <array>
#include <vector>

namespace qwres {

// sum_{j=low}^{low+n-1} c_j lambda^j with complex coefficients.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(int low, std::vector<cplx> coeffs);
    static LaurentPoly constant(cplx c) { return LaurentPoly(0, {c}); }
    static LaurentPoly monomial(int power, cplx c) { return LaurentPoly(power, {c}); }

    bool is_zero() const { return coeffs_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    // Coefficient of lambda^power (zero outside the stored range).
    cplx coeff(int power) const;
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    cplx operator()(cplx lambda) const;
    double max_abs_coeff() const;

    // Drops exactly-zero leading/trailing coefficients.
    LaurentPoly& normalize();

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator*=(cplx s);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(cplx s, LaurentPoly a) { return a *= s; }

  private:
    int low_ = 0;
    std::vector<cplx> coeffs_;
};

// 2x2 matrix of Laurent polynomials, row-major.
class LaurentMatrix {
  public:
    LaurentMatrix() = default;
    LaurentMatrix(LaurentPoly a11, LaurentPoly a12, LaurentPoly a21, LaurentPoly a22)
        : e_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}
    static LaurentMatrix identity();

    // 1-based entry access as in t_{jk}.
    const LaurentPoly& operator()(int j, int k) const { return e_[static_cast<size_t>(2 * (j - 1) + (k - 1))]; }
    LaurentPoly& operator()(int j, int k) { return e_[static_cast<size_t>(2 * (j - 1) + (k - 1))]; }

    Mat2 operator()(cplx lambda) const;
    LaurentPoly det() const;

    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);

  private:
    std::array<LaurentPoly, 4> e_;
};

} // namespace qwres
