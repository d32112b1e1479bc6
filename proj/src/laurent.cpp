#include "qwres/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace qwres {

LaurentPoly::LaurentPoly(int low, std::vector<cplx> coeffs) : low_(low), coeffs_(std::move(coeffs)) {
    normalize();
}

cplx LaurentPoly::coeff(int power) const {
    const int i = power - low_;
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return {};
    return coeffs_[static_cast<size_t>(i)];
}

cplx LaurentPoly::operator()(cplx lambda) const {
    if (coeffs_.empty()) return {};
    cplx acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + *it;
    return acc * std::pow(lambda, low_);
}

double LaurentPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

LaurentPoly& LaurentPoly::normalize() {
    size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == cplx{}) ++first;
    if (first == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return *this;
    }
    size_t last = coeffs_.size();
    while (coeffs_[last - 1] == cplx{}) --last;
    coeffs_ = std::vector<cplx>(coeffs_.begin() + static_cast<long>(first), coeffs_.begin() + static_cast<long>(last));
    low_ += static_cast<int>(first);
    return *this;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx{});
    for (int p = low_; p <= high(); ++p) c[static_cast<size_t>(p - lo)] += coeff(p);
    for (int p = o.low_; p <= o.high(); ++p) c[static_cast<size_t>(p - lo)] += o.coeff(p);
    low_ = lo;
    coeffs_ = std::move(c);
    return normalize();
}

LaurentPoly& LaurentPoly::operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    return normalize();
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-1.0) * b; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{});
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return LaurentPoly(a.low_ + b.low_, std::move(c));
}

LaurentMatrix LaurentMatrix::identity() {
    return {LaurentPoly::constant(1.0), {}, {}, LaurentPoly::constant(1.0)};
}

Mat2 LaurentMatrix::operator()(cplx lambda) const {
    Mat2 m;
    m << e_[0](lambda), e_[1](lambda), e_[2](lambda), e_[3](lambda);
    return m;
}

LaurentPoly LaurentMatrix::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    return {a(1, 1) * b(1, 1) + a(1, 2) * b(2, 1), a(1, 1) * b(1, 2) + a(1, 2) * b(2, 2),
            a(2, 1) * b(1, 1) + a(2, 2) * b(2, 1), a(2, 1) * b(1, 2) + a(2, 2) * b(2, 2)};
}

} // namespace qwres
