#include "qwres/transfer.hpp"

#include "qwres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qwres {

TransferSite TransferSite::from_coin(const Coin& c) {
    const double theta = 0.5 * std::arg(c.c22() / c.c11());
    const double phi = 0.5 * std::arg(c.c11() * c.c22());
    const double a = std::abs(c.c11());
    const cplx rot = std::polar(1.0, -phi);
    const TransferSite s{rot / a, rot * c.c21() / a, theta};
    // Pick the branch with T = (1/c11) [[lambda, -c12], [c21, det C / lambda]],
    // so propagated vectors solve the eigen-equation and not just its sign class.
    // Negating (p, q) alone negates T; flipped() would leave it unchanged.
    if ((std::polar(1.0, theta) * s.p * c.c11()).real() < 0.0) return {-s.p, -s.q, theta};
    return s;
}

TransferSite TransferSite::flipped() const { return {-p, -q, theta - std::numbers::pi}; }

Mat2 TransferSite::at(cplx lambda) const {
    if (lambda == cplx{}) throw DomainError("transfer matrix: lambda must be non-zero");
    const cplx ph = std::polar(1.0, theta);
    Mat2 m;
    m << ph * lambda * p, ph * std::conj(q), ph * q, ph * std::conj(p) / lambda;
    return m;
}

LaurentMatrix TransferSite::laurent() const {
    const cplx ph = std::polar(1.0, theta);
    return {LaurentPoly::monomial(1, ph * p), LaurentPoly::constant(ph * std::conj(q)),
            LaurentPoly::constant(ph * q), LaurentPoly::monomial(-1, ph * std::conj(p))};
}

cplx TransferSite::det() const {
    return std::polar(1.0, 2.0 * theta) * (std::norm(p) - std::norm(q));
}

Mat2 transfer_at(const Coin& coin, cplx lambda) { return TransferSite::from_coin(coin).at(lambda); }

std::vector<TransferSite> transfer_sites(const CoinSequence& coins) {
    const IntervalZ h = coins.hull();
    std::vector<TransferSite> sites;
    sites.reserve(static_cast<size_t>(h.size()));
    for (int x = h.lo; x <= h.hi; ++x) sites.push_back(TransferSite::from_coin(coins.at(x)));
    return sites;
}

LaurentMatrix transfer_poly(const std::vector<TransferSite>& sites) {
    if (sites.empty()) throw DomainError("free walk: no transfer product");
    LaurentMatrix t = LaurentMatrix::identity();
    for (const auto& s : sites) t = s.laurent() * t;
    return t;
}

LaurentMatrix transfer_poly(const CoinSequence& coins) { return transfer_poly(transfer_sites(coins)); }

Mat2 transfer_product_at(const CoinSequence& coins, cplx lambda) {
    if (coins.is_free()) throw DomainError("free walk: no transfer product");
    Mat2 t = Mat2::Identity();
    const IntervalZ h = coins.hull();
    for (int x = h.lo; x <= h.hi; ++x) t = transfer_at(coins.at(x), lambda) * t;
    return t;
}

cplx SigmaPoly::operator()(cplx lambda) const {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + *it;
    return acc;
}

double SigmaPoly::dynamic_range() const {
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    for (const auto& c : coeffs) {
        const double a = std::abs(c);
        if (a == 0.0) continue;
        hi = std::max(hi, a);
        lo = std::min(lo, a);
    }
    return hi == 0.0 ? 1.0 : hi / lo;
}

namespace {

// lambda^shift * poly as ascending coefficients from lambda^0; requires a
// non-negative lowest power after the shift.
std::vector<cplx> shifted_coeffs(const LaurentPoly& poly, int shift, int top) {
    std::vector<cplx> c(static_cast<size_t>(top + 1), cplx{});
    if (poly.is_zero()) return c;
    for (int p = poly.low(); p <= poly.high(); ++p) {
        const int e = p + shift;
        if (e < 0 || e > top) throw NumericalError("transfer product has unexpected Laurent range");
        c[static_cast<size_t>(e)] = poly.coeff(p);
    }
    return c;
}

} // namespace

SigmaPoly sigma(const std::vector<TransferSite>& sites) {
    const LaurentMatrix t = transfer_poly(sites);
    const int k = static_cast<int>(sites.size());
    SigmaPoly s;
    s.k = k;
    s.coeffs = shifted_coeffs(t(1, 1), k, 2 * k);
    s.delta = 1.0;
    for (const auto& site : sites) s.delta *= site.det();
    return s;
}

SigmaPoly sigma(const CoinSequence& coins) { return sigma(transfer_sites(coins)); }

std::vector<cplx> incoming_poly(const CoinSequence& coins) {
    const auto sites = transfer_sites(coins);
    const LaurentMatrix t = transfer_poly(sites);
    const int k = static_cast<int>(sites.size());
    return shifted_coeffs(t(2, 2), k, 2 * k);
}

ScatteringMatrix scattering_matrix(const CoinSequence& coins, cplx lambda) {
    if (lambda == cplx{}) throw DomainError("scattering matrix: lambda must be non-zero");
    const auto sites = transfer_sites(coins);
    if (sites.empty()) throw DomainError("free walk: no transfer product");
    Mat2 t = Mat2::Identity();
    cplx delta = 1.0;
    double scale = 1.0;
    for (const auto& s : sites) {
        t = s.at(lambda) * t;
        delta *= s.det();
        scale *= std::max(std::abs(lambda), 1.0 / std::abs(lambda)) * (std::abs(s.p) + std::abs(s.q));
    }
    ScatteringMatrix sm;
    sm.lambda = lambda;
    sm.t11 = t(0, 0);
    sm.t12 = t(0, 1);
    sm.t21 = t(1, 0);
    sm.delta = delta;
    if (std::abs(sm.t11) <= 1e-15 * scale)
        throw PoleError("scattering matrix pole: t11(lambda) = 0 (lambda is a resonance)", lambda);
    sm.reduced << 1.0, -sm.t12, sm.t21, delta;
    sm.reduced /= sm.t11;
    const IntervalZ h = coins.hull();
    sm.left_phase = Mat2::Zero();
    sm.left_phase(0, 0) = std::pow(lambda, -(h.lo - 1));
    sm.left_phase(1, 1) = std::pow(lambda, h.hi + 1);
    sm.right_phase = Mat2::Zero();
    sm.right_phase(0, 0) = std::pow(lambda, h.hi);
    sm.right_phase(1, 1) = std::pow(lambda, -h.lo);
    return sm;
}

} // namespace qwres
