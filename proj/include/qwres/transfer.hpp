#pragma once
//
// Transfer matrices for the eigen-equation (U - lambda) psi = 0.
//
// In the Q-frame Q psi(x) = (psi^L(x-1), psi^R(x)) a solution satisfies
// Q psi(x+1) = T_lambda(x) Q psi(x) with
//
//   T_lambda(x) = e^{i theta} [[lambda p, conj(q)], [q, conj(p)/lambda]],
//   p = e^{-i phi}/|c11|,  q = e^{-i phi} c21/|c11|,
//   theta = arg(c22/c11)/2, phi = arg(c11 c22)/2   (principal branches).
//
// The principal branches fix T only up to an overall sign. from_coin picks
// the sign that matches (1/c11) [[lambda, -c12], [c21, det C / lambda]], the
// form read off directly from U psi = lambda psi.
//

#include "qwres/laurent.hpp"
#include "qwres/walk.hpp"

#include <vector>

namespace qwres {

// Per-site data (p, q, theta) of a transfer matrix.
struct TransferSite {
    cplx p{1.0};
    cplx q{0.0};
    double theta = 0.0;

    static TransferSite from_coin(const Coin& c);
    // (p, q, theta) ~ (-p, -q, theta - pi)
    TransferSite flipped() const;

    Mat2 at(cplx lambda) const;
    LaurentMatrix laurent() const;
    // det T = e^{2 i theta} (|p|^2 - |q|^2), independent of lambda.
    cplx det() const;
};

// T_lambda(x) for a single coin; lambda != 0.
Mat2 transfer_at(const Coin& coin, cplx lambda);

// Sites x^-..x^+ of chs(C - I_2), identity gaps included.
std::vector<TransferSite> transfer_sites(const CoinSequence& coins);

// T(lambda) = T_lambda(x^+) ... T_lambda(x^-) in coefficient space.
LaurentMatrix transfer_poly(const CoinSequence& coins);
LaurentMatrix transfer_poly(const std::vector<TransferSite>& sites);

// Numeric product of transfer_at over chs, independent of the Laurent route.
Mat2 transfer_product_at(const CoinSequence& coins, cplx lambda);

// sigma(lambda) = lambda^k (1,0) T(lambda) (1,0)^t, k = |chs|_Z.
struct SigmaPoly {
    std::vector<cplx> coeffs;  // ascending powers lambda^0 .. lambda^{2k}
    int k = 0;
    cplx delta{1.0};  // det T, constant in lambda

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx operator()(cplx lambda) const;
    // max |coeff| / min non-zero |coeff|
    double dynamic_range() const;
};

SigmaPoly sigma(const CoinSequence& coins);
SigmaPoly sigma(const std::vector<TransferSite>& sites);

// lambda^k t22(lambda): zeros are incoming resonances (degree <= 2k - 2).
std::vector<cplx> incoming_poly(const CoinSequence& coins);

struct ScatteringMatrix {
    cplx lambda;
    cplx t11, t12, t21, delta;
    // (1/t11) [[1, -t12], [t21, Delta]]
    Mat2 reduced;
    // diag(lambda^{-(x^- - 1)}, lambda^{x^+ + 1}) and diag(lambda^{x^+}, lambda^{-x^-})
    Mat2 left_phase;
    Mat2 right_phase;

    cplx trace() const { return reduced.trace(); }
};

// Throws PoleError when t11(lambda) vanishes (lambda is a resonance).
ScatteringMatrix scattering_matrix(const CoinSequence& coins, cplx lambda);

} // namespace qwres
