#pragma once
//
// Resonance expansion of a compactly supported state:
//
//   psi = 1_J sum_lambda sum_k c_{lambda,k} phi_{lambda,k} + phi_0,  phi_0 in V_J(0),
//
// and the resulting exact formula for U^n psi on N_{n-1-2|J|}(J), n > 2|J|.
//

#include "qwres/resonance.hpp"
#include "qwres/walk.hpp"

#include <string>
#include <vector>

namespace qwres {

struct ZeroSpace {
    IntervalZ J;
    Eigen::MatrixXcd basis;  // orthonormal columns in the cut-off basis of J

    int dim() const { return static_cast<int>(basis.cols()); }
    WalkState member(int i) const;
};

// Generalized kernel of E_J, i.e. V_J(0).
ZeroSpace zero_space(const CoinSequence& coins, const IntervalZ& J);

struct ExpansionTerm {
    Resonance res;
    ResonantChain chain;
    std::vector<cplx> coeffs;        // c_{lambda,1..m}
    std::vector<double> restricted;  // ||1_J phi_{lambda,k}||
    bool active = false;             // some |c_k| ||1_J phi_k|| > 1e-9 ||psi||
};

struct ExpansionResult {
    IntervalZ J;
    std::vector<ExpansionTerm> terms;
    WalkState phi0;
    double psi_norm = 0.0;
    double Lambda_psi = 0.0;    // Lambda(psi); 0 when no term is active
    double Lambda_prime = 0.0;  // largest active modulus below Lambda(psi)
    double residual = 0.0;      // ||psi - reconstruction|| / ||psi||
    double condition = 1.0;     // of the column-scaled basis matrix
    int zero_dim = 0;
    std::vector<std::string> warnings;

    WalkState reconstruct() const;
    // 1_J sum_k c_k phi_{lambda,k} for one term
    WalkState block(size_t term) const;
};

// Throws DomainError unless J contains supp psi and chs(C - I_2).
ExpansionResult expand(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J);

// Chain: phi_{lambda,k-l} inside the l-sum, as the chain relation gives.
// Printed: phi_{lambda,k-1} for every l, kept for comparison in verify mode.
enum class Indexing { chain, printed };

// Region N_{n-1-2|J|}(J) on which the time formula holds.
IntervalZ prediction_region(const IntervalZ& J, int n);

// U^n psi from the expansion on prediction_region(J, n); needs n > 2|J|.
WalkState predict_evolution(const ExpansionResult& e, int n, Indexing idx = Indexing::chain);

// Solves (E_J - lambda) u = f for f supported in J; PoleError on a singular system.
WalkState resolvent_apply(const CutoffMatrix& cm, cplx lambda, const WalkState& f);
WalkState resolvent_apply(const CoinSequence& coins, const IntervalZ& J, cplx lambda, const WalkState& f);

// Half the distance from lambda0 to the nearest other pole (0 included).
double contour_radius(cplx lambda0, const std::vector<Resonance>& poles);

// -(2 pi i)^{-1} oint_{|lambda - lambda0| = rho} R_J(lambda) f dlambda by the
// trapezoid rule with `nodes` points.
WalkState contour_projector(const CutoffMatrix& cm, cplx lambda0, double rho, const WalkState& f,
                            int nodes = 64);

} // namespace qwres
