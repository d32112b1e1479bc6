#pragma once
//
// Resonances of U: non-zero roots of sigma(lambda), equivalently the non-zero
// eigenvalues of the cut-off matrix E_J = 1_J U 1_J for any J containing
// chs(C - I_2). Resonant states and Jordan chains are built by propagating
// Taylor jets of the transfer matrices in h = lambda - lambda0.
//

#include "qwres/polyroots.hpp"
#include "qwres/transfer.hpp"
#include "qwres/walk.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace qwres {

enum class ResonanceKind { outgoing, incoming };

struct Resonance {
    cplx lambda;
    int mult = 1;
    ResonanceKind kind = ResonanceKind::outgoing;
    double residual = 0.0;  // |sigma(lambda)| relative to sum |a_i| |lambda|^i
};

struct SpectrumSummary {
    double Lambda0 = 0.0;
    int m0 = 0;
    // (modulus, largest multiplicity at that modulus), descending modulus
    std::vector<std::pair<double, int>> p;
    int sum_mult = 0;
    int budget = 0;  // 2 (|chs|_Z - 1)
    std::optional<int> zero_dim;  // dim V_J(0) for J = chs, when computed

    // p(Lambda); 0 when no resonance has that modulus
    int p_at(double modulus, double tol = 1e-9) const;
};

SpectrumSummary summarize(const std::vector<Resonance>& res, int chs_size);

// Matrix of 1_J U 1_J in the basis e_{(x,L)}, e_{(x,R)}, index 2 (x - J.lo) + {0, 1}.
struct CutoffMatrix {
    IntervalZ J;
    Eigen::MatrixXcd E;

    int index(int x, int comp) const { return 2 * (x - J.lo) + comp; }
    Eigen::VectorXcd vectorize(const WalkState& psi) const;
    WalkState state(const Eigen::VectorXcd& v) const;
};

// Throws DomainError unless J contains chs(C - I_2).
CutoffMatrix cutoff_matrix(const CoinSequence& coins, const IntervalZ& J);

// Orthonormal basis of the generalized kernel of a square matrix by iterated
// kernels K_{j+1} = ker((I - P_j) E), singular values below rel_tol * ||E||
// counting as zero.
Eigen::MatrixXcd generalized_kernel(const Eigen::MatrixXcd& E, double rel_tol = 1e-10);

// Eigenvalues with algebraic multiplicities. The generalized kernel is split
// off first and reported through zero_dim; the remaining spectrum comes from
// the compression of E to its orthogonal complement. Size limit 256.
std::vector<RootCluster> eigen_oracle(const Eigen::MatrixXcd& E, int* zero_dim = nullptr,
                                      double cluster_tol = 1e-6);

enum class Method { sigma, cutoff, both };

struct ResonanceReport {
    std::vector<Resonance> resonances;
    SpectrumSummary summary;
    std::optional<double> cross_distance;  // sigma vs cut-off, Method::both only
    double dynamic_range = 1.0;            // of the sigma coefficients
};

ResonanceReport find_resonances(const CoinSequence& coins, Method method = Method::sigma);

// Roots of lambda^k t22(lambda); see the header of transfer.hpp for the frame.
std::vector<Resonance> incoming_resonances(const CoinSequence& coins);

// phi_{lambda,1..m} with phi_{lambda,l+1} = (1/l!) d^l/dlambda^l phi_lambda
// and the normalization Q phi_lambda(x^-) = (1, 0) for every lambda.
class ResonantChain {
  public:
    ResonantChain(const CoinSequence& coins, cplx lambda, int length);

    cplx lambda() const { return lambda_; }
    int length() const { return m_; }
    IntervalZ chs() const { return IntervalZ::of(xm_, xp_); }

    // phi_{lambda,k}(x), k = 1..length; k = 0 gives zero.
    Vec2 at(int k, int x) const;
    // phi_{lambda,k} over the given window, i.e. 1_W phi_{lambda,k}
    WalkState state(int k, const IntervalZ& window) const;

    // phi_lambda(x) = c_minus * lambda^x (1, 0) for x < x^-,
    // phi_lambda(x) = c_plus * lambda^{-x} (0, 1) for x > x^+.
    cplx c_minus() const;
    cplx c_plus() const;

    // max over members and interior sites of ||(U - lambda) phi_k - phi_{k-1}||,
    // relative to the largest member amplitude, on window N_2(chs).
    double residual(const CoinSequence& coins) const;

  private:
    Vec2 q_coeff(int z, int j) const;

    cplx lambda_;
    int m_;
    int xm_, xp_;
    std::vector<std::vector<Vec2>> q_;  // q_[z - xm_][j], z in [x^-, x^+ + 1]
    std::vector<cplx> t21_;
};

// Resonant state for a non-zero resonance; throws DomainError("not a resonance")
// when |sigma(lambda)| is not small relative to its scale.
ResonantChain resonant_state(const CoinSequence& coins, cplx lambda, double tol = 1e-8);
// Chain of length res.mult; throws NumericalError if the chain identity fails
// beyond tol.
ResonantChain jordan_chain(const CoinSequence& coins, const Resonance& res, double tol = 1e-9);

// (lambda0 + h)^n as a truncated jet in h, j = 0..m-1, any integer n.
std::vector<cplx> power_jet(cplx lambda0, int n, int m);

} // namespace qwres
