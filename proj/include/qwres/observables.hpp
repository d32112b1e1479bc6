#pragma once

#include "qwres/expansion.hpp"
#include "qwres/walk.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qwres {

// mu_n(x) = ||U^n psi(x)||^2 / ||psi||^2 over the window of U^n psi.
struct Distribution {
    int n = 0;
    IntervalZ window;
    std::vector<double> mu;
    double total = 0.0;

    double at(int x) const;
    double on(const IntervalZ& A) const;
};

Distribution distribution(const CoinSequence& coins, const WalkState& psi, int n);

// Least squares fit of log a_n - degree * log n = intercept + slope * n.
struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of the fit in log units
    int degree = 0;
    int n_lo = 0, n_hi = -1;
    int points = 0;
};

// Uses the points of [n_lo, n_hi] with a_n > 1e-125 (amplitudes, so the
// squared survival stays above 1e-250). Empty fit when fewer than 2 remain.
DecayFit fit_log_decay(const std::vector<double>& amplitude, int n_lo, int n_hi, int degree = 0);

struct DecayReport {
    DecayFit fit;  // on ||1_J U^n psi|| / ||psi||
    double Lambda0 = 0.0;
    int m0 = 0;
    double Lambda_psi = 0.0;
    int p_psi = 0;
    // sup of ||1_J U^n psi|| / (||psi|| n^{m-1} Lambda^n) over the series
    double M = 0.0;
    double M_prime = 0.0;
    // sup over n >= 2|J|+1 of the triangle bound from the expansion, same scaling
    double M_prime_bound = 0.0;
    bool envelope_ok = true;  // series never exceeds M_prime_bound envelope beyond n0
    bool partial = false;     // fit range shortened by underflow
};

struct SurvivalSeries {
    std::vector<double> s;  // ||1_J U^n psi||^2 / ||psi||^2, n = 0..n_max
    DecayReport report;
};

// Fits over [fit_lo, fit_hi] when given, else over the last half of the usable range.
SurvivalSeries survival(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J, int n_max,
                        std::optional<std::pair<int, int>> fit_range = std::nullopt);

// r^{k-2} d^k/dr^k (1/(1 - r^2))
double upsilon(int k, double r);

struct SurvivalReport {
    double tau = 0.0;        // sum_{n<=n_max} n mu_n(N_1(J) \ J)
    double tail_bound = 0.0;  // bound on the remaining sum
    // head + M^2 2^{1-2m} Upsilon_{2m-1}(Lambda) for (Lambda0, m0) and (Lambda(psi), p(Lambda(psi)));
    // infinite when the constant is undefined
    double bound_Lambda0 = 0.0;
    double bound_Lambda_psi = 0.0;
    double bound() const { return std::min(bound_Lambda0, bound_Lambda_psi); }
};

SurvivalReport mean_survival_time(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J, int n_max);

struct WeakLimitReport {
    int n = 0;
    double c_plus = 0.0;   // ||chi_+ U^n psi||^2
    double c_minus = 0.0;  // ||chi_- U^n psi||^2
    double flat = 0.0;     // ||chi_flat U^n psi||^2
};

// psi is normalized internally. For the free walk the outgoing regions are
// taken relative to the site 0.
WeakLimitReport weak_limit(const CoinSequence& coins, const WalkState& psi, int n);
// weak_limit for n = 0..n_max from a single evolution.
std::vector<WeakLimitReport> weak_limit_series(const CoinSequence& coins, const WalkState& psi, int n_max);

// (c_-, c_+) = (a_-, a_+)/(a_- + a_+) with a_+- = |phi(max / min of J)|^2,
// the limit for psi = 1_J phi_lambda.
std::pair<double, double> resonant_weak_limit(const ResonantChain& chain, const IntervalZ& J);

// (c_-, c_+) with mu_n(x) = c_+- |lambda|^{2(n -+ x)} off chs for psi = 1_J phi_lambda.
std::pair<double, double> restricted_state_constants(const ResonantChain& chain, const IntervalZ& J);

struct PointwisePrediction {
    double mu = 0.0;     // leading term from resonances with |lambda| = Lambda(psi)
    double bound = 0.0;  // |mu_n(x) - mu| <= bound from the lower resonances
    bool valid = false;  // x inside N_{n-1-2|J|}(J) and n > 2|J|
};

PointwisePrediction pointwise_asymptotics(const ExpansionResult& e, int x, int n);

} // namespace qwres
