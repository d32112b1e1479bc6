#pragma once

#include "qwres/resonance.hpp"
#include "qwres/walk.hpp"

#include <array>
#include <random>
#include <vector>

namespace qwres {

// Rotation coins of strength r at 0 and k, identity elsewhere.
struct DoubleBarrier {
    int k = 1;
    double r = 0.0;
    CoinSequence coins;
    cplx alpha;                    // lambda^{2k} = alpha at every resonance
    std::vector<cplx> resonances;  // r^{1/k} e^{i pi (2j-1)/2k}, j = 1..2k

    // Closed-form resonant state phi_j(x), j = 1..2k.
    Vec2 phi(int j, int x) const;
};

DoubleBarrier double_barrier(int k, double r);

// alpha = c21(x^-) c12(x^+) prod_{x^- < x < x^+} det C(x) for walks whose coins
// strictly inside chs are diagonal; throws DomainError otherwise.
cplx barrier_alpha(const CoinSequence& coins);

// a_n with U^n psi(x^- + 1 + n) = (0, a_n) for psi(x^- + 1) = (0, 1), n < N, under
// the same diagonal-interior assumption: a_0 = 1, a_{n+1} = a_n c22(x^- + 1 + n).
std::vector<cplx> barrier_pulse(const CoinSequence& coins);

struct TripleBarrier {
    double r_m1 = 0.0, r_0 = 0.0, r_1 = 0.0;
    CoinSequence coins;
    // lambda^4 - (c21(0) c12(1) + c21(-1) c12(0)) lambda^2 - c21(-1) c12(1) det C(0), ascending
    std::array<cplx, 5> quartic{};
    bool multiplicity_two = false;  // r_0 = 2 sqrt(r_m1 r_1)/(r_m1 + r_1)
};

TripleBarrier triple_barrier(double r_m1, double r_0, double r_1, double flag_tol = 1e-9);

// (p, q, theta) with |p|^2 - |q|^2 = 1, modulo (p, q, theta) ~ (-p, -q, theta - pi).
struct GroupElement {
    cplx p{1.0};
    cplx q{0.0};
    double theta = 0.0;

    // e^{i theta} [[p, conj q], [q, conj p]]
    Mat2 transfer() const;
    // conj(p)^{-1} [[e^{i theta}, conj q], [-q, e^{-i theta}]]
    Mat2 coin() const;
    // representative with theta in [0, pi)
    GroupElement normalized() const;

    static GroupElement from_coin(const Mat2& c);
    static GroupElement from_transfer(const Mat2& t);
};

GroupElement group_product(const GroupElement& a, const GroupElement& b);
// a * b = M(M^{-1}(a) M^{-1}(b)); DomainError when a_11 or b_11 vanishes.
Mat2 group_product(const Mat2& a, const Mat2& b);

// B(theta, eps) = C_{p, q, 0} * C(x^+) with p = (1 + eps e^{i theta})/sqrt(1 + 2 eps cos theta),
// q = eps e^{i theta}/sqrt(1 + 2 eps cos theta).
Mat2 perturbation_coin(const Mat2& base, double theta, double eps);
// Coin at x^+ replaced by B(theta, eps); eps = 0 returns the walk unchanged.
CoinSequence perturb(const CoinSequence& coins, double theta, double eps);

// gamma(theta, lambda0) = -d/d eps sigma_eps(lambda0) at eps = 0 (central difference).
cplx perturbation_gamma(const CoinSequence& coins, double theta, cplx lambda0, double h = 1e-6);

struct SplitTrack {
    double theta = 0.0;
    double eps = 0.0;
    cplx gamma;
    cplx c;                       // sigma^{(m)}(lambda0)/m!
    std::vector<Resonance> near;  // the m perturbed roots closest to lambda0
    double displacement = 0.0;    // max |lambda - lambda0| over `near`
    double predicted = 0.0;       // (eps |gamma/c|)^{1/m}
    bool all_simple = true;
};

// Perturbs at the rightmost support site and follows the m roots nearest a
// resonance lambda0 of multiplicity m.
SplitTrack track_split(const CoinSequence& coins, const Resonance& lambda0, double theta, double eps);

// Slope of log displacement against log eps.
double loglog_slope(const std::vector<SplitTrack>& tracks);

struct GaugeResult {
    cplx factor;  // e^{i l pi / k}
    WalkState state;
};

// diag(e^{i l pi x/k}, e^{-i l pi x/k}) psi; DomainError unless supp c12 lies in kZ.
GaugeResult gauge_transform(const CoinSequence& coins, const WalkState& psi, int l, int k);
bool c12_support_in(const CoinSequence& coins, int k);

struct RandomWalkOptions {
    int max_sites = 8;             // grid sites drawn from [1, max_sites]; |chs|_Z = (n-1) stride + 1
    bool real = false;             // real orthogonal coins
    int stride = 1;                // non-diagonal coins only on stride Z
    double identity_prob = 0.25;   // interior sites left free
    double min_c11 = 0.1;          // keeps sigma's dynamic range moderate
};

CoinSequence random_walk(std::mt19937_64& rng, const RandomWalkOptions& opt = {});
WalkState random_state(std::mt19937_64& rng, const IntervalZ& window);

} // namespace qwres
