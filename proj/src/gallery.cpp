#include "qwres/gallery.hpp"

#include "qwres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qwres {

namespace {

constexpr double kPi = std::numbers::pi;

cplx expi(double t) { return std::polar(1.0, t); }

} // namespace

DoubleBarrier double_barrier(int k, double r) {
    if (k < 1) throw DomainError("double_barrier: need k >= 1");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("double_barrier: need 0 < r < 1");
    DoubleBarrier d;
    d.k = k;
    d.r = r;
    d.coins = CoinSequence({{0, Coin::rotation(r)}, {k, Coin::rotation(r)}});
    d.alpha = barrier_alpha(d.coins);
    const double mod = std::pow(r, 1.0 / k);
    for (int j = 1; j <= 2 * k; ++j) d.resonances.push_back(mod * expi(kPi * (2 * j - 1) / (2.0 * k)));
    return d;
}

Vec2 DoubleBarrier::phi(int j, int x) const {
    if (j < 1 || j > 2 * k) throw DomainError("DoubleBarrier::phi: need 1 <= j <= 2k");
    const cplx lam = resonances[static_cast<size_t>(j - 1)];
    const double s = std::sqrt(1.0 - r * r);
    cplx left{}, right{};
    if (x <= -1) left = s;
    else if (x <= k - 1) left = 1.0;
    if (x >= k + 1) right = -r * s;
    else if (x >= 1) right = -r;
    return Vec2(left * std::pow(lam, x), right * std::pow(lam, -x));
}

cplx barrier_alpha(const CoinSequence& coins) {
    const IntervalZ h = coins.hull();
    if (h.size() < 2) throw DomainError("barrier_alpha: need at least two barrier sites");
    cplx a = coins.at(h.lo).c21() * coins.at(h.hi).c12();
    for (int x = h.lo + 1; x < h.hi; ++x) {
        if (!coins.at(x).is_diagonal()) throw DomainError("barrier_alpha: coins between the barriers must be diagonal");
        a *= coins.at(x).det();
    }
    return a;
}

std::vector<cplx> barrier_pulse(const CoinSequence& coins) {
    const IntervalZ h = coins.hull();
    if (h.size() < 2) throw DomainError("barrier_pulse: need at least two barrier sites");
    const int N = h.hi - h.lo;
    std::vector<cplx> a(static_cast<size_t>(N));
    a[0] = 1.0;
    for (int n = 0; n + 1 < N; ++n) {
        const Coin& c = coins.at(h.lo + 1 + n);
        if (!c.is_diagonal()) throw DomainError("barrier_pulse: coins between the barriers must be diagonal");
        a[static_cast<size_t>(n + 1)] = a[static_cast<size_t>(n)] * c.c22();
    }
    return a;
}

TripleBarrier triple_barrier(double r_m1, double r_0, double r_1, double flag_tol) {
    TripleBarrier t;
    t.r_m1 = r_m1;
    t.r_0 = r_0;
    t.r_1 = r_1;
    t.coins = CoinSequence({{-1, Coin::rotation(r_m1)}, {0, Coin::rotation(r_0)}, {1, Coin::rotation(r_1)}});
    const Coin &cm = t.coins.at(-1), &c0 = t.coins.at(0), &cp = t.coins.at(1);
    t.quartic = {-cm.c21() * cp.c12() * c0.det(), 0.0, -(c0.c21() * cp.c12() + cm.c21() * c0.c12()), 0.0, 1.0};
    t.multiplicity_two =
        r_m1 + r_1 > 0.0 && std::abs(r_0 - 2.0 * std::sqrt(r_m1 * r_1) / (r_m1 + r_1)) <= flag_tol;
    return t;
}

Mat2 GroupElement::transfer() const {
    Mat2 t;
    t << p, std::conj(q), q, std::conj(p);
    return expi(theta) * t;
}

Mat2 GroupElement::coin() const {
    Mat2 c;
    c << expi(theta), std::conj(q), -q, expi(-theta);
    return c / std::conj(p);
}

GroupElement GroupElement::normalized() const {
    GroupElement g = *this;
    g.theta = std::remainder(g.theta, 2.0 * kPi);  // (-pi, pi]
    if (g.theta < 0.0) {
        g.theta += kPi;
        g.p = -g.p;
        g.q = -g.q;
    }
    if (g.theta >= kPi) {
        g.theta -= kPi;
        g.p = -g.p;
        g.q = -g.q;
    }
    return g;
}

GroupElement GroupElement::from_coin(const Mat2& c) {
    if (std::abs(c(0, 0)) <= kAdmissibleTol || std::abs(c(1, 1)) <= kAdmissibleTol)
        throw DomainError("group element: coin outside the admissible set (C_11 = 0)");
    GroupElement g;
    g.theta = 0.5 * std::arg(c(0, 0) / c(1, 1));
    const cplx pbar = expi(g.theta) / c(0, 0);
    g.p = std::conj(pbar);
    g.q = -c(1, 0) * pbar;
    return g.normalized();
}

GroupElement GroupElement::from_transfer(const Mat2& t) {
    GroupElement g;
    g.theta = 0.5 * std::arg(t(0, 0) / std::conj(t(1, 1)));
    g.p = t(0, 0) * expi(-g.theta);
    g.q = t(1, 0) * expi(-g.theta);
    return g.normalized();
}

GroupElement group_product(const GroupElement& a, const GroupElement& b) {
    return GroupElement::from_transfer(a.transfer() * b.transfer());
}

Mat2 group_product(const Mat2& a, const Mat2& b) {
    return group_product(GroupElement::from_coin(a), GroupElement::from_coin(b)).coin();
}

Mat2 perturbation_coin(const Mat2& base, double theta, double eps) {
    const double n = std::sqrt(1.0 + 2.0 * eps * std::cos(theta));
    GroupElement g;
    g.p = (1.0 + eps * expi(theta)) / n;
    g.q = eps * expi(theta) / n;
    g.theta = 0.0;
    return group_product(g.coin(), base);
}

CoinSequence perturb(const CoinSequence& coins, double theta, double eps) {
    if (eps == 0.0) return coins;
    if (coins.is_free()) throw DomainError("perturb: the free walk has no rightmost support site");
    if (!(1.0 + 2.0 * eps * std::cos(theta) > 0.0)) throw DomainError("perturb: eps too large for this theta");
    const int xp = coins.hull().hi;
    return coins.with_coin(xp, Coin(perturbation_coin(coins.matrix_at(xp), theta, eps)));
}

cplx perturbation_gamma(const CoinSequence& coins, double theta, cplx lambda0, double h) {
    const cplx up = sigma(perturb(coins, theta, h))(lambda0);
    const cplx down = sigma(perturb(coins, theta, -h))(lambda0);
    return -(up - down) / (2.0 * h);
}

SplitTrack track_split(const CoinSequence& coins, const Resonance& lambda0, double theta, double eps) {
    SplitTrack t;
    t.theta = theta;
    t.eps = eps;
    const int m = lambda0.mult;
    const SigmaPoly s = sigma(coins);
    const auto tc = taylor_coefficients(s.coeffs, lambda0.lambda);
    t.c = tc[static_cast<size_t>(m)];
    t.gamma = perturbation_gamma(coins, theta, lambda0.lambda);
    t.predicted = std::pow(eps * std::abs(t.gamma / t.c), 1.0 / m);

    auto res = find_resonances(perturb(coins, theta, eps)).resonances;
    std::sort(res.begin(), res.end(), [&](const Resonance& a, const Resonance& b) {
        return std::abs(a.lambda - lambda0.lambda) < std::abs(b.lambda - lambda0.lambda);
    });
    int count = 0;
    for (const auto& r : res) {
        if (count >= m) break;
        t.near.push_back(r);
        count += r.mult;
        if (r.mult != 1) t.all_simple = false;
        t.displacement = std::max(t.displacement, std::abs(r.lambda - lambda0.lambda));
    }
    return t;
}

double loglog_slope(const std::vector<SplitTrack>& tracks) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& t : tracks) {
        if (!(t.eps > 0.0 && t.displacement > 0.0)) continue;
        const double x = std::log(t.eps), y = std::log(t.displacement);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nan("");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool c12_support_in(const CoinSequence& coins, int k) {
    if (k < 1) return false;
    for (const auto& [x, c] : coins.coins()) {
        if (c.c12() != cplx{} && ((x % k) + k) % k != 0) return false;
    }
    return true;
}

GaugeResult gauge_transform(const CoinSequence& coins, const WalkState& psi, int l, int k) {
    if (!c12_support_in(coins, k)) {
        std::ostringstream os;
        os << "gauge_transform: supp c12 is not contained in " << k << "Z";
        throw DomainError(os.str());
    }
    GaugeResult g;
    g.factor = expi(l * kPi / k);
    g.state = WalkState(psi.window());
    for (int x = psi.window().lo; x <= psi.window().hi; ++x) {
        const cplx ph = expi(l * kPi * x / k);
        const Vec2 v = psi.at(x);
        g.state.set(x, Vec2(ph * v(0), std::conj(ph) * v(1)));
    }
    return g;
}

CoinSequence random_walk(std::mt19937_64& rng, const RandomWalkOptions& opt) {
    if (opt.max_sites < 1 || opt.stride < 1) throw DomainError("random_walk: need max_sites >= 1 and stride >= 1");
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<int> nsites(1, opt.max_sites);
    const int n = nsites(rng);
    const double tmax = std::acos(opt.min_c11);

    auto draw = [&](bool mixing) -> Coin {
        const double t = mixing ? tmax * (0.05 + 0.95 * u01(rng)) : 0.0;
        if (opt.real) {
            const double c = std::cos(t), s = std::sin(t);
            const double sgn = u01(rng) < 0.5 ? 1.0 : -1.0;
            Mat2 m;
            m << c, s, -sgn * s, sgn * c;
            if (!mixing && sgn > 0) m(1, 1) = -1.0;
            return Coin(m);
        }
        const double a1 = 2 * kPi * u01(rng), a2 = 2 * kPi * u01(rng), ph = 2 * kPi * u01(rng);
        const cplx a = std::cos(t) * expi(a1), b = std::sin(t) * expi(a2), e = expi(ph);
        Mat2 m;
        m << a, b, -e * std::conj(b), e * std::conj(a);
        return Coin(m);
    };

    // Sites 0, stride, 2 stride, ... carry mixing coins; the ends always do.
    const int last = (n - 1) * opt.stride;
    std::map<int, Coin> coins;
    for (int x = 0; x <= last; ++x) {
        const bool on_grid = x % opt.stride == 0;
        const bool end = x == 0 || x == last;
        if (end) {
            coins[x] = draw(true);
            continue;
        }
        if (u01(rng) < opt.identity_prob) continue;
        coins[x] = draw(on_grid);
    }
    if (last == 0 && coins.empty()) coins[0] = draw(true);
    return CoinSequence(coins);
}

WalkState random_state(std::mt19937_64& rng, const IntervalZ& window) {
    std::normal_distribution<double> g(0.0, 1.0);
    WalkState s(window);
    for (int x = window.lo; x <= window.hi; ++x) s.set(x, Vec2(cplx(g(rng), g(rng)), cplx(g(rng), g(rng))));
    return s;
}

} // namespace qwres
