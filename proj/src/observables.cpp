#include "qwres/observables.hpp"

#include "qwres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qwres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binom(int n, int l) {
    double r = 1.0;
    for (int i = 1; i <= l; ++i) r = r * (n - l + i) / i;
    return r;
}

double log_binom(int n, int l) { return std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0); }

// Envelope shape n^{m-1} or C(n, m-1), in logs.
using LogShape = std::function<double(int)>;

LogShape power_shape(int m) {
    return [m](int n) { return m > 1 ? (m - 1) * std::log(static_cast<double>(n)) : 0.0; };
}

LogShape binomial_shape(int m) {
    return [m](int n) { return log_binom(n, m - 1); };
}

// Triangle-inequality bound on ||1_J U^n psi|| / ||psi|| from the expansion,
// divided by exp(shape(n)) Lambda^n. Valid for n > 2|J|.
double envelope_ratio(const ExpansionResult& e, int n, double Lambda, const LogShape& shape) {
    double acc = 0.0;
    const double ln_n_shape = shape(n) + n * std::log(Lambda);
    for (const auto& t : e.terms) {
        const double lr = std::log(std::abs(t.res.lambda));
        for (int k = 1; k <= t.res.mult; ++k) {
            const double ck = std::abs(t.coeffs[static_cast<size_t>(k - 1)]);
            if (ck == 0.0) continue;
            for (int l = 0; l <= k - 1 && l <= n; ++l) {
                const double norm = t.restricted[static_cast<size_t>(k - l - 1)];
                acc += ck * norm * std::exp(log_binom(n, l) + (n - l) * lr - ln_n_shape);
            }
        }
    }
    return e.psi_norm > 0.0 ? acc / e.psi_norm : acc;
}

double observed_ratio(double amp, int n, double Lambda, const LogShape& shape) {
    if (amp <= 0.0) return 0.0;
    return std::exp(std::log(amp) - shape(n) - n * std::log(Lambda));
}

struct Series {
    std::vector<double> s;     // ||1_J U^n psi||^2 / ||psi||^2
    std::vector<double> edge;  // mu_n(N_1(J) \ J)
};

Series run_series(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J, int n_max) {
    const double n2 = psi.norm2();
    Series out;
    out.s.reserve(static_cast<size_t>(n_max + 1));
    out.edge.reserve(static_cast<size_t>(n_max + 1));
    WalkState cur = psi;
    for (int n = 0; n <= n_max; ++n) {
        out.s.push_back(cur.norm2_on(J) / n2);
        out.edge.push_back((cur.at(J.lo - 1).squaredNorm() + cur.at(J.hi + 1).squaredNorm()) / n2);
        if (n < n_max) cur = apply_U(coins, cur);
    }
    return out;
}

void check_survival_args(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J, int n_max) {
    if (psi.norm2() == 0.0) throw DomainError("survival: psi must be non-zero");
    if (J.is_empty() || !J.contains(psi.support()) || !J.contains(coins.hull()))
        throw DomainError("survival: J must contain supp psi and chs(C - I_2)");
    if (n_max < 1) throw DomainError("survival: n_max must be positive");
}

// sup of the rigorous envelope over n in [from, to]
double envelope_sup(const ExpansionResult& e, int from, int to, double Lambda, const LogShape& shape) {
    double m = 0.0;
    for (int n = from; n <= to; ++n) m = std::max(m, envelope_ratio(e, n, Lambda, shape));
    return m;
}

} // namespace

double Distribution::at(int x) const {
    if (!window.contains(x)) return 0.0;
    return mu[static_cast<size_t>(x - window.lo)];
}

double Distribution::on(const IntervalZ& A) const {
    const IntervalZ w = window.intersect(A);
    double s = 0.0;
    for (int x = w.lo; x <= w.hi; ++x) s += at(x);
    return s;
}

Distribution distribution(const CoinSequence& coins, const WalkState& psi, int n) {
    const double n2 = psi.norm2();
    if (n2 == 0.0) throw DomainError("distribution: psi must be non-zero");
    const WalkState s = evolve(coins, psi, n);
    Distribution d;
    d.n = n;
    d.window = s.window();
    for (int x = d.window.lo; x <= d.window.hi; ++x) {
        d.mu.push_back(s.at(x).squaredNorm() / n2);
        d.total += d.mu.back();
    }
    return d;
}

DecayFit fit_log_decay(const std::vector<double>& amplitude, int n_lo, int n_hi, int degree) {
    DecayFit f;
    f.degree = degree;
    f.n_lo = n_lo;
    f.n_hi = n_hi;
    std::vector<double> xs, ys;
    for (int n = std::max(n_lo, 0); n <= n_hi && n < static_cast<int>(amplitude.size()); ++n) {
        const double a = amplitude[static_cast<size_t>(n)];
        if (!(a > 1e-125)) continue;
        if (degree > 0 && n == 0) continue;
        xs.push_back(n);
        ys.push_back(std::log(a) - (degree > 0 ? degree * std::log(static_cast<double>(n)) : 0.0));
    }
    f.points = static_cast<int>(xs.size());
    if (f.points < 2) return f;
    const double N = f.points;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    f.slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / N;
    double rss = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - f.intercept - f.slope * xs[i];
        rss += d * d;
    }
    f.residual = std::sqrt(rss / N);
    return f;
}

SurvivalSeries survival(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J, int n_max,
                        std::optional<std::pair<int, int>> fit_range) {
    check_survival_args(coins, psi, J, n_max);
    SurvivalSeries out;
    out.s = run_series(coins, psi, J, n_max).s;
    std::vector<double> amp(out.s.size());
    for (size_t i = 0; i < amp.size(); ++i) amp[i] = std::sqrt(out.s[i]);

    const ExpansionResult e = expand(coins, psi, J);
    std::vector<Resonance> res;
    for (const auto& t : e.terms) res.push_back(t.res);
    const SpectrumSummary sum = summarize(res, coins.hull().size());

    DecayReport& r = out.report;
    r.Lambda0 = sum.Lambda0;
    r.m0 = sum.m0;
    r.Lambda_psi = e.Lambda_psi;
    r.p_psi = e.Lambda_psi > 0.0 ? std::max(1, sum.p_at(e.Lambda_psi)) : 0;

    int usable = -1;
    for (int n = 0; n <= n_max; ++n)
        if (out.s[static_cast<size_t>(n)] > 1e-250) usable = n;
    int lo, hi;
    if (fit_range) {
        lo = fit_range->first;
        hi = fit_range->second;
        if (hi > usable) {
            r.partial = true;
            hi = usable;
        }
    } else {
        hi = usable;
        lo = std::max(1, usable / 2);
        r.partial = usable < n_max;
    }
    r.fit = fit_log_decay(amp, lo, hi, std::max(0, r.p_psi - 1));

    const int n0 = 2 * J.size() + 1;
    if (r.Lambda0 > 0.0) {
        const auto shape = power_shape(r.m0);
        for (int n = 1; n <= n_max; ++n)
            r.M = std::max(r.M, observed_ratio(amp[static_cast<size_t>(n)], n, r.Lambda0, shape));
    }
    if (r.Lambda_psi > 0.0) {
        const auto shape = power_shape(r.p_psi);
        for (int n = 1; n <= n_max; ++n)
            r.M_prime = std::max(r.M_prime, observed_ratio(amp[static_cast<size_t>(n)], n, r.Lambda_psi, shape));
        r.M_prime_bound = envelope_sup(e, n0, std::max(n_max, n0) + 2000, r.Lambda_psi, shape);
        for (int n = n0; n <= n_max; ++n) {
            const double env = r.M_prime_bound * std::exp(shape(n) + n * std::log(r.Lambda_psi));
            if (amp[static_cast<size_t>(n)] > env * (1.0 + 1e-6) + 1e-13) r.envelope_ok = false;
        }
    } else {
        for (int n = n0; n <= n_max; ++n)
            if (amp[static_cast<size_t>(n)] > 1e-13) r.envelope_ok = false;
    }
    return out;
}

double upsilon(int k, double r) {
    if (k < 1) throw DomainError("upsilon: k must be positive");
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("upsilon: r must lie in [0, 1)");
    // 1/(1 - r^2) = (1/(1 - r) + 1/(1 + r)) / 2
    const double fact = std::tgamma(k + 1.0);
    const double d = 0.5 * fact * (std::pow(1.0 - r, -(k + 1)) + (k % 2 ? -1.0 : 1.0) * std::pow(1.0 + r, -(k + 1)));
    return std::pow(r, k - 2) * d;
}

SurvivalReport mean_survival_time(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J, int n_max) {
    check_survival_args(coins, psi, J, n_max);
    const Series ser = run_series(coins, psi, J, n_max);
    SurvivalReport rep;
    for (int n = 1; n <= n_max; ++n) rep.tau += n * ser.edge[static_cast<size_t>(n)];

    const ExpansionResult e = expand(coins, psi, J);
    std::vector<Resonance> res;
    for (const auto& t : e.terms) res.push_back(t.res);
    const SpectrumSummary sum = summarize(res, coins.hull().size());
    const double Lpsi = e.Lambda_psi;
    const int ppsi = Lpsi > 0.0 ? std::max(1, sum.p_at(Lpsi)) : 0;
    const int n0 = 2 * J.size() + 1;

    // tail: sum_{n > n_max} n mu_n(N_1(J) \ J) <= sum_{n > n_max} n s_{n-1}
    if (Lpsi > 0.0 && n_max >= n0) {
        const auto shape = power_shape(ppsi);
        const double Mb = envelope_sup(e, n_max, n_max + 2000, Lpsi, shape);
        for (int n = n_max + 1; n < n_max + 10000000; ++n) {
            const double env = Mb * std::exp(shape(n - 1) + (n - 1) * std::log(Lpsi));
            const double term = n * env * env;
            rep.tail_bound += term;
            if (term <= 1e-18 * (rep.tau + rep.tail_bound)) break;
        }
    } else if (n_max < n0) {
        rep.tail_bound = kInf;
    }

    std::vector<double> amp(ser.s.size());
    for (size_t i = 0; i < amp.size(); ++i) amp[i] = std::sqrt(ser.s[i]);

    // head + M^2 2^{-2l-1} Upsilon_{2l+1}(Lambda) with s_n <= M^2 C(n, l)^2 Lambda^{2n} for n >= l
    auto tail_envelope = [&](double Lambda, int m) {
        if (!(Lambda > 0.0) || m < 1) return kInf;
        const int l = m - 1;
        double head = 0.0;
        for (int n = 1; n <= l; ++n) head += n * ser.s[static_cast<size_t>(n - 1)];
        const auto shape = binomial_shape(m);
        double M = 0.0;
        for (int n = l; n <= n_max; ++n) M = std::max(M, observed_ratio(amp[static_cast<size_t>(n)], n, Lambda, shape));
        if (n_max >= n0) M = std::max(M, envelope_sup(e, n_max + 1, n_max + 2000, Lambda, shape));
        else return kInf;
        return head + M * M * std::pow(2.0, -2 * l - 1) * upsilon(2 * l + 1, Lambda);
    };
    rep.bound_Lambda0 = tail_envelope(sum.Lambda0, sum.m0);
    rep.bound_Lambda_psi = tail_envelope(Lpsi, ppsi);
    return rep;
}

namespace {

WeakLimitReport split_mass(const WalkState& s, const IntervalZ& h, double n2, int n) {
    WeakLimitReport rep;
    rep.n = n;
    const IntervalZ w = s.window();
    for (int x = w.lo; x <= w.hi; ++x) {
        const double l = std::norm(s.left(x)), r = std::norm(s.right(x));
        if (x < h.lo) {
            rep.c_minus += l;
            rep.flat += r;
        } else if (x > h.hi) {
            rep.c_plus += r;
            rep.flat += l;
        } else {
            rep.flat += l + r;
        }
    }
    rep.c_minus /= n2;
    rep.c_plus /= n2;
    rep.flat /= n2;
    return rep;
}

IntervalZ weak_limit_core(const CoinSequence& coins) { return coins.is_free() ? IntervalZ::of(0, 0) : coins.hull(); }

} // namespace

WeakLimitReport weak_limit(const CoinSequence& coins, const WalkState& psi, int n) {
    const double n2 = psi.norm2();
    if (n2 == 0.0) throw DomainError("weak_limit: psi must be non-zero");
    return split_mass(evolve(coins, psi, n), weak_limit_core(coins), n2, n);
}

std::vector<WeakLimitReport> weak_limit_series(const CoinSequence& coins, const WalkState& psi, int n_max) {
    const double n2 = psi.norm2();
    if (n2 == 0.0) throw DomainError("weak_limit: psi must be non-zero");
    const IntervalZ h = weak_limit_core(coins);
    std::vector<WeakLimitReport> out;
    WalkState cur = psi;
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(split_mass(cur, h, n2, n));
        if (n < n_max) cur = apply_U(coins, cur);
    }
    return out;
}

std::pair<double, double> resonant_weak_limit(const ResonantChain& chain, const IntervalZ& J) {
    const double am = chain.at(1, J.lo).squaredNorm();
    const double ap = chain.at(1, J.hi).squaredNorm();
    return {am / (am + ap), ap / (am + ap)};
}

std::pair<double, double> restricted_state_constants(const ResonantChain& chain, const IntervalZ& J) {
    const double n2 = chain.state(1, J).norm2();
    return {std::norm(chain.c_minus()) / n2, std::norm(chain.c_plus()) / n2};
}

PointwisePrediction pointwise_asymptotics(const ExpansionResult& e, int x, int n) {
    PointwisePrediction p;
    p.valid = n > 2 * e.J.size() && prediction_region(e.J, n).contains(x);
    const double top = e.Lambda_psi;
    Vec2 lead = Vec2::Zero();
    double rem = 0.0;
    for (const auto& t : e.terms) {
        const cplx lam = t.res.lambda;
        const bool leading = top > 0.0 && std::abs(lam) >= top * (1.0 - 1e-9);
        for (int k = 1; k <= t.res.mult; ++k) {
            const cplx ck = t.coeffs[static_cast<size_t>(k - 1)];
            for (int l = 0; l <= k - 1; ++l) {
                const Vec2 v = ck * binom(n, l) * std::pow(lam, n - l) * t.chain.at(k - l, x);
                if (leading)
                    lead += v;
                else
                    rem += v.norm();
            }
        }
    }
    const double n2 = e.psi_norm * e.psi_norm;
    const double a = lead.norm();
    p.mu = a * a / n2;
    p.bound = (2.0 * a * rem + rem * rem) / n2;
    return p;
}

} // namespace qwres
