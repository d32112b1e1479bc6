#include "helpers.hpp"
#include "qwres/gallery.hpp"
#include "qwres/observables.hpp"

#include <doctest.h>

using namespace qwres;

namespace {

// sum_j (2j)!/(2j-k)! r^{2j-2}, the power series of r^{k-2} d^k/dr^k (1 - r^2)^{-1}.
double upsilon_series(int k, double r) {
    double s = 0.0;
    for (int j = 1; j < 4000; ++j) {
        const int e = 2 * j;
        if (e < k) continue;
        double f = 1.0;
        for (int i = 0; i < k; ++i) f *= e - i;
        s += f * std::pow(r, e - 2);
    }
    return s;
}

} // namespace

TEST_CASE("Upsilon closed forms and series") {
    for (double r : {0.1, 0.5, 0.8}) {
        const double d = 1 - r * r;
        CHECK(upsilon(1, r) == doctest::Approx(2.0 / (d * d)).epsilon(1e-12));
        CHECK(upsilon(3, r) == doctest::Approx(24 * r * r * (r * r + 1) / std::pow(d, 4)).epsilon(1e-12));
        for (int k : {1, 2, 3, 5, 7}) CHECK(upsilon(k, r) == doctest::Approx(upsilon_series(k, r)).epsilon(1e-9));
    }
}

TEST_CASE("distribution is a probability measure") {
    std::mt19937_64 rng(6);
    const CoinSequence coins = random_walk(rng);
    const WalkState psi = random_state(rng, coins.hull());
    for (int n : {0, 5, 40}) {
        const Distribution mu = distribution(coins, psi, n);
        CHECK(mu.total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mu.on(mu.window) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const Distribution free = distribution(CoinSequence{}, WalkState::delta(0, Vec2(1, 0)), 9);
    CHECK(free.at(-9) == doctest::Approx(1.0));
}

TEST_CASE("survival decays at the rate of the leading resonance") {
    const DoubleBarrier d = double_barrier(2, 0.5);
    const IntervalZ J = IntervalZ::of(0, 2);
    const WalkState psi = WalkState::delta(1, Vec2(0, 1));
    const SurvivalSeries s = survival(d.coins, psi, J, 200);
    REQUIRE(s.s.size() == 201);
    CHECK(s.s[0] == doctest::Approx(1.0));
    for (size_t n = 1; n < s.s.size(); ++n) CHECK(s.s[n] <= s.s[n - 1] + 1e-15);
    CHECK(s.report.fit.slope == doctest::Approx(std::log(std::sqrt(0.5))).epsilon(1e-3));
    CHECK(s.report.envelope_ok);
}

TEST_CASE("pulse recursion between diagonal barriers") {
    std::map<int, Coin> m{{0, Coin::rotation(0.3)}, {6, Coin::rotation(0.8)}};
    for (int x = 1; x < 6; ++x) m.emplace(x, Coin::diagonal(std::polar(1.0, 0.2 * x), std::polar(1.0, -0.5 * x)));
    const CoinSequence coins(m);
    const auto a = barrier_pulse(coins);
    REQUIRE(a.size() == 6);
    WalkState psi = WalkState::delta(1, Vec2(0, 1));
    for (size_t n = 0; n < a.size(); ++n) {
        CHECK(std::abs(psi.right(1 + static_cast<int>(n)) - a[n]) < 1e-14);
        psi = apply_U(coins, psi);
    }
    CHECK(std::abs(std::abs(barrier_alpha(coins)) - 0.3 * 0.8) < 1e-14);
}

TEST_CASE("weak limit masses sum to one") {
    std::mt19937_64 rng(10);
    const CoinSequence coins = random_walk(rng);
    const WalkState psi = random_state(rng, coins.hull());
    for (const auto& w : weak_limit_series(coins, psi, 60))
        CHECK(w.c_plus + w.c_minus + w.flat == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean survival time is finite and below the bound") {
    const DoubleBarrier d = double_barrier(1, 0.5);
    const IntervalZ J = IntervalZ::of(0, 1);
    const SurvivalReport r = mean_survival_time(d.coins, WalkState::delta(0, Vec2(0, 1)), J, 400);
    CHECK(std::isfinite(r.tau));
    CHECK(r.tau > 0.0);
    CHECK(r.tail_bound < 1e-20);
    CHECK(r.tau <= r.bound() * (1 + 1e-12));
}

TEST_CASE("log-decay fit on an exact geometric series") {
    std::vector<double> a;
    for (int n = 0; n <= 50; ++n) a.push_back(3.0 * std::pow(0.7, n) * n * n);
    const DecayFit f = fit_log_decay(a, 10, 50, 2);
    CHECK(f.slope == doctest::Approx(std::log(0.7)).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}
