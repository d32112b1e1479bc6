#include "helpers.hpp"
#include "qwres/errors.hpp"
#include "qwres/gallery.hpp"
#include "qwres/resonance.hpp"

#include <doctest.h>

using namespace qwres;

TEST_CASE("sigma roots agree with cut-off eigenvalues") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 25; ++i) {
        RandomWalkOptions o;
        o.real = i % 2 == 1;
        const CoinSequence coins = random_walk(rng, o);
        const ResonanceReport rep = find_resonances(coins, Method::both);
        REQUIRE(rep.cross_distance.has_value());
        CHECK(*rep.cross_distance < 1e-6);
        CHECK(rep.summary.sum_mult <= rep.summary.budget);
        for (const auto& r : rep.resonances) CHECK(std::abs(r.lambda) < 1.0);
    }
}

TEST_CASE("double barrier resonances match the closed form") {
    for (int k : {1, 2, 3, 5}) {
        const DoubleBarrier d = double_barrier(k, 0.5);
        const ResonanceReport rep = find_resonances(d.coins, Method::both);
        REQUIRE(rep.resonances.size() == static_cast<size_t>(2 * k));
        for (cplx z : d.resonances) {
            CHECK(std::abs(std::pow(z, 2 * k) - d.alpha) < 1e-12);
            double best = 1e300;
            for (const auto& r : rep.resonances) best = std::min(best, std::abs(r.lambda - z));
            CHECK(best < 1e-10);
        }
        CHECK(rep.summary.Lambda0 == doctest::Approx(std::pow(0.5, 1.0 / k)));
        CHECK(rep.summary.zero_dim.value_or(-1) == 2);
    }
}

TEST_CASE("resonant states solve the eigen-equation with the outgoing shape") {
    const DoubleBarrier d = double_barrier(3, 0.7);
    for (int j = 1; j <= 6; ++j) {
        const cplx lam = d.resonances[static_cast<size_t>(j - 1)];
        const ResonantChain ch = resonant_state(d.coins, lam);
        CHECK(ch.residual(d.coins) < 1e-12);
        const IntervalZ W = IntervalZ::of(-6, 9);
        const WalkState phi = ch.state(1, W);
        const WalkState Uphi = apply_U(d.coins, phi);
        // U(1_W phi) = lambda phi away from the window edges
        const IntervalZ inner = IntervalZ::of(-5, 8);
        WalkState lhs = Uphi.restrict(inner), rhs = (lam * phi).restrict(inner);
        CHECK(max_distance(lhs, rhs) < 1e-12 * phi.max_abs());
        CHECK(std::abs(phi.left(-4) - ch.c_minus() * std::pow(lam, -4)) < 1e-12 * phi.max_abs());
        CHECK(std::abs(phi.right(7) - ch.c_plus() * std::pow(lam, -7)) < 1e-12 * phi.max_abs());
        // closed form up to normalization
        const cplx scale = ch.at(1, 1)(1) / d.phi(j, 1)(1);
        for (int x = -3; x <= 6; ++x) CHECK((ch.at(1, x) - scale * d.phi(j, x)).norm() < 1e-10 * std::abs(scale));
    }
    CHECK_THROWS_AS(resonant_state(d.coins, cplx(0.1, 0.1)), DomainError);
}

TEST_CASE("Jordan chain at a double resonance") {
    const TripleBarrier t = triple_barrier(0.75, 12.0 / 13.0, 1.0 / 3.0);
    const ResonanceReport rep = find_resonances(t.coins);
    for (const auto& r : rep.resonances) {
        const ResonantChain ch = jordan_chain(t.coins, r);
        CHECK(ch.length() == 2);
        CHECK(ch.residual(t.coins) < 1e-10);
        // (U - lambda) phi_2 = phi_1 inside chs
        const IntervalZ W = ch.chs().neighborhood(4);
        const WalkState p1 = ch.state(1, W), p2 = ch.state(2, W);
        const WalkState lhs = apply_U(t.coins, p2) - r.lambda * p2;
        CHECK(max_distance(lhs, p1, ch.chs().neighborhood(2)) < 1e-10 * p2.max_abs());
    }
}

TEST_CASE("sign gauge leaves resonances unchanged") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10; ++i) {
        const CoinSequence coins = random_walk(rng);
        std::map<int, Coin> flipped;
        for (const auto& [x, c] : coins.coins()) {
            Mat2 m = c.matrix();
            m.col(1) *= -1.0;
            m.row(1) *= -1.0;
            flipped.emplace(x, Coin(m));
        }
        const auto a = find_resonances(coins).resonances;
        const auto b = find_resonances(CoinSequence(flipped)).resonances;
        std::vector<RootCluster> ca, cb;
        for (const auto& r : a) ca.push_back({r.lambda, r.mult, 0.0});
        for (const auto& r : b) cb.push_back({r.lambda, r.mult, 0.0});
        CHECK(multiset_distance(ca, cb) < 1e-9);
    }
}

TEST_CASE("cut-off matrix requires the convex hull") {
    const DoubleBarrier d = double_barrier(2, 0.3);
    CHECK_THROWS_AS(cutoff_matrix(d.coins, IntervalZ::of(0, 1)), DomainError);
    const CutoffMatrix cm = cutoff_matrix(d.coins, IntervalZ::of(-1, 3));
    CHECK(cm.E.rows() == 10);
    // contraction: ||E|| <= 1
    CHECK(cm.E.operatorNorm() <= 1.0 + 1e-12);
}

TEST_CASE("power jet") {
    const cplx l0(0.3, 0.4);
    const auto j = power_jet(l0, -3, 3);
    CHECK(std::abs(j[0] - std::pow(l0, -3)) < 1e-12);
    CHECK(std::abs(j[1] + 3.0 * std::pow(l0, -4)) < 1e-11);
    CHECK(std::abs(j[2] - 6.0 * std::pow(l0, -5)) < 1e-10);
}
