#include "helpers.hpp"
#include "qwres/errors.hpp"
#include "qwres/expansion.hpp"
#include "qwres/gallery.hpp"

#include <doctest.h>

using namespace qwres;

TEST_CASE("expansion reconstructs the state and predicts the evolution") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 8; ++i) {
        const CoinSequence coins = random_walk(rng);
        const IntervalZ J = coins.hull().neighborhood(1);
        const WalkState psi = random_state(rng, J);
        const ExpansionResult e = expand(coins, psi, J);
        CHECK(e.residual < 1e-9);
        CHECK(max_distance(e.reconstruct(), psi, J) < 1e-9 * psi.norm());
        for (int n : {2 * J.size() + 1, 2 * J.size() + 7}) {
            const IntervalZ region = prediction_region(J, n);
            const WalkState pred = predict_evolution(e, n);
            const WalkState exact = evolve(coins, psi, n);
            CHECK(max_distance(pred, exact, region) < 1e-8 * psi.norm());
        }
    }
}

TEST_CASE("expansion with a double resonance") {
    const TripleBarrier t = triple_barrier(0.75, 12.0 / 13.0, 1.0 / 3.0);
    const IntervalZ J = IntervalZ::of(-1, 1);
    const WalkState psi = WalkState::delta(0, Vec2(0.6, cplx(0, 0.8)));
    const ExpansionResult e = expand(t.coins, psi, J);
    CHECK(e.residual < 1e-9);
    const int n = 2 * J.size() + 5;
    CHECK(max_distance(predict_evolution(e, n), evolve(t.coins, psi, n), prediction_region(J, n)) < 1e-9);
}

TEST_CASE("expand validates its interval") {
    const DoubleBarrier d = double_barrier(2, 0.5);
    CHECK_THROWS_AS(expand(d.coins, WalkState::delta(1, Vec2(1, 0)), IntervalZ::of(0, 1)), DomainError);
    CHECK_THROWS_AS(expand(d.coins, WalkState::delta(5, Vec2(1, 0)), IntervalZ::of(0, 2)), DomainError);
}

TEST_CASE("zero space of a double barrier") {
    const DoubleBarrier d = double_barrier(3, 0.4);
    const ZeroSpace z = zero_space(d.coins, IntervalZ::of(0, 3));
    CHECK(z.dim() + 2 * 3 == 2 * 4);
    for (int i = 0; i < z.dim(); ++i) CHECK(std::abs(z.member(i).norm() - 1.0) < 1e-12);
}

TEST_CASE("resolvent agrees with the Neumann series for large lambda") {
    std::mt19937_64 rng(12);
    const CoinSequence coins = random_walk(rng);
    const IntervalZ J = coins.hull();
    const CutoffMatrix cm = cutoff_matrix(coins, J);
    const WalkState f = random_state(rng, J);
    const cplx lam(1.6, 0.9);
    const Eigen::VectorXcd v = cm.vectorize(f);
    // (E - lambda)^{-1} = -sum_n E^n / lambda^{n+1}, ||E|| <= 1 < |lambda|
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size()), term = v / lam;
    for (int n = 0; n < 400; ++n) {
        acc -= term;
        term = cm.E * term / lam;
    }
    CHECK(max_distance(resolvent_apply(cm, lam, f), cm.state(acc)) < 1e-12 * f.norm());
}

TEST_CASE("contour projector matches the expansion block") {
    const DoubleBarrier d = double_barrier(2, 0.6);
    const IntervalZ J = IntervalZ::of(-1, 3);
    std::mt19937_64 rng(4);
    const WalkState psi = random_state(rng, J);
    const ExpansionResult e = expand(d.coins, psi, J);
    const CutoffMatrix cm = cutoff_matrix(d.coins, J);
    const auto poles = find_resonances(d.coins).resonances;
    for (size_t t = 0; t < e.terms.size(); ++t) {
        const cplx l0 = e.terms[t].res.lambda;
        const WalkState proj = contour_projector(cm, l0, contour_radius(l0, poles), psi, 128);
        CHECK(max_distance(proj, e.block(t), J) < 1e-6 * psi.norm());
    }
}

TEST_CASE("prediction region shrinks with |J|") {
    CHECK(prediction_region(IntervalZ::of(0, 2), 10) == IntervalZ::of(-3, 5));
}
