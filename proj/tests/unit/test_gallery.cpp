#include "helpers.hpp"
#include "qwres/errors.hpp"
#include "qwres/gallery.hpp"
#include "qwres/resonance.hpp"

#include <doctest.h>

using namespace qwres;

TEST_CASE("double barrier construction") {
    CHECK_THROWS_AS(double_barrier(2, 1.0), DomainError);
    CHECK_THROWS_AS(double_barrier(2, 0.0), DomainError);
    const DoubleBarrier d = double_barrier(4, 0.3);
    CHECK(d.coins.support() == std::vector<int>{0, 4});
    CHECK(d.resonances.size() == 8);
    for (cplx z : d.resonances) CHECK(std::abs(z) == doctest::Approx(std::pow(0.3, 0.25)));
}

TEST_CASE("group maps are mutually inverse") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        const Mat2 c = test::random_unitary(rng);
        const GroupElement g = GroupElement::from_coin(c);
        CHECK(std::abs(std::norm(g.p) - std::norm(g.q) - 1.0) < 1e-12);
        CHECK((g.coin() - c).norm() < 1e-12);
        const GroupElement h = GroupElement::from_transfer(g.transfer());
        CHECK((h.transfer() - g.transfer()).norm() < 1e-12);
        CHECK((g.normalized().coin() - c).norm() < 1e-12);
        CHECK(g.normalized().theta >= 0.0);
        CHECK(g.normalized().theta < M_PI);
    }
}

TEST_CASE("group product is associative with identity and inverse") {
    std::mt19937_64 rng(78);
    for (int i = 0; i < 30; ++i) {
        const Mat2 a = test::random_unitary(rng), b = test::random_unitary(rng), c = test::random_unitary(rng);
        CHECK((group_product(group_product(a, b), c) - group_product(a, group_product(b, c))).norm() < 1e-10);
        CHECK((group_product(a, Mat2::Identity()) - a).norm() < 1e-12);
        CHECK((group_product(Mat2::Identity(), a) - a).norm() < 1e-12);
        // unitary and admissible
        const Mat2 ab = group_product(a, b);
        CHECK((ab.adjoint() * ab - Mat2::Identity()).norm() < 1e-10);
        const GroupElement ga = GroupElement::from_coin(a), gb = GroupElement::from_coin(b);
        CHECK((group_product(ga, gb).coin() - ab).norm() < 1e-10);
        // the transfer representation multiplies
        CHECK((group_product(ga, gb).transfer() - ga.transfer() * gb.transfer()).norm() < 1e-10);
    }
}

TEST_CASE("perturbation coin") {
    const Mat2 base = Coin::rotation(0.4).matrix();
    CHECK((perturbation_coin(base, 0.7, 0.0) - base).norm() < 1e-15);
    const Mat2 b = perturbation_coin(base, 0.7, 0.05);
    CHECK((b.adjoint() * b - Mat2::Identity()).norm() < 1e-12);
    CHECK((b - base).norm() < 0.2);
    const DoubleBarrier d = double_barrier(1, 0.4);
    CHECK(perturb(d.coins, 1.0, 0.0).coins() == d.coins.coins());
    CHECK_THROWS_AS(perturb(CoinSequence{}, 1.0, 0.1), DomainError);
}

TEST_CASE("double resonances split like eps^{1/2}") {
    const TripleBarrier t = triple_barrier(0.75, 12.0 / 13.0, 1.0 / 3.0);
    const Resonance r0 = find_resonances(t.coins).resonances.at(0);
    REQUIRE(r0.mult == 2);
    std::vector<SplitTrack> tracks;
    for (double eps : {1e-6, 1e-7, 1e-8}) {
        tracks.push_back(track_split(t.coins, r0, 0.9, eps));
        const SplitTrack& s = tracks.back();
        CHECK(s.all_simple);
        CHECK(s.near.size() == 2);
        CHECK(s.displacement == doctest::Approx(s.predicted).epsilon(0.05));
    }
    CHECK(loglog_slope(tracks) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("gamma matches a direct difference of sigma") {
    const TripleBarrier t = triple_barrier(0.75, 12.0 / 13.0, 1.0 / 3.0);
    const cplx l0 = find_resonances(t.coins).resonances.at(0).lambda;
    const double eps = 1e-5;
    const cplx fd = -(sigma(perturb(t.coins, 0.4, eps))(l0) - sigma(t.coins)(l0)) / eps;
    CHECK(std::abs(perturbation_gamma(t.coins, 0.4, l0) - fd) < 1e-3 * std::abs(fd));
}

TEST_CASE("gauge transform rotates resonances") {
    // c12 supported on 2Z
    const CoinSequence coins({{0, Coin::rotation(0.5)}, {2, Coin::rotation(0.3)}, {4, Coin::rotation(0.7)}});
    CHECK(c12_support_in(coins, 2));
    CHECK_FALSE(c12_support_in(coins, 3));
    const auto res = find_resonances(coins).resonances;
    for (const auto& r : res) {
        const ResonantChain ch = resonant_state(coins, r.lambda);
        const IntervalZ W = IntervalZ::of(-3, 7);
        const GaugeResult g = gauge_transform(coins, ch.state(1, W), 1, 2);
        const cplx mu = r.lambda * g.factor;
        const WalkState lhs = apply_U(coins, g.state).restrict(IntervalZ::of(-2, 6));
        const WalkState rhs = (mu * g.state).restrict(IntervalZ::of(-2, 6));
        CHECK(max_distance(lhs, rhs) < 1e-12 * g.state.max_abs());
        double best = 1e300;
        for (const auto& s : res) best = std::min(best, std::abs(s.lambda - mu));
        CHECK(best < 1e-9);
    }
    CHECK_THROWS_AS(gauge_transform(coins, WalkState::delta(0, Vec2(1, 0)), 1, 3), DomainError);
}

TEST_CASE("random walks respect their options") {
    std::mt19937_64 rng(5);
    RandomWalkOptions o;
    o.real = true;
    o.stride = 3;
    for (int i = 0; i < 20; ++i) {
        const CoinSequence c = random_walk(rng, o);
        CHECK(c.all_real());
        CHECK(c.hull().size() <= (o.max_sites - 1) * o.stride + 1);
        CHECK((c.hull().size() - 1) % o.stride == 0);
        CHECK(c12_support_in(c, 3));
    }
}
