#include "helpers.hpp"
#include "qwres/errors.hpp"

#include <doctest.h>

using namespace qwres;

TEST_CASE("interval arithmetic") {
    const IntervalZ J = IntervalZ::of(-2, 3);
    CHECK(J.size() == 6);
    CHECK(J.neighborhood(2) == IntervalZ::of(-4, 5));
    CHECK(J.intersect(IntervalZ::of(4, 9)).is_empty());
    CHECK(IntervalZ::empty().size() == 0);
    CHECK(J.contains(IntervalZ::empty()));
    CHECK(J.hull(IntervalZ::of(7, 8)) == IntervalZ::of(-2, 8));
}

TEST_CASE("coin admissibility") {
    Mat2 bad;
    bad << 1, 1, 0, 1;
    CHECK_THROWS_AS(Coin{bad}, DomainError);
    Mat2 swap;
    swap << 0, 1, 1, 0;
    CHECK_THROWS_AS(Coin{swap}, DomainError);
    CHECK_THROWS_AS(Coin::rotation(1.0), DomainError);
    const Coin r = Coin::rotation(0.6);
    CHECK(std::abs(r.c11() - 0.8) < 1e-15);
    CHECK(std::abs(r.c12() - 0.6) < 1e-15);
    CHECK(std::abs(r.c21() + 0.6) < 1e-15);
}

TEST_CASE("identity coins are dropped from the sequence") {
    const CoinSequence c({{0, Coin::identity()}, {3, Coin::rotation(0.2)}, {5, Coin::identity()}});
    CHECK(c.hull() == IntervalZ::of(3, 3));
    CHECK(c.support() == std::vector<int>{3});
    CHECK(CoinSequence({{1, Coin::identity()}}).is_free());
}

TEST_CASE("apply_U matches the site-wise definition") {
    std::mt19937_64 rng(5);
    std::map<int, Coin> m;
    for (int x = -2; x <= 3; ++x) m.emplace(x, Coin(test::random_unitary(rng)));
    const CoinSequence coins(m);
    std::normal_distribution<double> g;
    WalkState psi(IntervalZ::of(-4, 4));
    for (int x = -4; x <= 4; ++x) psi.set(x, Vec2(cplx(g(rng), g(rng)), cplx(g(rng), g(rng))));
    WalkState a = psi, b = psi;
    for (int n = 0; n < 12; ++n) {
        a = apply_U(coins, a);
        b = test::step_oracle(coins, b);
        CHECK(max_distance(a, b) < 1e-13);
    }
    CHECK(std::abs(a.norm() - psi.norm()) < 1e-12);
}

TEST_CASE("free walk moves L left and R right") {
    const CoinSequence free;
    const WalkState l = evolve(free, WalkState::delta(0, Vec2(1, 0)), 7);
    const WalkState r = evolve(free, WalkState::delta(0, Vec2(0, 1)), 7);
    CHECK(std::abs(l.left(-7) - 1.0) < 1e-15);
    CHECK(std::abs(r.right(7) - 1.0) < 1e-15);
    CHECK(l.norm2_on(IntervalZ::of(-6, 10)) < 1e-30);
}

TEST_CASE("state windows and Q transform") {
    WalkState s = WalkState::delta(2, Vec2(1, 2));
    s.set(-1, Vec2(3, 0));
    CHECK(s.window() == IntervalZ::of(-1, 2));
    CHECK(s.support() == IntervalZ::of(-1, 2));
    CHECK(q_transform(s, 3) == Vec2(1, 0));
    CHECK(q_transform(s, 2) == Vec2(0, 2));
    CHECK(std::abs(s.norm2() - 14.0) < 1e-14);
    CHECK(s.restrict(IntervalZ::of(0, 5)).norm2() == doctest::Approx(5.0));
    CHECK(incoming_support(s) == IntervalZ::of(2, 2));
}
