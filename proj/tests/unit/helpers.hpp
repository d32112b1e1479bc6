#pragma once

#include "qwres/walk.hpp"

#include <cmath>
#include <random>

namespace qwres::test {

inline double dist(cplx a, cplx b) { return std::abs(a - b); }

// Haar-like random U(2) with |c11| bounded away from zero.
inline Mat2 random_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> a(0.2, 1.3);
    const double t = a(rng);
    const cplx e1 = std::polar(1.0, u(rng)), e2 = std::polar(1.0, u(rng)), e3 = std::polar(1.0, u(rng));
    Mat2 m;
    m << e1 * std::cos(t), e2 * std::sin(t), -std::conj(e2) * e3 * std::sin(t), std::conj(e1) * e3 * std::cos(t);
    return m;
}

// Direct definition of U = SC, site by site, used as an oracle for apply_U.
inline WalkState step_oracle(const CoinSequence& coins, const WalkState& psi) {
    const IntervalZ w = psi.window().neighborhood(1);
    WalkState out(w);
    for (int x = w.lo; x <= w.hi; ++x) {
        const Vec2 from_right = coins.matrix_at(x + 1) * psi.at(x + 1);
        const Vec2 from_left = coins.matrix_at(x - 1) * psi.at(x - 1);
        out.set(x, Vec2(from_right(0), from_left(1)));
    }
    return out;
}

} // namespace qwres::test
