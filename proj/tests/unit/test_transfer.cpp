#include "helpers.hpp"
#include "qwres/errors.hpp"
#include "qwres/gallery.hpp"
#include "qwres/resonance.hpp"
#include "qwres/transfer.hpp"

#include <doctest.h>

using namespace qwres;

namespace {

// (1/c11) [[lambda, -c12], [c21, det C/lambda]], read off from U psi = lambda psi.
Mat2 direct_transfer(const Mat2& c, cplx lam) {
    Mat2 t;
    t << lam, -c(0, 1), c(1, 0), c.determinant() / lam;
    return t / c(0, 0);
}

} // namespace

TEST_CASE("transfer matrix of a rotation coin") {
    const double r = 0.6;
    const cplx lam(0.3, -0.8);
    Mat2 expect;
    expect << lam / 0.8, -r / 0.8, -r / 0.8, 1.0 / (0.8 * lam);
    CHECK((transfer_at(Coin::rotation(r), lam) - expect).norm() < 1e-14);
}

TEST_CASE("transfer matrix matches the direct form for random coins") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const Mat2 c = test::random_unitary(rng);
        const cplx lam = std::polar(0.5 + i * 0.01, 0.37 * i);
        const Mat2 t = transfer_at(Coin(c), lam);
        CHECK((t - direct_transfer(c, lam)).norm() < 1e-12 * t.norm());
    }
}

TEST_CASE("transfer sites: flip is an equivalence and det is constant") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const TransferSite s = TransferSite::from_coin(Coin(test::random_unitary(rng)));
        const cplx lam(0.4, 1.1);
        CHECK((s.flipped().at(lam) - s.at(lam)).norm() < 1e-13);
        CHECK(std::abs(s.at(lam).determinant() - s.det()) < 1e-12);
        CHECK(std::abs(s.at(cplx(-2, 0.1)).determinant() - s.det()) < 1e-12);
        CHECK((s.laurent()(lam) - s.at(lam)).norm() < 1e-13);
    }
}

TEST_CASE("sigma agrees with the numeric transfer product") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        const CoinSequence coins = random_walk(rng);
        const SigmaPoly s = sigma(coins);
        CHECK(s.degree() == 2 * s.k);
        CHECK(s.k == coins.hull().size());
        for (cplx lam : {cplx(0.9, 0.4), cplx(-0.3, 1.2)}) {
            const Mat2 t = transfer_product_at(coins, lam);
            CHECK(std::abs(s(lam) - std::pow(lam, s.k) * t(0, 0)) < 1e-10 * (1.0 + std::abs(s(lam))));
            CHECK(std::abs(t.determinant() - s.delta) < 1e-14 * t.squaredNorm());
        }
    }
}

TEST_CASE("double barrier sigma is proportional to lambda^2 + r^2") {
    const double r = 0.45;
    const SigmaPoly s = sigma(CoinSequence({{0, Coin::rotation(r)}, {1, Coin::rotation(r)}}));
    // sigma = lambda^2 (lambda^2 + r^2)/(1 - r^2)
    CHECK(s.degree() == 4);
    CHECK(std::abs(s.coeffs[0]) < 1e-15);
    CHECK(std::abs(s.coeffs[1]) < 1e-15);
    CHECK(std::abs(s.coeffs[2] - r * r / (1 - r * r)) < 1e-14);
    CHECK(std::abs(s.coeffs[3]) < 1e-15);
    CHECK(std::abs(s.coeffs[4] - 1.0 / (1 - r * r)) < 1e-14);
}

TEST_CASE("triple barrier quartic has a double factor") {
    const TripleBarrier t = triple_barrier(0.75, 12.0 / 13.0, 1.0 / 3.0);
    CHECK(t.multiplicity_two);
    // proportional to (lambda^2 + 1/2)^2 = lambda^4 + lambda^2 + 1/4
    const cplx lead = t.quartic[4];
    CHECK(std::abs(t.quartic[2] / lead - 1.0) < 1e-12);
    CHECK(std::abs(t.quartic[0] / lead - 0.25) < 1e-12);
    CHECK(std::abs(t.quartic[1]) + std::abs(t.quartic[3]) < 1e-14);
    const ResonanceReport rep = find_resonances(t.coins);
    REQUIRE(rep.resonances.size() == 2);
    for (const auto& r : rep.resonances) {
        CHECK(r.mult == 2);
        CHECK(std::abs(r.lambda * r.lambda + 0.5) < 1e-9);
    }
    CHECK_FALSE(triple_barrier(0.4, 0.5, 0.6).multiplicity_two);
}

TEST_CASE("scattering matrix is unitary on the unit circle") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        const CoinSequence coins = random_walk(rng);
        const ScatteringMatrix sm = scattering_matrix(coins, std::polar(1.0, 0.3 + 0.27 * i));
        CHECK((sm.reduced.adjoint() * sm.reduced - Mat2::Identity()).norm() < 1e-10);
    }
}

TEST_CASE("scattering matrix raises at a resonance") {
    const DoubleBarrier d = double_barrier(1, 0.5);
    CHECK_THROWS_AS(scattering_matrix(d.coins, d.resonances[0]), PoleError);
}

TEST_CASE("incoming resonances are conjugate-reciprocal to outgoing ones") {
    const DoubleBarrier d = double_barrier(2, 0.6);
    const auto in = incoming_resonances(d.coins);
    REQUIRE(in.size() == d.resonances.size());
    for (const auto& r : in) {
        CHECK(r.kind == ResonanceKind::incoming);
        const cplx mirror = 1.0 / std::conj(r.lambda);
        double best = 1e300;
        for (cplx z : d.resonances) best = std::min(best, std::abs(z - mirror));
        CHECK(best < 1e-9);
    }
}
