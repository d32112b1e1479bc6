#include "qwres/errors.hpp"
#include "qwres/polyroots.hpp"

#include <doctest.h>

#include <random>

using namespace qwres;

namespace {

std::vector<cplx> from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> a{1.0};
    for (cplx z : roots) {
        std::vector<cplx> b(a.size() + 1, 0.0);
        for (size_t i = 0; i < a.size(); ++i) {
            b[i] -= z * a[i];
            b[i + 1] += a[i];
        }
        a = b;
    }
    return a;
}

} // namespace

TEST_CASE("Aberth recovers known simple roots") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> roots;
        for (int i = 0; i < 10; ++i) roots.emplace_back(u(rng), u(rng));
        const auto found = aberth_roots(from_roots(roots));
        REQUIRE(found.size() == roots.size());
        std::vector<RootCluster> a, b;
        for (cplx z : roots) a.push_back({z, 1, 0.0});
        for (cplx z : found) b.push_back({z, 1, 0.0});
        CHECK(multiset_distance(a, b) < 1e-8);
    }
}

TEST_CASE("clusters report multiplicities") {
    const std::vector<cplx> roots{cplx(0, 0.7), cplx(0, 0.7), cplx(0, 0.7), cplx(0.5, 0), cplx(-1, 1), cplx(-1, 1)};
    const auto p = from_roots(roots);
    const auto cl = nonzero_roots(p);
    int total = 0;
    for (const auto& c : cl) {
        total += c.mult;
        if (std::abs(c.center - cplx(0, 0.7)) < 1e-6) {
            CHECK(c.mult == 3);
            CHECK(std::abs(c.center - cplx(0, 0.7)) < 1e-12);
        }
        if (std::abs(c.center - cplx(-1, 1)) < 1e-6) CHECK(c.mult == 2);
    }
    CHECK(total == 6);
    CHECK(cl.size() == 3);
}

TEST_CASE("nonzero_roots strips zero roots") {
    int zeros = -1;
    const auto cl = nonzero_roots({0.0, 0.0, 2.0, 0.0, 1.0}, &zeros);
    CHECK(zeros == 2);
    REQUIRE(cl.size() == 2);
    for (const auto& c : cl) CHECK(std::abs(c.center * c.center + 2.0) < 1e-12);
}

TEST_CASE("Taylor coefficients and evaluation") {
    const std::vector<cplx> a{1.0, -2.0, 0.0, 3.0};
    const cplx z(0.5, -1.0);
    const auto t = taylor_coefficients(a, z);
    CHECK(std::abs(t[0] - poly_eval(a, z)) < 1e-14);
    CHECK(std::abs(t[1] - (-2.0 + 9.0 * z * z)) < 1e-13);
    CHECK(std::abs(t[2] - 9.0 * z) < 1e-13);
    CHECK(std::abs(t[3] - 3.0) < 1e-14);
    CHECK(poly_eval_abs(a, 2.0) == doctest::Approx(1 + 4 + 24));
}

TEST_CASE("Faddeev-LeVerrier gives the characteristic polynomial") {
    Eigen::MatrixXcd A(3, 3);
    A << 2, 0, 0, 0, cplx(0, 1), 0, 0, 0, -1;
    const auto p = faddeev_leverrier(A);
    const auto expect = from_roots({2.0, cplx(0, 1), -1.0});
    REQUIRE(p.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(std::abs(p[i] - expect[i]) < 1e-13);
}

TEST_CASE("grouping and multiset distance") {
    const auto g = group_close({0.0, 1e-9, 1.0, 1.0 + 1e-12}, 1e-6);
    CHECK(g.size() == 2);
    CHECK(multiset_distance({{1.0, 2, 0.0}}, {{1.0, 1, 0.0}}) == std::numeric_limits<double>::infinity());
}
