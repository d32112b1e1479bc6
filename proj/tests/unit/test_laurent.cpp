#include "qwres/laurent.hpp"

#include <doctest.h>

using namespace qwres;

TEST_CASE("Laurent product agrees with pointwise product") {
    const LaurentPoly a(-2, {cplx(1, 2), 0.5, cplx(0, -1)});
    const LaurentPoly b(1, {3.0, cplx(-1, 1)});
    const LaurentPoly ab = a * b;
    CHECK(ab.low() == -1);
    CHECK(ab.high() == 2);
    for (cplx z : {cplx(0.3, 0.9), cplx(-1.7, 0.2), cplx(2.0, -2.0)})
        CHECK(std::abs(ab(z) - a(z) * b(z)) < 1e-12 * std::abs(a(z) * b(z)));
    CHECK(std::abs((a - a)(cplx(0.4, 0.1))) < 1e-15);
    CHECK(LaurentPoly(0, {0.0, 0.0}).normalize().is_zero());
}

TEST_CASE("Laurent matrix product and determinant") {
    const LaurentMatrix m(LaurentPoly(1, {1.0}), LaurentPoly::constant(2.0), LaurentPoly::constant(cplx(0, 1)),
                          LaurentPoly(-1, {3.0}));
    const LaurentMatrix mm = m * m;
    for (cplx z : {cplx(0.5, 0.5), cplx(-2.0, 1.0)}) {
        const Mat2 v = m(z);
        CHECK((mm(z) - v * v).norm() < 1e-12);
        CHECK(std::abs(m.det()(z) - v.determinant()) < 1e-12);
    }
    CHECK((LaurentMatrix::identity()(cplx(0.7, 0.1)) - Mat2::Identity()).norm() == 0.0);
}
