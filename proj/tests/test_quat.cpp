#include <doctest.h>

#include "pillowcase/quat.hpp"
#include "support.hpp"

using namespace pcase;
using namespace testing_support;

TEST_CASE("basic products") {
    CHECK(qdist(QI * QJ, QK) == 0);
    CHECK(qdist(QI * QI, Quat::real(-1)) == 0);
    const Quat e = qexp((pi / 2) * QK);
    const Quat got = e * QI;
    CHECK(qdist(got, matrix_mul(e, QI)) < 1e-15);
    CHECK(qdist(got, QJ) < 1e-15);
}

TEST_CASE("real and imaginary parts") {
    CHECK(real_part(QI * QJ) == 0);
    const double t = 0.7;
    const Quat q{std::cos(t), 0, 0, std::sin(t)};
    CHECK(qdist(ima(q), Quat::pure(0, 0, std::sin(t))) == 0);
}

TEST_CASE("conj_inv") {
    const Quat e = qexp(0.3 * QJ);
    CHECK(qdist(conj_inv(e), qexp(-0.3 * QJ)) < 1e-15);
    CHECK(qdist(e * conj_inv(e), ONE) < 1e-14);
    CHECK_THROWS_AS(conj_inv(Quat{2, 0, 0, 0}), std::domain_error);
}

TEST_CASE("qexp") {
    CHECK(qdist(qexp(Quat{}), ONE) == 0);
    CHECK(qdist(qexp((pi / 2) * QI), QI) < 1e-15);
    const Quat v = Quat::pure(0, 0.1, 0.2);
    CHECK(qdist(qexp(v), series_exp(v)) < 1e-15);
    const Quat tiny = Quat::pure(1e-9, -2e-9, 3e-10);
    CHECK(qdist(qexp(tiny), series_exp(tiny)) < 1e-18);
}

TEST_CASE("properties over random inputs") {
    Gen g(11);
    for (int k = 0; k < 1000; ++k) {
        const Quat p = g.unit(), q = g.unit();
        CHECK(std::abs((p * q).norm() - 1) < 1e-12);
        CHECK(qdist(conj_inv(p * q), conj_inv(q) * conj_inv(p)) < 1e-12);
        CHECK(qdist(p * q, matrix_mul(p, q)) < 1e-15);
        const Quat v = g.uniform(0, 3) * g.pure_unit();
        CHECK(std::abs(real_part(qexp(v)) - std::cos(v.norm())) < 1e-12);
    }
}

TEST_CASE("commutator of perpendicular traceless units is -1") {
    Gen g(5);
    for (int k = 0; k < 200; ++k) {
        const Quat u = g.pure_unit();
        Quat v = g.pure_unit();
        const double d = u.x * v.x + u.y * v.y + u.z * v.z;
        v = normalized(v - d * u);
        CHECK(qdist(u * v * conj_inv(u) * conj_inv(v), Quat::real(-1)) < 1e-12);
    }
}

TEST_CASE("long products stay on the sphere") {
    Gen g(3);
    std::vector<Quat> fs;
    Quat r = ONE;
    for (int k = 0; k < 300; ++k) fs.push_back(g.unit());
    for (const Quat& f : fs) r = r * f;
    const Quat p = product({fs[0], fs[1], fs[2], fs[3]});
    CHECK(qdist(p, fs[0] * fs[1] * fs[2] * fs[3]) < 1e-14);
    CHECK(std::abs(r.norm() - 1) < 1e-12);
}
