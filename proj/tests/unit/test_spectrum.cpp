#include <doctest.h>

#include "stratdamp/spectrum.hpp"

using namespace stratdamp;

TEST_CASE("without gravity the Couette Wronskian is -sinh(2k)/k") {
    const Profile p = default_profile();
    for (int k : {1, 2})
        for (Complex l : {Complex(0.3, 0.2), Complex(1.0, 0.05), Complex(2.4, 0.9)}) {
            const auto r = shooting_wronskian(p, k, l, 0.0);
            CHECK(std::abs(r.W + std::sinh(2.0 * k) / k) < 1e-8 * std::sinh(2.0 * k));
        }
    CHECK(shooting_wronskian(p, 1, Complex(1.0, 0.5), 0.0).W.real() == doctest::Approx(-3.62686).epsilon(1e-5));
}

TEST_CASE("shooting residual off the real axis") {
    const Profile p = default_profile();
    const auto r = shooting_wronskian(p, 1, Complex(1.0, 0.05), -1.0, 1e-10, true, true);
    CHECK(r.residual >= 0.0);
    CHECK(r.residual <= 1e-8);
    CHECK(r.phi.size() == p.grid.size());
    CHECK(std::abs(r.phi(r.phi.size() - 1)) == 0.0);
}

TEST_CASE("real lambda in the range of v is rejected") {
    CHECK_THROWS_AS(shooting_wronskian(default_profile(), 1, Complex(1.0, 0.0)), Error);
}

TEST_CASE("argument principle on synthetic functions") {
    const Box box{0.0, 1.0, 0.05, 1.0};
    CHECK(count_zeros([](Complex l) { return l - Complex(0.3, 0.4); }, box, 8).count == 1);
    CHECK(count_zeros([](Complex l) { return (l - Complex(0.3, 0.4)) * (l - Complex(0.7, 0.6)); }, box, 8).count == 2);
    CHECK(count_zeros([](Complex l) { return l - Complex(2.0, 0.4); }, box, 8).count == 0);
    CHECK(count_zeros([](Complex l) { return std::exp(5.0 * l); }, box, 4).count == 0);
    CHECK_THROWS_AS(count_zeros([](Complex l) { return l - Complex(0.0, 0.5); }, box, 8), Error);
}

TEST_CASE("no unstable eigenvalues for the default profile") {
    const Profile p = default_profile();
    const auto c = count_eigenvalues(p, 1, default_box(p), 32);
    CHECK(c.count == 0);
    CHECK(std::abs(c.winding) < 1e-6);
}

TEST_CASE("essential band and default box") {
    const Profile p = default_profile();
    const auto b = essential_band(p);
    CHECK(b.lo == doctest::Approx(0.1));
    CHECK(b.hi == doctest::Approx(1.9));
    const Box box = default_box(p);
    CHECK(box.re_lo == doctest::Approx(-0.5));
    CHECK(box.re_hi == doctest::Approx(2.5));
    CHECK(box.im_lo == 0.05);
    CHECK(box.im_hi == 1.0);
}
