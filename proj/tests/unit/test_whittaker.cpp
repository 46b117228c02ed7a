#include <doctest.h>

#include <random>

#include "stratdamp/special_selftest.hpp"
#include "stratdamp/whittaker.hpp"

using namespace stratdamp;

namespace {

// M'' + (-1/4 + (1/4 - g^2)/z^2) M by a fourth-order central difference.
double ode_residual(Complex g, Complex z) {
    const double h = 5e-3;
    const Complex m2 = whittaker_M(g, z - 2.0 * h), m1 = whittaker_M(g, z - h), m0 = whittaker_M(g, z);
    const Complex p1 = whittaker_M(g, z + h), p2 = whittaker_M(g, z + 2.0 * h);
    const Complex d2 = (-m2 + 16.0 * m1 - 30.0 * m0 + 16.0 * p1 - p2) / (12.0 * h * h);
    return std::abs(d2 + (-0.25 + (0.25 - g * g) / (z * z)) * m0) / (1.0 + std::abs(m0));
}

}  // namespace

TEST_CASE("M with gamma = 1/2 is 2 sinh(z/2)") {
    for (Complex z : {Complex(0.3, 0.0), Complex(1.0, 0.0), Complex(2.5, -0.7), Complex(-1.2, 0.4), Complex(8.0, 3.0)}) {
        const Complex ref = 2.0 * std::sinh(0.5 * z);
        CHECK(std::abs(whittaker_M(0.5, z) - ref) <= 1e-13 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("W with gamma = 1/2 is exp(-z/2)") {
    for (Complex z : {Complex(0.2, 0.0), Complex(1.0, 0.5), Complex(6.0, -2.0), Complex(30.0, 1.0)}) {
        const Complex ref = std::exp(-0.5 * z);
        CHECK(std::abs(whittaker_W(0.5, z) - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("W_{0,0}(1) against the digamma series value") {
    CHECK(std::abs(whittaker_W(0.0, 1.0) - 0.52154761081954) < 1e-12);
    CHECK(std::abs(whittaker_W00_series(1.0) - 0.52154761081954) < 1e-12);
}

TEST_CASE("W is continuous through the small-gamma switch") {
    const Complex z(0.8, 0.3);
    const Complex below = whittaker_W(kSmallGammaSwitch * 0.999, z);
    const Complex above = whittaker_W(kSmallGammaSwitch * 1.001, z);
    CHECK(std::abs(below - above) < 1e-5);
}

TEST_CASE("Gamma and digamma spot values") {
    CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-12);
    CHECK(std::abs(complex_gamma(0.5) - std::sqrt(kPi)) < 1e-13);
    const double euler = 0.57721566490153286;
    CHECK(std::abs(digamma_at_half_integer(2) + euler) < 1e-14);
    CHECK(std::abs(digamma_at_half_integer(1) + euler + 2.0 * std::log(2.0)) < 1e-14);
}

TEST_CASE("M-W Wronskian in closed form at gamma = 1/2") {
    CHECK(std::abs(whittaker_MW_wronskian(0.5) + 1.0) < 1e-13);
}

TEST_CASE("property: Whittaker ODE residual on random samples") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Complex g = u(rng) < 0.5 ? Complex(0.45 * u(rng), 0.0) : Complex(0.0, 1.5 * u(rng));
        const Complex z = std::polar(0.5 + 4.5 * u(rng), (u(rng) - 0.5) * 2.6);
        worst = std::max(worst, ode_residual(g, z));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("property: continuation matches the explicit branch") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Complex g(0.1 + 0.35 * u(rng), 0.5 * (u(rng) - 0.5));
        const Complex z = std::polar(0.2 + 4.0 * u(rng), (u(rng) - 0.5) * 1.0);
        for (Side s : {Side::Plus, Side::Minus}) {
            const Complex lz = std::log(z) + sign_of(s) * kI * kPi;
            CHECK(std::abs(continue_M(g, z, s) - whittaker_M_log(g, lz)) <= 1e-10 * (1.0 + std::abs(continue_M(g, z, s))));
            CHECK(std::abs(continue_W(g, z, s) - whittaker_W_log(g, lz)) <= 1e-10 * (1.0 + std::abs(continue_W(g, z, s))));
        }
    }
}

TEST_CASE("Q_gamma equals its integral representation") {
    // Gauss-Legendre, 10 points on [0,1]
    const double x[] = {0.0130467357414141, 0.0674683166555077, 0.1602952158504878, 0.2833023029353764,
                        0.4255628305091844, 0.5744371694908156, 0.7166976970646236, 0.8397047841495122,
                        0.9325316833444923, 0.9869532642585859};
    const double w[] = {0.0333356721543441, 0.0747256745752903, 0.1095431812579910, 0.1346333596549982,
                        0.1477621123573764, 0.1477621123573764, 0.1346333596549982, 0.1095431812579910,
                        0.0747256745752903, 0.0333356721543441};
    for (Complex g : {Complex(0.2, 0.0), Complex(0.0, 0.3), Complex(0.01, 0.02)})
        for (Complex z : {Complex(0.5, 0.1), Complex(2.0, -1.0)}) {
            Complex s = 0.0;
            for (int i = 0; i < 10; ++i) s += w[i] * std::exp(2.0 * g * x[i] * std::log(z));
            CHECK(std::abs(q_gamma(g, z) - s) < 1e-12);
        }
}

TEST_CASE("DegenerateGamma at the pole of the M normalization") {
    CHECK_THROWS_AS(whittaker_M(-1.0, 1.0), Error);
}

TEST_CASE("special self-test passes and is deterministic") {
    const auto a = special_selftest();
    const auto b = special_selftest();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        INFO(a[i].name);
        CHECK(a[i].pass);
        CHECK(a[i].residual == b[i].residual);
    }
}
