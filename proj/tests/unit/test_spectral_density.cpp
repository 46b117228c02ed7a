#include <doctest.h>

#include "stratdamp/spectral_density.hpp"

using namespace stratdamp;

namespace {

ModeData bump_data(const Profile& p, int k) {
    return regularize_data(p, gaussian_bump(p, 1.0, 0.1, 0.75), ComplexVector::Zero(p.grid.size()), k);
}

}  // namespace

TEST_CASE("zero data has zero spectral density") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    const ModeData d = regularize_data(p, ComplexVector::Zero(p.grid.size()), ComplexVector::Zero(p.grid.size()), 1);
    const auto s = spectral_density(p, part, 1, 1.0, d);
    CHECK(s.jump_psi.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.jump_rho.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("no density where the data and the coefficients are smooth") {
    // Below theta1 the operator is the Laplacian and the data vanish near y0,
    // so both one-sided limits coincide.
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    const ModeData d = bump_data(p, 1);
    const auto quiet = spectral_density(p, part, 1, 0.05, d);
    const auto loud = spectral_density(p, part, 1, 1.0, d);
    CHECK(quiet.jump_psi.norm() <= 1e-6 * loud.jump_psi.norm());
}

TEST_CASE("conjugation shortcut matches two solves") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    const ModeData d = bump_data(p, 1);
    DensityOptions a, b;
    b.use_conjugation = false;
    const auto sa = spectral_density(p, part, 1, 0.9, d, a);
    const auto sb = spectral_density(p, part, 1, 0.9, d, b);
    CHECK((sa.jump_psi - sb.jump_psi).norm() <= 1e-12 * sb.jump_psi.norm());
    CHECK(sa.extrapolation_error < 1e-3 * sa.jump_psi.norm());
}

TEST_CASE("contour quadrature integrates smooth functions on the band") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    ContourOptions opt;
    const auto q = contour_quadrature(p, part, 1, 5.0, opt);
    double len = 0.0, mom = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
        len += q.weights[i];
        mom += q.weights[i] * std::cos(3.0 * q.nodes[i]);
        CHECK(q.nodes[i] > p.theta1);
        CHECK(q.nodes[i] < p.theta2);
    }
    CHECK(len == doctest::Approx(p.theta2 - p.theta1).epsilon(1e-13));
    CHECK(mom == doctest::Approx((std::sin(3.0 * p.theta2) - std::sin(3.0 * p.theta1)) / 3.0).epsilon(1e-12));
    opt.max_nodes = 100;
    CHECK_THROWS_AS(contour_quadrature(p, part, 1, 5.0, opt), Error);
}

TEST_CASE("single mode x-norms") {
    const int n = 2001;
    ModeSnapshot m;
    m.k = 3;
    m.grid = RealVector::LinSpaced(n, 0.0, 2.0);
    m.psi.resize(n);
    m.rho.resize(n);
    m.omega.resize(n);
    for (int i = 0; i < n; ++i) {
        const double y = m.grid(i);
        m.psi(i) = Complex(std::sin(kPi * y / 2.0), 0.3 * y);
        m.rho(i) = Complex(y * y, -1.0);
        m.omega(i) = std::exp(Complex(0.0, y));
    }
    const auto l = lx_norms({m});
    const double h = m.grid(1) - m.grid(0);
    for (int i : {1, 500, 1000, 1999}) {
        const double y = m.grid(i);
        const Complex dpsi(kPi / 2.0 * std::cos(kPi * y / 2.0), 0.3);
        CHECK(l.vx(i) == doctest::Approx(std::sqrt(2.0) * std::abs(dpsi)).epsilon(5.0 * h * h));
        CHECK(l.vy(i) == doctest::Approx(std::sqrt(2.0) * 3.0 * std::abs(m.psi(i))).epsilon(1e-14));
        CHECK(l.omega(i) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("x-norms match quadrature of the real field in x") {
    // Two modes: f(x) = 2 Re(a e^{ix} + b e^{3ix}); the trapezoid rule in x is
    // exact for trigonometric polynomials of this degree.
    const int n = 64;
    ModeSnapshot m1, m3;
    m1.k = 1;
    m3.k = 3;
    m1.grid = m3.grid = RealVector::LinSpaced(n, 0.0, 2.0);
    for (ModeSnapshot* m : {&m1, &m3}) {
        m->psi = ComplexVector::Zero(n);
        m->omega = ComplexVector::Zero(n);
        m->rho.resize(n);
    }
    for (int i = 0; i < n; ++i) {
        const double y = m1.grid(i);
        m1.rho(i) = Complex(std::cos(y), 0.5);
        m3.rho(i) = Complex(-0.2, y);
    }
    const auto l = lx_norms({m1, m3});
    for (int i : {0, 20, 63}) {
        const int nx = 32;
        double acc = 0.0;
        for (int j = 0; j < nx; ++j) {
            const double x = 2.0 * kPi * j / nx;
            const double f = 2.0 * (m1.rho(i) * std::exp(Complex(0.0, x)) + m3.rho(i) * std::exp(Complex(0.0, 3.0 * x))).real();
            acc += f * f / nx;
        }
        CHECK(std::abs(l.rho(i) - std::sqrt(acc)) < 1e-10);
    }
    m1.k = 0;
    CHECK_THROWS_AS(lx_norms({m1}), Error);
}
