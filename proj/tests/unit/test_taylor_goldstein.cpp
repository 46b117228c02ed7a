#include <doctest.h>

#include "stratdamp/interp.hpp"
#include "stratdamp/taylor_goldstein.hpp"

using namespace stratdamp;

namespace {

// Couette shear with constant Richardson number J everywhere.
struct ConstantJ : ProfileModel {
    double J = 0.0;
    ProfileSample sample(double y) const override {
        ProfileSample s;
        s.v = y;
        s.v1 = 1.0;
        s.P = J;
        return s;
    }
};

double bump(double z) {
    const double c = (z - 1.0) / 0.5;
    const double cut = std::abs(c) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - c * c)) : 0.0;
    return cut * std::exp(-(z - 1.0) * (z - 1.0) / 0.02);
}

// Composite Simpson on [a, b] with n (even) panels.
template <typename F>
Complex simpson(F&& f, double a, double b, int n) {
    const double h = (b - a) / n;
    Complex s = f(a) + f(b);
    for (int j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * f(a + j * h);
    return s * h / 3.0;
}

// Resolvent on its own mesh nodes against Simpson quadrature of G * w0/u,
// split at the kink z = y.
double green_gap(double J, int k) {
    auto m = std::make_shared<ConstantJ>();
    m->J = J;
    const Profile p = profile_from_model(m, 0.0, 2.0, 1.0, 1024);
    RegimePartition part;
    part.theta1 = -1.0;
    part.theta2 = 3.0;
    part.varpi11 = part.varpi12 = part.varpi21 = part.varpi22 = -5.0;
    const ResolventQuery q{k, 0.9, 1e-2, Side::Plus};
    const GreenFunction g(p, part, q, J == 0.0 ? GreenFormula::Laplacian : GreenFormula::MPair);
    ModeData d;
    d.k = k;
    d.grid = p.grid;
    d.omega0 = gaussian_bump(p, 1.0, 0.1, 0.5);
    d.varrho0 = d.q0 = d.rho0 = ComplexVector::Zero(p.grid.size());
    d.w0 = d.omega0;
    const auto f = solve_resolvent(p, &part, q, d);
    double err = 0.0, scale = 0.0;
    for (double target : {0.3, 0.8, 0.9, 0.95, 1.4}) {
        Eigen::Index i = 0;
        (f.mesh.array() - target).abs().minCoeff(&i);
        const double y = f.mesh(i);
        auto integrand = [&](double z) { return g(y, z) * bump(z) / Complex(z - 0.9, 1e-2); };
        const Complex s = simpson(integrand, 0.0, y, 40000) + simpson(integrand, y, 2.0, 40000);
        err = std::max(err, std::abs(f.phi_mesh(i) - s));
        scale = std::max(scale, std::abs(s));
    }
    return err / scale;
}

ModeData bump_data(const Profile& p, int k) {
    return regularize_data(p, gaussian_bump(p, 1.0, 0.1, 0.75), ComplexVector::Zero(p.grid.size()), k);
}

}  // namespace

TEST_CASE("Laplacian Green's function closed form") {
    CHECK(laplacian_green(1, 1.0, 1.0) == doctest::Approx(-0.380797).epsilon(1e-6));
    CHECK(laplacian_green(1, 1.0, 1.0) == doctest::Approx(-std::pow(std::sinh(1.0), 2) / std::sinh(2.0)));
    for (int k : {1, 3})
        for (double y : {0.2, 1.1})
            for (double z : {0.5, 1.7}) CHECK(laplacian_green(k, y, z) == doctest::Approx(laplacian_green(k, z, y)));
    CHECK(laplacian_green(2, 0.0, 1.0) == 0.0);
}

TEST_CASE("resolvent reproduces the Laplacian Green's function for J = 0") {
    CHECK(green_gap(0.0, 1) < 1e-8);
    CHECK(green_gap(0.0, 4) < 1e-8);
}

TEST_CASE("resolvent agrees with the Whittaker Green's function for constant J") {
    CHECK(green_gap(0.1, 1) < 1e-5);
    CHECK(green_gap(0.35, 2) < 1e-5);
}

TEST_CASE("homogeneous pair Wronskian is -2 gamma0 v'(y0)") {
    const Profile p = default_profile();
    for (double y0 : {0.45, 1.0}) {
        const auto hp = homogeneous_pair(p, {1, y0, 1e-3, Side::Minus});
        const auto r = richardson(p, y0);
        CHECK(std::abs(hp.expected_wronskian + 2.0 * r.gamma * p.at(y0).v1) < 1e-12);
        CHECK(std::abs(hp.wronskian - hp.expected_wronskian) < 1e-7 * std::abs(hp.expected_wronskian));
    }
}

TEST_CASE("real data: phi+ is the conjugate of phi-") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    const ModeData d = bump_data(p, 2);
    for (double y0 : {0.05, 0.45, 0.7, 1.0}) {
        const auto a = solve_resolvent(p, &part, {2, y0, 1e-3, Side::Plus}, d);
        const auto b = solve_resolvent(p, &part, {2, y0, 1e-3, Side::Minus}, d);
        CHECK((a.phi - b.phi.conjugate()).norm() <= 1e-12 * b.phi.norm());
    }
}

TEST_CASE("property: resolvent residual across regimes") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    for (int k : {1, 4}) {
        const ModeData d = bump_data(p, k);
        for (double eps : {1e-2, 1e-4})
            for (double y0 : {0.05, 0.3, 0.7, 1.0, 1.5}) {
                const auto f = solve_resolvent(p, &part, {k, y0, eps, Side::Minus}, d);
                CHECK(f.residual <= 1e-6);
                CHECK(f.phi(0) == Complex(0.0));
                CHECK(f.phi(f.phi.size() - 1) == Complex(0.0));
            }
    }
}

TEST_CASE("rho follows from phi") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    const ModeData d = bump_data(p, 1);
    const auto f = solve_resolvent(p, &part, {1, 0.8, 1e-2, Side::Plus}, d);
    const Eigen::Index i = 700;
    const Complex u(p.v(i) - p.at(0.8).v, 1e-2);
    CHECK(std::abs(f.rho(i) - p.P(i) * f.phi(i) / u) < 1e-14);
}

TEST_CASE("data outside the stratified band is rejected") {
    const Profile p = default_profile();
    const ComplexVector om = gaussian_bump(p, 0.2, 0.1, 0.2);
    CHECK_THROWS_AS(regularize_data(p, om, ComplexVector::Zero(p.grid.size()), 1), Error);
}

TEST_CASE("invalid queries") {
    CHECK_THROWS_AS((ResolventQuery{1, 1.0, -1e-3, Side::Plus}).validate(), Error);
    CHECK_THROWS_AS((ResolventQuery{0, 1.0, 1e-3, Side::Plus}).validate(), Error);
    CHECK_THROWS_AS((ResolventQuery{1, 2.5, 1e-3, Side::Plus}).validate(), Error);
}

TEST_CASE("Frobenius exponents at weak and strong critical layers") {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    SUBCASE("weak") {
        const double y0 = 0.55;
        const auto r = richardson(p, y0);
        const auto f = solve_resolvent(p, &part, {1, y0, 1e-3, Side::Minus}, bump_data(p, 1));
        const auto fit = frobenius_fit(p, f, r);
        CHECK(fit.residual < 0.05);
        CHECK(std::abs(fit.singular_exponent - (0.5 - r.mu)) < 0.05);
    }
    SUBCASE("strong") {
        const double y0 = 1.0;
        const auto r = richardson(p, y0);
        const auto f = solve_resolvent(p, &part, {2, y0, 1e-4, Side::Minus}, bump_data(p, 2));
        const auto fit = frobenius_fit(p, f, r);
        CHECK(fit.residual < 0.05);
        CHECK(std::abs(fit.singular_exponent - 0.5) < 0.05);
        CHECK(std::abs(fit.exponent_shift.imag() - r.nu) < 0.05);
    }
    SUBCASE("non-stratified") {
        const auto f = solve_resolvent(p, &part, {1, 0.05, 1e-3, Side::Minus}, bump_data(p, 1));
        CHECK_THROWS_AS(frobenius_fit(p, f, richardson(p, 0.05)), Error);
    }
}
