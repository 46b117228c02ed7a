#include <doctest.h>

#include "stratdamp/profiles.hpp"

using namespace stratdamp;

namespace {

struct Decreasing : ProfileModel {
    ProfileSample sample(double y) const override {
        ProfileSample s;
        s.v = -y;
        s.v1 = -1.0;
        return s;
    }
};

}  // namespace

TEST_CASE("default profile satisfies the hypotheses") {
    const Profile p = default_profile();
    CHECK(p.family == "trapezoid");
    CHECK(p.theta1 == doctest::Approx(0.1));
    CHECK(p.theta2 == doctest::Approx(1.9));
    CHECK(p.J(1.0) == doctest::Approx(0.35).epsilon(1e-10));
    const auto h = check_hypotheses(p);
    CHECK(h.HP);
    CHECK(h.Hv);
    CHECK(h.H1);
    CHECK(h.H1_value == doctest::Approx(0.9701).epsilon(1e-3));
    CHECK(h.H2);
    CHECK(h.root_count == 2);
}

TEST_CASE("exp-bump with the original parameters violates H1") {
    ProfileSpec s = default_profile_spec();
    s.family = "exp-bump";
    s.amplitude = 0.35;
    s.half_width = 0.5;
    const auto h = check_hypotheses(build_profile(s));
    CHECK_FALSE(h.H1);
    CHECK(h.H1_value > 1.0);
}

TEST_CASE("regime partition is ordered and consistent with J") {
    const Profile p = default_profile();
    const auto r = partition_regimes(p, 0.05);
    CHECK(p.J(r.varpi1) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(p.J(r.varpi11) == doctest::Approx(0.20).epsilon(1e-8));
    CHECK(p.J(r.varpi12) == doctest::Approx(0.30).epsilon(1e-8));
    CHECK(r.varpi1 + r.varpi2 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.lookup(0.05) == Regime::NonStratified);
    CHECK(r.lookup(0.4) == Regime::Weak);
    CHECK(r.lookup(0.7) == Regime::Mild);
    CHECK(r.lookup(1.0) == Regime::Strong);
    CHECK(r.lookup(1.95) == Regime::NonStratified);
    CHECK_THROWS_AS(partition_regimes(p, 0.2), Error);
}

TEST_CASE("property: regime lookup is total and agrees with J") {
    const Profile p = default_profile();
    const auto r = partition_regimes(p, 0.05);
    for (int i = 1; i < 200; ++i) {
        const double y = 0.01 * i;
        const Regime g = r.lookup(y);
        const double J = p.J(y);
        if (g == Regime::Weak) CHECK(J < 0.2 + 1e-9);
        if (g == Regime::Strong) CHECK(J > 0.3 - 1e-9);
        if (g == Regime::Mild) CHECK(std::abs(J - 0.25) <= 0.05 + 1e-9);
        if (g == Regime::NonStratified) CHECK(J == 0.0);
    }
}

TEST_CASE("Richardson exponents") {
    const auto s = richardson_from_J(0.35);
    CHECK(s.mu == doctest::Approx(0.0));
    CHECK(s.nu == doctest::Approx(std::sqrt(0.1)));
    const auto w = richardson_from_J(0.1875);
    CHECK(w.mu == doctest::Approx(0.25));
    CHECK(w.nu == doctest::Approx(0.0));
    CHECK(richardson_from_J(0.0).mu == doctest::Approx(0.5));
}

TEST_CASE("profile text formats") {
    const auto a = parse_profile_text("family = \"exp-bump\"\namplitude = 0.2 # peak\nhalf_width = 0.6\n");
    CHECK(a.family == "exp-bump");
    CHECK(a.amplitude == 0.2);
    CHECK(a.half_width == 0.6);
    const auto b = parse_profile_text(R"({"family": "trapezoid", "amplitude": 0.3, "grid_n": 1024})");
    CHECK(b.amplitude == 0.3);
    CHECK(b.grid_n == 1024);
    CHECK_THROWS_AS(parse_profile_text("colour = 3\n"), Error);
    CHECK_THROWS_AS(parse_profile_text("amplitude = abc\n"), Error);
    CHECK_THROWS_AS(load_profile_spec("/nonexistent/profile.toml"), Error);
    try {
        load_profile_spec("/nonexistent/profile.toml");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigParse);
    }
}

TEST_CASE("tabulated profile round trip") {
    const Profile ref = default_profile();
    std::string csv = "y,v,P\n";
    for (Eigen::Index i = 0; i < ref.grid.size(); i += 2) {
        char line[128];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", ref.grid(i), ref.v(i), ref.P(i));
        csv += line;
    }
    const Profile t = build_profile(parse_profile_csv(csv));
    CHECK(t.J(1.0) == doctest::Approx(0.35).epsilon(1e-6));
    CHECK(t.theta1 == doctest::Approx(0.1).epsilon(2e-3));
}

TEST_CASE("non-monotone shear is rejected") {
    CHECK_THROWS_AS(profile_from_model(std::make_shared<Decreasing>(), 0.1, 1.9), Error);
}

TEST_CASE("fourth-order differentiation of uniform samples") {
    const int n = 400;
    const double h = 2.0 / n;
    RealVector f(n + 1), d1(n + 1), d2(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double y = i * h;
        f(i) = std::sin(3.0 * y);
        d1(i) = 3.0 * std::cos(3.0 * y);
        d2(i) = -9.0 * std::sin(3.0 * y);
    }
    CHECK((differentiate_uniform(f, h, 1) - d1).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((differentiate_uniform(f, h, 2) - d2).cwiseAbs().maxCoeff() < 1e-5);
}
