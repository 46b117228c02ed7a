// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "stratdamp/decay_fit.hpp"
#include "stratdamp/interp.hpp"
#include "stratdamp/spectral_density.hpp"
#include "stratdamp/special_selftest.hpp"
#include "stratdamp/spectrum.hpp"
#include "stratdamp/timestepper.hpp"

using namespace stratdamp;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + buf);
    pass = pass && ok;
}

struct Linear : ProfileModel {
    ProfileSample sample(double y) const override {
        ProfileSample s;
        s.v = y;
        s.v1 = 1.0;
        return s;
    }
};

double relative_l2(const ComplexVector& a, const ComplexVector& b) { return (a - b).norm() / b.norm(); }

ModeData bump_data(const Profile& p, int k) {
    return regularize_data(p, gaussian_bump(p, 1.0, 0.1, 0.75), ComplexVector::Zero(p.grid.size()), k);
}

// y in (theta1, varpi11) with J(y) = 3/16, i.e. mu = 1/4.
double weak_probe(const Profile& p, const RegimePartition& part) {
    double a = p.theta1, b = part.varpi11;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        (p.J(m) < 0.1875 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

Outcome special_functions() {
    Outcome o;
    for (const auto& c : special_selftest())
        o.check(c.pass, "%-26s residual %.2e (tolerance %.0e)", c.name.c_str(), c.residual, c.tolerance);
    return o;
}

Outcome green_oracle() {
    Outcome o;
    const double g11 = laplacian_green(1, 1.0, 1.0);
    const double ref = -std::pow(std::sinh(1.0), 2) / std::sinh(2.0);
    o.check(std::abs(g11 - ref) < 1e-14 && std::abs(g11 + 0.380797) < 5e-7, "G_1(1,1) = %.9f", g11);

    const Profile p = profile_from_model(std::make_shared<Linear>(), 0.0, 2.0, 1.0, 1024);
    RegimePartition part;
    part.theta1 = -1.0;
    part.theta2 = 3.0;
    for (int k : {1, 2, 4}) {
        const ResolventQuery q{k, 0.9, 1e-2, Side::Plus};
        const GreenFunction g(p, part, q, GreenFormula::Laplacian);
        ModeData d;
        d.k = k;
        d.grid = p.grid;
        d.omega0 = gaussian_bump(p, 1.0, 0.1, 0.5);
        d.w0 = d.omega0;
        d.varrho0 = d.q0 = d.rho0 = ComplexVector::Zero(p.grid.size());
        const auto f = solve_resolvent(p, &part, q, d);
        double err = 0.0, scale = 0.0;
        for (double target : {0.2, 0.6, 0.9, 1.1, 1.7}) {
            Eigen::Index i = 0;
            (f.mesh.array() - target).abs().minCoeff(&i);
            const double y = f.mesh(i);
            auto integrand = [&](double z) {
                const Complex w = lagrange_interpolate(p.grid, d.w0, z);
                return g(y, z) * w / Complex(z - 0.9, 1e-2);
            };
            // Simpson split at the kink z = y.
            auto simpson = [&](double a, double b) {
                const int n = 20000;
                const double h = (b - a) / n;
                Complex s = integrand(a) + integrand(b);
                for (int j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * integrand(a + j * h);
                return s * h / 3.0;
            };
            const Complex s = simpson(0.0, y) + simpson(y, 2.0);
            err = std::max(err, std::abs(f.phi_mesh(i) - s));
            scale = std::max(scale, std::abs(s));
        }
        o.check(err / scale <= 1e-8, "J = 0, k = %d: resolvent vs Green quadrature %.2e", k, err / scale);
    }
    return o;
}

Outcome resolvent_sweep(const Profile& p, const RegimePartition& part) {
    Outcome o;
    const double yw = weak_probe(p, part);
    const std::vector<double> y0s{0.05, 0.3, yw, 0.7, 1.0, 1.3, 1.7, 1.95};
    for (int k : {1, 2, 4}) {
        const ModeData d = bump_data(p, k);
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            double worst = 0.0, conj = 0.0;
            int counts[4] = {0, 0, 0, 0};
            for (double y0 : y0s) {
                const auto a = solve_resolvent(p, &part, {k, y0, eps, Side::Plus}, d);
                const auto b = solve_resolvent(p, &part, {k, y0, eps, Side::Minus}, d);
                worst = std::max({worst, a.residual, b.residual});
                conj = std::max(conj, (a.phi - b.phi.conjugate()).norm() / b.phi.norm());
                ++counts[static_cast<int>(a.regime)];
            }
            const bool all_regimes = counts[0] && counts[1] && counts[2] && counts[3];
            o.check(worst <= 1e-6 && conj <= 1e-10 && all_regimes,
                    "k = %d, eps = %.0e: max residual %.2e, conjugation gap %.1e, regimes N/W/M/S = %d/%d/%d/%d", k,
                    eps, worst, conj, counts[0], counts[1], counts[2], counts[3]);
        }
    }
    return o;
}

Outcome oracle_equivalence(const Profile& p, const RegimePartition& part) {
    Outcome o;
    const ModeData d = bump_data(p, 1);
    std::vector<double> times;
    for (int j = 0; j <= 10; ++j) times.push_back(0.5 * j);
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = contour_evolve(p, part, d, times);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EvolveOptions opt;
    opt.t_end = 5.0;
    opt.dt = 1e-3;
    opt.sample_dt = 0.5;
    const auto ev = evolve(p, d, opt);
    double worst = 0.0;
    for (size_t j = 0; j < times.size(); ++j) worst = std::max(worst, relative_l2(tr.psi[j], ev.trajectory.psi[j]));
    o.check(worst < 1e-2, "max over t in [0,5] of |psi_contour - psi_step| / |psi_step| = %.2e (contour %.1f s)",
            worst, secs);
    const ComplexVector psi0 = PoissonSolver(p.grid, 1).solve(d.omega0);
    const double e0 = relative_l2(tr.psi[0], psi0);
    o.check(e0 < 1e-3, "t = 0 reconstruction vs Poisson inverse of omega0: %.2e", e0);
    return o;
}

struct DecayRun {
    std::vector<DecayReport> reports;
    double strong = 0.0, weak = 0.0, mild = 0.0, non = 0.0;
};

DecayRun decay_run(const Profile& p, const RegimePartition& part) {
    DecayRun r;
    r.strong = 1.0;
    r.weak = weak_probe(p, part);
    r.mild = 0.7;
    r.non = 0.05;
    EvolveOptions opt;
    opt.t_end = 200.0;
    opt.sample_dt = 0.05;
    opt.store_fields_until = 0.0;
    opt.probes = {r.strong, r.weak, r.mild, r.non};
    const auto ev = evolve(p, bump_data(p, 1), opt);
    std::vector<Quantity> qs(std::begin(kAllQuantities), std::end(kAllQuantities));
    r.reports = compare(p, part, 1, ev.norms, qs);
    return r;
}

const DecayReport& find(const DecayRun& run, double y, Quantity q) {
    for (const auto& r : run.reports)
        if (r.prediction.y == y && r.prediction.quantity == q) return r;
    throw Error(ErrorCode::InvalidArgument, "missing report");
}

void report_fit(Outcome& o, const DecayRun& run, double y, Quantity q, const char* label) {
    const auto& r = find(run, y, q);
    if (r.prediction.zero_field) {
        o.check(r.pass, "%-16s %-6s max over window %.2e (must be <= 1e-8)", label, to_string(q), r.max_value);
    } else {
        o.check(r.pass, "%-16s %-6s fitted %+.3f +- %.3f, predicted %+.3f", label, to_string(q), r.fitted, r.ci,
                r.prediction.exponent);
    }
}

Outcome decay_exponents(const DecayRun& run, double mu) {
    Outcome o;
    report_fit(o, run, run.strong, Quantity::Vy, "strong y=1");
    report_fit(o, run, run.strong, Quantity::Vx, "strong y=1");
    report_fit(o, run, run.strong, Quantity::Rho, "strong y=1");
    char label[32];
    std::snprintf(label, sizeof label, "weak mu=%.3f", mu);
    report_fit(o, run, run.weak, Quantity::Vx, label);
    report_fit(o, run, run.weak, Quantity::Rho, label);
    report_fit(o, run, run.non, Quantity::Vx, "non-strat y=0.05");
    report_fit(o, run, run.non, Quantity::Vy, "non-strat y=0.05");
    report_fit(o, run, run.non, Quantity::Rho, "non-strat y=0.05");
    const double s = find(run, run.strong, Quantity::Vx).fitted;
    const double w = find(run, run.weak, Quantity::Vx).fitted;
    const double m = find(run, run.mild, Quantity::Vx).fitted;
    o.check(m >= std::min(s, w) - 1e-12 && m <= std::max(s, w) + 1e-12,
            "mild y=0.7 vx fitted %+.3f lies between strong %+.3f and weak %+.3f (predicted %+.3f, %+.3f)", m, s,
            w, find(run, run.strong, Quantity::Vx).prediction.exponent,
            find(run, run.weak, Quantity::Vx).prediction.exponent);
    return o;
}

Outcome growth_exponents(const DecayRun& run) {
    Outcome o;
    report_fit(o, run, run.strong, Quantity::Omega, "strong y=1");
    report_fit(o, run, run.strong, Quantity::DyRho, "strong y=1");
    report_fit(o, run, run.non, Quantity::Omega, "non-strat y=0.05");
    report_fit(o, run, run.non, Quantity::DyRho, "non-strat y=0.05");
    return o;
}

Outcome spectrum_count(const Profile& p) {
    Outcome o;
    for (int k : {1, 2}) {
        const auto c = count_eigenvalues(p, k, default_box(p), 64);
        o.check(c.count == 0, "k = %d: winding %.2e over %ld evaluations, count %d", k, c.winding, c.evaluations,
                c.count);
    }
    const auto s = count_zeros([](Complex l) { return (l - Complex(1.0, 0.4)) * std::exp(0.3 * l); },
                               default_box(p), 16);
    o.check(s.count == 1, "injected zero at 1 + 0.4i: count %d", s.count);
    return o;
}

Outcome critical_layer(const Profile& p, const RegimePartition& part) {
    Outcome o;
    struct Case {
        double y0;
        int k;
        double eps;
    };
    const double yw = weak_probe(p, part);
    for (const Case c : {Case{yw, 1, 1e-3}, Case{0.45, 2, 1e-3}, Case{1.0, 2, 1e-4}, Case{0.9, 1, 1e-3}}) {
        const auto r = richardson(p, c.y0);
        const auto f = solve_resolvent(p, &part, {c.k, c.y0, c.eps, Side::Minus}, bump_data(p, c.k));
        const auto fit = frobenius_fit(p, f, r);
        const double target = 0.5 - r.mu;
        o.check(std::abs(fit.singular_exponent - target) <= 0.05 && fit.residual < 0.05,
                "%-6s y0 = %.4f, k = %d, eps = %.0e: exponent %.3f (1/2 - mu = %.3f), shift %.3f%+.3fi, residual %.1e",
                to_string(f.regime), c.y0, c.k, c.eps, fit.singular_exponent, target, fit.exponent_shift.real(),
                fit.exponent_shift.imag(), fit.residual);
    }
    return o;
}

Outcome duhamel(const Profile& p) {
    Outcome o;
    EvolveOptions opt;
    opt.t_end = 5.0;
    opt.dt = 1e-3;
    const auto ev = evolve(p, bump_data(p, 1), opt);
    const auto r = duhamel_residual(ev.trajectory, p);
    o.check(r.rho <= 1e-4 && r.omega <= 1e-4, "default profile, k = 1: rho %.2e, omega %.2e", r.rho, r.omega);

    ProfileSpec s = default_profile_spec();
    s.family = "unstratified";
    s.shear_amplitude = 0.05;
    const Profile q = build_profile(s);
    const ComplexVector om = gaussian_bump(q, 1.0, 0.1, 0.75);
    const auto ez = evolve(q, 1, om, 0.3 * om, opt);
    const auto rz = duhamel_residual(ez.trajectory, q);
    o.check(rz.rho <= 1e-10, "P = 0 with curved shear: rho identity %.2e", rz.rho);
    return o;
}

}  // namespace

int main() {
    const Profile p = default_profile();
    const auto part = partition_regimes(p);
    int failed = 0;
    auto run = [&](int id, const char* title, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o.check(false, "exception: %s", e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, secs);
        for (const auto& d : o.details) std::printf("      %s\n", d.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    };
    run(1, "special-function identities", special_functions);
    run(2, "Green's-function oracle", green_oracle);
    run(3, "resolvent residual and conjugation", [&] { return resolvent_sweep(p, part); });
    run(4, "contour route vs time-stepper", [&] { return oracle_equivalence(p, part); });
    DecayRun decay;
    bool decay_ok = true;
    std::string decay_error;
    try {
        decay = decay_run(p, part);
    } catch (const std::exception& e) {
        decay_ok = false;
        decay_error = e.what();
    }
    const double mu = richardson(p, weak_probe(p, part)).mu;
    run(5, "decay exponents over t in [20,200]", [&] {
        if (!decay_ok) throw std::runtime_error(decay_error);
        return decay_exponents(decay, mu);
    });
    run(6, "growth exponents over t in [20,200]", [&] {
        if (!decay_ok) throw std::runtime_error(decay_error);
        return growth_exponents(decay);
    });
    run(7, "no discrete spectrum off the real axis", [&] { return spectrum_count(p); });
    run(8, "critical-layer Frobenius exponents", [&] { return critical_layer(p, part); });
    run(9, "Duhamel identities", [&] { return duhamel(p); });
    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
