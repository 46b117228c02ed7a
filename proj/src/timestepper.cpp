#include "stratdamp/timestepper.hpp"

#include <algorithm>
#include <cmath>

#include "stratdamp/interp.hpp"

namespace stratdamp {

PoissonSolver::PoissonSolver(const RealVector& grid, int k) {
    const Eigen::Index m = grid.size() - 2;
    if (m < 3) throw Error(ErrorCode::PoissonFailure, "grid too small");
    h_ = grid(1) - grid(0);
    k2_ = double(k) * k;
    Tridiagonal<double> a(m);
    const double off = 1.0 / (h_ * h_) - k2_ / 12.0;
    const double mid = -2.0 / (h_ * h_) - 10.0 * k2_ / 12.0;
    a.lower.setConstant(off);
    a.upper.setConstant(off);
    a.diag.setConstant(mid);
    try {
        lu_.factor(a);
    } catch (const Error& e) {
        throw Error(ErrorCode::PoissonFailure, e.what());
    }
}

ComplexVector PoissonSolver::solve(const ComplexVector& w) const {
    const Eigen::Index n = w.size();
    ComplexVector b(n - 2);
    for (Eigen::Index i = 1; i + 1 < n; ++i) b(i - 1) = (w(i - 1) + 10.0 * w(i) + w(i + 1)) / 12.0;
    ComplexVector psi = ComplexVector::Zero(n);
    psi.segment(1, n - 2) = lu_.solve(b);
    return psi;
}

double PoissonSolver::residual(const ComplexVector& psi, const ComplexVector& w) const {
    double r = 0.0;
    for (Eigen::Index i = 1; i + 1 < psi.size(); ++i) {
        const Complex lhs = (psi(i - 1) - 2.0 * psi(i) + psi(i + 1)) / (h_ * h_) -
                            k2_ * (psi(i - 1) + 10.0 * psi(i) + psi(i + 1)) / 12.0;
        r = std::max(r, std::abs(lhs - (w(i - 1) + 10.0 * w(i) + w(i + 1)) / 12.0));
    }
    return std::max({r, std::abs(psi(0)), std::abs(psi(psi.size() - 1))});
}

double default_time_step(const Profile& p, int k) {
    const int ak = std::max(1, std::abs(k));
    return std::min(0.05 / (ak * p.C0), 2e-3);
}

namespace {

double l2(const RealVector& grid, const ComplexVector& f) {
    const double h = grid(1) - grid(0);
    double s = 0.5 * (std::norm(f(0)) + std::norm(f(f.size() - 1)));
    for (Eigen::Index i = 1; i + 1 < f.size(); ++i) s += std::norm(f(i));
    return std::sqrt(s * h);
}

}  // namespace

Evolution evolve(const Profile& p, int k, const ComplexVector& omega0, const ComplexVector& rho0,
                 const EvolveOptions& opt) {
    const Eigen::Index n = p.grid.size();
    if (omega0.size() != n || rho0.size() != n) throw Error(ErrorCode::InvalidArgument, "data grid mismatch");
    const double dt_max = 0.1 / (std::max(1, std::abs(k)) * p.C0);
    double dt = opt.dt > 0 ? opt.dt : default_time_step(p, k);
    if (dt > dt_max) throw Error(ErrorCode::CFLViolation, "dt exceeds 0.1/(|k| C0)");
    if (!(opt.t_end >= 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be nonnegative");
    for (double y : opt.probes)
        if (y < 0.0 || y > 2.0) throw Error(ErrorCode::InvalidArgument, "probe outside [0,2]");
    const long sample_every = std::max<long>(1, std::lround(opt.sample_dt / dt));
    const long steps = static_cast<long>(std::ceil(opt.t_end / (dt * sample_every) - 1e-9)) * sample_every;
    if (steps > 0) dt = opt.t_end / double(steps);

    const PoissonSolver poisson(p.grid, k);
    const Complex ik(0.0, double(k));
    const ComplexVector cv2 = p.v2.cast<Complex>(), cP = p.P.cast<Complex>();

    // Integrating-factor variables: Omega = e^{ikvt} omega, R = e^{ikvt} rho.
    ComplexVector Om = omega0, R = rho0;
    auto phases = [&](double t) {
        ComplexVector e(n);
        for (Eigen::Index i = 0; i < n; ++i) e(i) = std::polar(1.0, -double(k) * p.v(i) * t);
        return e;
    };
    auto rhs = [&](const ComplexVector& e, const ComplexVector& Om_, const ComplexVector& R_,
                   ComplexVector& dOm, ComplexVector& dR) {
        const ComplexVector psi = poisson.solve((e.array() * Om_.array()).matrix());
        const ComplexVector back = (e.conjugate().array() * psi.array()).matrix();
        dOm = ik * (cv2.array() * back.array() - p.gravity * R_.array()).matrix();
        dR = ik * (cP.array() * back.array()).matrix();
    };
    ComplexVector step_full(n), step_half(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        step_full(i) = std::polar(1.0, -double(k) * p.v(i) * dt);
        step_half(i) = std::polar(1.0, -double(k) * p.v(i) * 0.5 * dt);
    }

    Evolution out;
    out.dt = dt;
    auto& tr = out.trajectory;
    tr.k = k;
    tr.grid = p.grid;
    tr.source = "timestepper";
    out.norms.probes.resize(opt.probes.size());
    for (size_t j = 0; j < opt.probes.size(); ++j) out.norms.probes[j].y = opt.probes[j];
    const double h = p.grid(1) - p.grid(0);

    auto record = [&](double t, const ComplexVector& e) {
        const ComplexVector omega = (e.array() * Om.array()).matrix();
        const ComplexVector rho = (e.array() * R.array()).matrix();
        const ComplexVector psi = poisson.solve(omega);
        out.poisson_residual = std::max(out.poisson_residual, poisson.residual(psi, omega));
        if (t <= opt.store_fields_until + 1e-12) {
            tr.times.push_back(t);
            tr.psi.push_back(psi);
            tr.rho.push_back(rho);
            tr.omega.push_back(omega);
        }
        auto& ns = out.norms;
        ns.times.push_back(t);
        ns.psi_l2.push_back(l2(p.grid, psi));
        ComplexVector dpsi(n);
        for (Eigen::Index i = 1; i + 1 < n; ++i) dpsi(i) = (psi(i + 1) - psi(i - 1)) / (2.0 * h);
        dpsi(0) = (psi(1) - psi(0)) / h;
        dpsi(n - 1) = (psi(n - 1) - psi(n - 2)) / h;
        ns.dpsi_l2.push_back(l2(p.grid, dpsi));
        ns.rho_l2.push_back(l2(p.grid, rho));
        ns.omega_l2.push_back(l2(p.grid, omega));
        for (auto& pr : ns.probes) {
            const double y = pr.y;
            const Complex ey = std::polar(1.0, -double(k) * p.at(y).v * t);
            const double v1 = p.at(y).v1;
            // d/dy (e^{-ikvt} X) = e^{-ikvt} (X' - ik v' t X) for the smooth factor X
            const Complex Ry = lagrange_interpolate(p.grid, R, y), dRy = lagrange_derivative(p.grid, R, y);
            const Complex Oy = lagrange_interpolate(p.grid, Om, y);
            pr.psi.push_back(std::abs(lagrange_interpolate(p.grid, psi, y)));
            pr.dpsi.push_back(std::abs(lagrange_derivative(p.grid, psi, y)));
            pr.rho.push_back(std::abs(ey * Ry));
            pr.omega.push_back(std::abs(ey * Oy));
            pr.drho.push_back(std::abs(dRy - ik * v1 * t * Ry));
        }
    };

    ComplexVector e = phases(0.0);
    record(0.0, e);
    ComplexVector k1O(n), k1R(n), k2O(n), k2R(n), k3O(n), k3R(n);
    for (long s = 1; s <= steps; ++s) {
        const double t0 = (s - 1) * dt;
        // Resynchronize the phase array now and then to stop drift from repeated products.
        if ((s - 1) % 512 == 0) e = phases(t0);
        const ComplexVector e1 = (e.array() * step_full.array()).matrix();
        const ComplexVector eh = (e.array() * step_half.array()).matrix();
        // SSP-RK3 (Shu-Osher form)
        rhs(e, Om, R, k1O, k1R);
        const ComplexVector O1 = Om + dt * k1O, R1 = R + dt * k1R;
        rhs(e1, O1, R1, k2O, k2R);
        const ComplexVector O2 = 0.75 * Om + 0.25 * (O1 + dt * k2O);
        const ComplexVector R2 = 0.75 * R + 0.25 * (R1 + dt * k2R);
        rhs(eh, O2, R2, k3O, k3R);
        Om = Om / 3.0 + (2.0 / 3.0) * (O2 + dt * k3O);
        R = R / 3.0 + (2.0 / 3.0) * (R2 + dt * k3R);
        e = e1;
        if (s % sample_every == 0) record(s * dt, e);
    }
    return out;
}

Evolution evolve(const Profile& p, const ModeData& init, const EvolveOptions& opt) {
    return evolve(p, init.k, init.omega0, init.rho0, opt);
}

DuhamelResidual duhamel_residual(const ModeTrajectory& tr, const Profile& p) {
    const size_t m = tr.times.size();
    const Eigen::Index n = tr.grid.size();
    DuhamelResidual out;
    out.rho_by_y = RealVector::Zero(n);
    out.omega_by_y = RealVector::Zero(n);
    if (m < 3) return out;
    const Complex ik(0.0, double(tr.k));
    auto back = [&](size_t j) {
        ComplexVector e(n);
        for (Eigen::Index i = 0; i < n; ++i) e(i) = std::polar(1.0, double(tr.k) * p.v(i) * tr.times[j]);
        return e;
    };
    double rho_scale = 1e-300, omega_scale = 1e-300;
    for (size_t j = 0; j < m; ++j) {
        rho_scale = std::max(rho_scale, tr.rho[j].cwiseAbs().maxCoeff());
        omega_scale = std::max(omega_scale, tr.omega[j].cwiseAbs().maxCoeff());
    }
    // Cumulative Simpson integral of the integrands over pairs of intervals.
    std::vector<ComplexVector> fr(m), fw(m);
    for (size_t j = 0; j < m; ++j) {
        const ComplexVector e = back(j);
        fr[j] = ik * (p.P.cast<Complex>().array() * e.array() * tr.psi[j].array()).matrix();
        fw[j] = ik * (e.array() * (p.v2.cast<Complex>().array() * tr.psi[j].array() -
                                   p.gravity * tr.rho[j].array()))
                         .matrix();
    }
    ComplexVector Ir = ComplexVector::Zero(n), Iw = ComplexVector::Zero(n);
    auto check = [&](size_t j, const ComplexVector& ir, const ComplexVector& iw) {
        const ComplexVector e = back(j);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double rr = std::abs(e(i) * tr.rho[j](i) - tr.rho[0](i) - ir(i)) / rho_scale;
            const double rw = std::abs(e(i) * tr.omega[j](i) - tr.omega[0](i) - iw(i)) / omega_scale;
            out.rho_by_y(i) = std::max(out.rho_by_y(i), rr);
            out.omega_by_y(i) = std::max(out.omega_by_y(i), rw);
        }
    };
    for (size_t j = 2; j < m; j += 2) {
        const double h0 = tr.times[j - 1] - tr.times[j - 2], h1 = tr.times[j] - tr.times[j - 1];
        if (std::abs(h0 - h1) > 1e-9 * h0) throw Error(ErrorCode::InvalidArgument, "Duhamel check needs uniform samples");
        const double hh = h0;
        // Odd samples: integral of the interpolating quadratic over the first half.
        const ComplexVector half_r = Ir + hh / 12.0 * (5.0 * fr[j - 2] + 8.0 * fr[j - 1] - fr[j]);
        const ComplexVector half_w = Iw + hh / 12.0 * (5.0 * fw[j - 2] + 8.0 * fw[j - 1] - fw[j]);
        check(j - 1, half_r, half_w);
        Ir += hh / 3.0 * (fr[j - 2] + 4.0 * fr[j - 1] + fr[j]);
        Iw += hh / 3.0 * (fw[j - 2] + 4.0 * fw[j - 1] + fw[j]);
        check(j, Ir, Iw);
    }
    out.rho = out.rho_by_y.maxCoeff();
    out.omega = out.omega_by_y.maxCoeff();
    return out;
}

}  // namespace stratdamp
