#include "stratdamp/taylor_goldstein.hpp"

#include <algorithm>
#include <cmath>

#include "stratdamp/interp.hpp"
#include "stratdamp/ode.hpp"
#include "stratdamp/tridiagonal.hpp"
#include "stratdamp/whittaker.hpp"

namespace stratdamp {

void ResolventQuery::validate() const {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "wavenumber must be >= 1");
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    if (y0 < 0.0 || y0 > 2.0) throw Error(ErrorCode::InvalidArgument, "y0 outside [0,2]");
}

std::array<Complex, 3> ModeData::interpolate(double y) const {
    return {lagrange_interpolate(grid, w0, y), lagrange_interpolate(grid, q0, y),
            lagrange_interpolate(grid, varrho0, y)};
}

ModeData regularize_data(const Profile& p, const ComplexVector& omega0, const ComplexVector& varrho0, int k) {
    const Eigen::Index n = p.grid.size();
    if (omega0.size() != n || varrho0.size() != n)
        throw Error(ErrorCode::InvalidArgument, "data must be tabulated on the profile grid");
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "wavenumber must be >= 1");
    const double scale = std::max({omega0.cwiseAbs().maxCoeff(), varrho0.cwiseAbs().maxCoeff(), 1e-300});
    Eigen::Index first = -1, last = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool nz = std::abs(omega0(i)) > 1e-14 * scale || std::abs(varrho0(i)) > 1e-14 * scale;
        if (!nz) continue;
        const double y = p.grid(i);
        if (y <= p.theta1 || y >= p.theta2)
            throw Error(ErrorCode::SupportViolation, "data must be supported inside (theta1, theta2)");
        if (first < 0) first = i;
        last = i;
    }
    ModeData d;
    d.k = k;
    d.grid = p.grid;
    d.omega0 = omega0;
    d.varrho0 = varrho0;
    const double h = p.grid(1) - p.grid(0);
    d.w0 = omega0 - (p.v2.cast<Complex>().array() * varrho0.array()).matrix();
    d.q0 = differentiate_uniform(varrho0, h, 2) - double(k) * double(k) * varrho0;
    d.rho0 = (p.P.cast<Complex>().array() * varrho0.array()).matrix();
    if (first >= 0) d.support = {p.grid(first), p.grid(last)};
    else d.support = {p.theta1, p.theta1};
    return d;
}

ComplexVector gaussian_bump(const Profile& p, double c, double sigma, double cutoff) {
    ComplexVector out(p.grid.size());
    for (Eigen::Index i = 0; i < p.grid.size(); ++i) {
        const double s = (p.grid(i) - c) / cutoff;
        const double cut = std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
        const double d = p.grid(i) - c;
        out(i) = cut * std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return out;
}

RealVector resolvent_mesh(const Profile& p, double y0, double eps0, double grading, double scale) {
    const double hb = 2.0 / double(p.grid.size() - 1);
    auto spacing = [&](double y) {
        const double d2 = (y - y0) * (y - y0) + eps0 * eps0;
        return 1.0 / std::sqrt(1.0 / (hb * hb) + 1.0 / (grading * grading * d2));
    };
    auto rk4 = [&](double y, double sigma) {
        const double k1 = sigma * spacing(y);
        const double k2 = sigma * spacing(y + 0.5 * k1);
        const double k3 = sigma * spacing(y + 0.5 * k2);
        const double k4 = sigma * spacing(y + k3);
        return y + (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    };
    // Count unit steps in the stretched coordinate needed to cross [0,2].
    double y = 0.0, xi = 0.0;
    for (;;) {
        const double yn = rk4(y, 1.0);
        if (yn >= 2.0) {
            xi += (2.0 - y) / (yn - y);
            break;
        }
        y = yn;
        xi += 1.0;
    }
    const long n = std::max<long>(16, static_cast<long>(std::ceil(xi)));
    const double sigma = xi / double(n);
    const long m = static_cast<long>(std::llround(n * scale));
    RealVector mesh(m + 1);
    mesh(0) = 0.0;
    for (long i = 0; i < m; ++i) mesh(i + 1) = rk4(mesh(i), sigma / scale);
    mesh *= 2.0 / mesh(m);
    mesh(m) = 2.0;
    return mesh;
}

namespace {

struct MeshSolve {
    ComplexVector phi;  // including Dirichlet ends
    double residual = 0.0;
};

MeshSolve solve_on_mesh(const Profile& p, const ResolventQuery& q, const ModeData& data, const RealVector& mesh) {
    const auto s0 = p.at(q.y0);
    const Complex shift = Complex(-s0.v, sign_of(q.side) * q.eps);
    const Eigen::Index m = mesh.size() - 2;
    Tridiagonal<Complex> A = second_difference<Complex>(mesh);
    ComplexVector b(m);
    const double k2 = double(q.k) * q.k;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double y = mesh(i + 1);
        const auto s = p.at(y);
        const Complex u = s.v + shift;
        A.diag(i) += -k2 - s.v2 / u + p.gravity * s.P / (u * u);
        const auto d = data.interpolate(y);
        b(i) = d[0] / u + d[1];
    }
    TridiagonalLU<Complex> lu(A);
    if (lu.pivot_ratio() > 1e14) throw Error(ErrorCode::SingularSystem, "resolvent system is numerically singular");
    // Mixed-precision refinement: iterate and residual in long double, since
    // near y0 the stencil weights reach 1/h^2 and double rounding of phi
    // alone would leave a relative residual near 1e-6.
    using Wide = std::complex<long double>;
    const Eigen::Index n = m;
    std::vector<Wide> xw(n);
    auto residual_of = [&](ComplexVector& r) {
        long double worst = 0.0L, bmax = 0.0L;
        for (Eigen::Index i = 0; i < n; ++i) {
            Wide s = Wide(A.diag(i)) * xw[i];
            if (i > 0) s += Wide(A.lower(i)) * xw[i - 1];
            if (i + 1 < n) s += Wide(A.upper(i)) * xw[i + 1];
            const Wide ri = Wide(b(i)) - s;
            r(i) = Complex(static_cast<double>(ri.real()), static_cast<double>(ri.imag()));
            worst = std::max(worst, std::abs(ri));
            bmax = std::max(bmax, static_cast<long double>(std::abs(b(i))));
        }
        return static_cast<double>(worst / (bmax > 0.0L ? bmax : 1.0L));
    };
    ComplexVector x = lu.solve(b);
    for (Eigen::Index i = 0; i < n; ++i) xw[i] = Wide(x(i));
    ComplexVector r(n);
    double err = residual_of(r);
    for (int sweep = 0; sweep < 4 && err > 1e-13; ++sweep) {
        const std::vector<Wide> keep = xw;
        const ComplexVector dx = lu.solve(r);
        for (Eigen::Index i = 0; i < n; ++i) xw[i] += Wide(dx(i));
        ComplexVector rt(n);
        const double et = residual_of(rt);
        if (et >= err) {
            xw = keep;
            break;
        }
        r = rt;
        err = et;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        x(i) = Complex(static_cast<double>(xw[i].real()), static_cast<double>(xw[i].imag()));
    MeshSolve out;
    out.residual = err;
    out.phi = ComplexVector::Zero(mesh.size());
    out.phi.segment(1, m) = x;
    return out;
}

}  // namespace

ResolventField solve_resolvent(const Profile& p, const RegimePartition* partition, const ResolventQuery& q,
                               const ModeData& data, const SolverOptions& opt) {
    q.validate();
    if (data.grid.size() != p.grid.size()) throw Error(ErrorCode::InvalidArgument, "data grid mismatch");
    ResolventField f;
    f.query = q;
    f.regime = partition ? partition->lookup(q.y0) : Regime::NonStratified;
    f.grid = p.grid;
    const double eps0 = q.eps0(p);
    f.mesh = resolvent_mesh(p, q.y0, eps0, opt.grading, 1.0);
    const MeshSolve coarse = solve_on_mesh(p, q, data, f.mesh);
    f.residual = coarse.residual;
    if (opt.extrapolate_mesh) {
        const RealVector fine_mesh = resolvent_mesh(p, q.y0, eps0, opt.grading, 2.0);
        const MeshSolve fine = solve_on_mesh(p, q, data, fine_mesh);
        f.residual = std::max(f.residual, fine.residual);
        const ComplexVector a = lagrange_resample(f.mesh, coarse.phi, f.grid);
        const ComplexVector b = lagrange_resample(fine_mesh, fine.phi, f.grid);
        f.phi = (4.0 * b - a) / 3.0;
        f.phi_mesh = (4.0 * lagrange_resample(fine_mesh, fine.phi, f.mesh) - coarse.phi) / 3.0;
    } else {
        f.phi = lagrange_resample(f.mesh, coarse.phi, f.grid);
        f.phi_mesh = coarse.phi;
    }
    f.phi(0) = 0.0;
    f.phi(f.phi.size() - 1) = 0.0;
    if (f.residual > opt.max_residual)
        throw Error(ErrorCode::ResidualTooLarge, "discrete TG residual " + std::to_string(f.residual));
    const double v0 = p.at(q.y0).v;
    f.psi = f.phi - data.varrho0;
    f.rho.resize(f.grid.size());
    for (Eigen::Index i = 0; i < f.grid.size(); ++i) {
        const Complex u(p.v(i) - v0, sign_of(q.side) * q.eps);
        f.rho(i) = p.P(i) * f.phi(i) / u;
    }
    return f;
}

Complex error_operator(const Profile& p, const ResolventQuery& q, double y) {
    const auto s = p.at(y);
    const auto s0 = p.at(q.y0);
    const double sg = sign_of(q.side);
    const Complex u(s.v - s0.v, sg * q.eps);
    const Complex xi(y - q.y0, sg * q.eps / s0.v1);
    const double cal = p.gravity * s.P;
    const double cal0 = p.gravity * s0.P;
    const double J0 = cal0 / (s0.v1 * s0.v1);
    return -s.v2 / u + (cal - cal0) / (u * u) + (cal0 / (u * u) - J0 / (xi * xi));
}

double laplacian_green(int k, double y, double z) {
    const double lo = std::min(y, z), hi = std::max(y, z);
    return -std::sinh(k * (2.0 - hi)) * std::sinh(k * lo) / (k * std::sinh(2.0 * k));
}

GreenFunction::GreenFunction(const Profile& p, const RegimePartition& part, const ResolventQuery& q,
                             GreenFormula formula)
    : query_(q) {
    q.validate();
    const auto s0 = p.at(q.y0);
    eps0_ = q.eps / s0.v1;
    J0_ = std::max(0.0, p.gravity * s0.P / (s0.v1 * s0.v1));
    gamma0_ = std::sqrt(Complex(0.25 - J0_, 0.0));
    regime_ = part.lookup(q.y0);
    if (formula == GreenFormula::Auto) {
        switch (regime_) {
            case Regime::NonStratified: formula = GreenFormula::Laplacian; break;
            case Regime::Mild: formula = GreenFormula::MWPair; break;
            default: formula = GreenFormula::MPair; break;
        }
    }
    if (formula == GreenFormula::MPair && std::abs(gamma0_) < kSmallGammaSwitch)
        throw Error(ErrorCode::RegimeBoundary, "gamma0 too close to 0 for the M pair; use the mild formulas");
    if (formula == GreenFormula::Laplacian && J0_ != 0.0)
        throw Error(ErrorCode::InvalidArgument, "Laplacian Green's function requires J(y0) = 0");
    formula_ = formula;
    const double k = q.k;
    if (formula_ == GreenFormula::Laplacian) {
        wronskian_ = -k * std::sinh(2.0 * k);
    } else {
        a_lo_ = basis_first(xi(0.0));
        b_lo_ = basis_second(xi(0.0));
        a_hi_ = basis_first(xi(2.0));
        b_hi_ = basis_second(xi(2.0));
        const Complex det = a_lo_ * b_hi_ - b_lo_ * a_hi_;
        if (formula_ == GreenFormula::MPair) {
            wronskian_ = -4.0 * k * gamma0_ * det;
        } else {
            wronskian_ = -2.0 * k * complex_gamma(1.0 + 2.0 * gamma0_) / complex_gamma(0.5 + gamma0_) * det;
        }
        const double floor = 1e-10 * k * (std::abs(a_lo_ * b_hi_) + std::abs(b_lo_ * a_hi_));
        if (!(std::abs(wronskian_) > floor) || !std::isfinite(std::abs(wronskian_)))
            throw Error(ErrorCode::WronskianCollapse, "Wronskian below floor");
    }
    grid = p.grid;
    phi_u_grid.resize(grid.size());
    phi_l_grid.resize(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        phi_u_grid(i) = phi_u(grid(i));
        phi_l_grid(i) = phi_l(grid(i));
    }
}

Complex GreenFunction::basis_first(Complex x) const { return whittaker_M(gamma0_, 2.0 * query_.k * x); }

Complex GreenFunction::basis_second(Complex x) const {
    if (formula_ == GreenFormula::MPair) return whittaker_M(-gamma0_, 2.0 * query_.k * x);
    return whittaker_W(gamma0_, 2.0 * query_.k * x);
}

Complex GreenFunction::phi_u(double y) const {
    if (formula_ == GreenFormula::Laplacian) return std::sinh(query_.k * (2.0 - y));
    if (y >= 2.0) return 0.0;
    const Complex x = xi(y);
    return a_hi_ * basis_second(x) - b_hi_ * basis_first(x);
}

Complex GreenFunction::phi_l(double y) const {
    if (formula_ == GreenFormula::Laplacian) return std::sinh(query_.k * y);
    if (y <= 0.0) return 0.0;
    const Complex x = xi(y);
    return a_lo_ * basis_second(x) - b_lo_ * basis_first(x);
}

Complex GreenFunction::operator()(double y, double z) const {
    if (z <= y) return phi_u(y) * phi_l(z) / wronskian_;
    return phi_l(y) * phi_u(z) / wronskian_;
}

GreenFunction rtg_green(const Profile& p, const RegimePartition& part, const ResolventQuery& q) {
    return GreenFunction(p, part, q);
}

ComplexVector green_fixed_point(const Profile& p, const GreenFunction& g, const ModeData& data,
                                const RealVector& mesh, const ComplexVector& phi_mesh, const RealVector& at) {
    const auto& q = g.query();
    const auto s0 = p.at(q.y0);
    const Eigen::Index n = mesh.size();
    ComplexVector pu(n), pl(n), src(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double z = mesh(j);
        pu(j) = g.phi_u(z);
        pl(j) = g.phi_l(z);
        const Complex u(p.at(z).v - s0.v, sign_of(q.side) * q.eps);
        const auto d = data.interpolate(z);
        src(j) = d[0] / u + d[1] - error_operator(p, q, z) * phi_mesh(j);
    }
    RealVector w = RealVector::Zero(n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const double h = mesh(j + 1) - mesh(j);
        w(j) += 0.5 * h;
        w(j + 1) += 0.5 * h;
    }
    ComplexVector out(at.size());
    for (Eigen::Index i = 0; i < at.size(); ++i) {
        const double y = at(i);
        const Complex uy = g.phi_u(y), ly = g.phi_l(y);
        Complex lower = 0.0, upper = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (mesh(j) <= y) lower += w(j) * pl(j) * src(j);
            else upper += w(j) * pu(j) * src(j);
        }
        out(i) = (uy * lower + ly * upper) / g.wronskian();
    }
    return out;
}

namespace {

using State2 = Eigen::Matrix<Complex, 2, 1>;
using State4 = Eigen::Matrix<Complex, 4, 1>;

struct PairCoefficients {
    const Profile& p;
    double v0, eps_signed, J0;
    int k;

    // f'' = -(2 a v'/u) f' - C f with C = (calP - J0 v'^2)/u^2 + (a-1) v''/u - k^2
    void eval(double y, Complex a, Complex& u, Complex& drift, Complex& c, ProfileSample& s) const {
        s = p.at(y);
        u = Complex(s.v - v0, eps_signed);
        drift = 2.0 * a * s.v1 / u;
        c = (p.gravity * s.P - J0 * s.v1 * s.v1) / (u * u) + (a - 1.0) * s.v2 / u - double(k) * k;
    }
};

// Integrate the normalized amplitude ODE from y0 to each grid node.
template <typename State, typename Rhs>
std::vector<State> integrate_from_y0(Rhs&& rhs, double y0, const RealVector& grid, const State& init, double tol) {
    std::vector<State> out(grid.size());
    const Eigen::Index n = grid.size();
    const auto it = std::lower_bound(grid.data(), grid.data() + n, y0);
    const Eigen::Index right = static_cast<Eigen::Index>(it - grid.data());
    AdaptiveControl ctl;
    ctl.rtol = tol;
    ctl.atol = tol * 1e-3;
    ctl.failure = ErrorCode::StiffIntegration;
    State s = init;
    double x = y0;
    for (Eigen::Index i = right; i < n; ++i) {
        s = integrate_adaptive(rhs, x, grid(i), s, ctl);
        x = grid(i);
        out[i] = s;
    }
    ctl.h = 0.0;
    s = init;
    x = y0;
    for (Eigen::Index i = right - 1; i >= 0; --i) {
        s = integrate_adaptive(rhs, x, grid(i), s, ctl);
        x = grid(i);
        out[i] = s;
    }
    return out;
}

}  // namespace

HomogeneousPair homogeneous_pair(const Profile& p, const ResolventQuery& q, double tol, const RealVector* grid_in) {
    q.validate();
    if (q.y0 <= p.theta1 || q.y0 >= p.theta2)
        throw Error(ErrorCode::InvalidArgument, "homogeneous pair requires y0 inside (theta1, theta2)");
    const auto s0 = p.at(q.y0);
    const double J0 = p.gravity * s0.P / (s0.v1 * s0.v1);
    HomogeneousPair hp;
    hp.query = q;
    hp.gamma0 = std::sqrt(Complex(0.25 - J0, 0.0));
    hp.grid = grid_in ? *grid_in : p.grid;
    hp.mild = std::abs(hp.gamma0) < kSmallGammaSwitch;
    const bool critical = std::abs(hp.gamma0) < 1e-8;
    const PairCoefficients pc{p, s0.v, sign_of(q.side) * q.eps, J0, q.k};

    auto amplitude = [&](Complex a) {
        auto rhs = [&](double y, const State2& st) {
            Complex u, drift, c;
            ProfileSample s;
            pc.eval(y, a, u, drift, c, s);
            State2 d;
            d << st(1), -drift * st(1) - c * st(0);
            return d;
        };
        State2 init;
        init << 1.0, 0.0;
        return integrate_from_y0(rhs, q.y0, hp.grid, init, tol);
    };
    const Eigen::Index n = hp.grid.size();
    hp.first.resize(n);
    hp.first_d.resize(n);
    hp.second.resize(n);
    hp.second_d.resize(n);
    auto assemble = [&](Complex a, const std::vector<State2>& f, ComplexVector& phi, ComplexVector& dphi) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto s = p.at(hp.grid(i));
            const Complex u(s.v - s0.v, pc.eps_signed);
            const Complex ua = std::pow(u, a);
            phi(i) = ua * f[i](0);
            dphi(i) = a * ua / u * s.v1 * f[i](0) + ua * f[i](1);
        }
    };
    if (critical) {
        // phi_L = u^{1/2} (log u f + g) with g = d f / d a at a = 1/2.
        auto rhs = [&](double y, const State4& st) {
            Complex u, drift, c;
            ProfileSample s;
            pc.eval(y, 0.5, u, drift, c, s);
            State4 d;
            d << st(1), -drift * st(1) - c * st(0), st(3),
                -drift * st(3) - c * st(2) - (2.0 * s.v1 * st(1) + s.v2 * st(0)) / u;
            return d;
        };
        State4 init;
        init << 1.0, 0.0, 0.0, 0.0;
        const auto f = integrate_from_y0(rhs, q.y0, hp.grid, init, tol);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto s = p.at(hp.grid(i));
            const Complex u(s.v - s0.v, pc.eps_signed);
            const Complex r = std::sqrt(u), lu = std::log(u);
            hp.first(i) = r * f[i](0);
            hp.first_d(i) = 0.5 * r / u * s.v1 * f[i](0) + r * f[i](1);
            const Complex inner = lu * f[i](0) + f[i](2);
            hp.second(i) = r * inner;
            hp.second_d(i) = 0.5 * r / u * s.v1 * inner + r * (s.v1 / u * f[i](0) + lu * f[i](1) + f[i](3));
        }
    } else {
        const Complex ar = 0.5 + hp.gamma0, as = 0.5 - hp.gamma0;
        assemble(ar, amplitude(ar), hp.first, hp.first_d);
        ComplexVector phs(n), dphs(n);
        assemble(as, amplitude(as), phs, dphs);
        if (hp.mild) {
            hp.second = (hp.first - phs) / (2.0 * hp.gamma0);
            hp.second_d = (hp.first_d - dphs) / (2.0 * hp.gamma0);
        } else {
            hp.second = phs;
            hp.second_d = dphs;
        }
    }
    // Wronskian at the node nearest y0 (constant in y up to integration error).
    Eigen::Index i0 = 0;
    (hp.grid.array() - q.y0).abs().minCoeff(&i0);
    hp.wronskian = hp.first(i0) * hp.second_d(i0) - hp.first_d(i0) * hp.second(i0);
    hp.expected_wronskian = hp.mild ? Complex(s0.v1) : -2.0 * hp.gamma0 * s0.v1;
    const double scale = std::abs(hp.first(i0) * hp.second_d(i0)) + std::abs(hp.first_d(i0) * hp.second(i0));
    if (!(std::abs(hp.wronskian) > 1e-12 * scale))
        throw Error(ErrorCode::DegeneratePair, "homogeneous solutions are numerically dependent");
    return hp;
}

namespace {

struct LinearFit {
    Complex a, b;
    double residual;
};

// Critical-layer expansion of a forced solution: the two Frobenius powers plus
// the analytic particular part (eta, eta^2) generated by w0/u and q0.
LinearFit fit_two_powers(const std::vector<Complex>& eta, const std::vector<Complex>& phi, Complex s) {
    const Eigen::Index n = static_cast<Eigen::Index>(eta.size());
    Eigen::MatrixXcd B(n, 4);
    Eigen::VectorXcd f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex e = eta[i];
        B(i, 0) = std::pow(e, 0.5 + s);
        B(i, 1) = std::pow(e, 0.5 - s);
        B(i, 2) = e;
        B(i, 3) = e * e;
        f(i) = phi[i];
    }
    const Eigen::VectorXcd c = B.colPivHouseholderQr().solve(f);
    const double res = (B * c - f).norm() / std::max(f.norm(), 1e-300);
    return {c(0), c(1), res};
}

}  // namespace

FrobeniusFit frobenius_fit(const Profile& p, const ResolventField& field, const RichardsonPoint& rich) {
    const auto& q = field.query;
    if (std::abs(rich.gamma) < kSmallGammaSwitch)
        throw Error(ErrorCode::IllConditionedFit, "gamma0 near 0: the mild regime needs a logarithmic basis");
    if (rich.J <= 0.0 || rich.mu > 0.5 - 1e-3)
        throw Error(ErrorCode::IllConditionedFit, "no critical-layer singularity at a non-stratified y0");
    const double eps0 = q.eps0(p);
    const double h = (field.grid(field.grid.size() - 1) - field.grid(0)) / static_cast<double>(field.grid.size() - 1);
    // Outside the eps layer, inside the zone where J is close to J(y0).
    const double d_lo = std::max(10.0 * eps0, 4.0 * h), d_hi = kFrobeniusReach;
    std::vector<Complex> eta, phi;
    for (Eigen::Index i = 0; i < field.grid.size(); ++i) {
        const double d = std::abs(field.grid(i) - q.y0);
        if (d >= d_lo && d <= d_hi && field.grid(i) > 0.0 && field.grid(i) < 2.0) {
            eta.push_back(2.0 * q.k * Complex(field.grid(i) - q.y0, sign_of(q.side) * eps0));
            phi.push_back(field.phi(i));
        }
    }
    if (eta.size() < 16) throw Error(ErrorCode::IllConditionedFit, "critical-layer window holds too few nodes");
    FrobeniusFit out;
    const auto fixed = fit_two_powers(eta, phi, rich.gamma);
    out.a_r = fixed.a;
    out.a_s = fixed.b;
    out.residual = fixed.residual;

    // Free exponent by variable projection. The basis is symmetric under s -> -s,
    // so Re s >= 0 covers every pair of roots.
    auto cost = [&](double sr, double si) { return fit_two_powers(eta, phi, Complex(std::abs(sr), si)).residual; };
    double best = std::numeric_limits<double>::infinity();
    double bx = 0.25, by = 0.0;
    for (int a = 0; a <= 49; ++a)
        for (int b = -25; b <= 25; ++b) {
            const double c = cost(0.01 * a, 0.04 * b);
            if (c < best) {
                best = c;
                bx = 0.01 * a;
                by = 0.04 * b;
            }
        }
    std::array<std::array<double, 3>, 3> simplex = {
        {{bx, by, cost(bx, by)}, {bx + 0.01, by, cost(bx + 0.01, by)}, {bx, by + 0.02, cost(bx, by + 0.02)}}};
    for (int it = 0; it < 400; ++it) {
        std::sort(simplex.begin(), simplex.end(), [](auto& l, auto& r) { return l[2] < r[2]; });
        if (std::abs(simplex[2][2] - simplex[0][2]) < 1e-14 * (1.0 + simplex[0][2])) break;
        const double cx = 0.5 * (simplex[0][0] + simplex[1][0]);
        const double cy = 0.5 * (simplex[0][1] + simplex[1][1]);
        auto at = [&](double t) {
            const double x = cx + t * (simplex[2][0] - cx), y = cy + t * (simplex[2][1] - cy);
            return std::array<double, 3>{x, y, cost(x, y)};
        };
        const auto r = at(-1.0);
        if (r[2] < simplex[0][2]) {
            const auto e = at(-2.0);
            simplex[2] = e[2] < r[2] ? e : r;
        } else if (r[2] < simplex[1][2]) {
            simplex[2] = r;
        } else {
            const auto c = at(r[2] < simplex[2][2] ? -0.5 : 0.5);
            if (c[2] < std::min(r[2], simplex[2][2])) {
                simplex[2] = c;
            } else {
                for (int j = 1; j < 3; ++j) {
                    simplex[j][0] = 0.5 * (simplex[j][0] + simplex[0][0]);
                    simplex[j][1] = 0.5 * (simplex[j][1] + simplex[0][1]);
                    simplex[j][2] = cost(simplex[j][0], simplex[j][1]);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), [](auto& l, auto& r) { return l[2] < r[2]; });
    out.exponent_shift = Complex(std::abs(simplex[0][0]), std::abs(simplex[0][1]));
    out.free_residual = simplex[0][2];
    out.singular_exponent = 0.5 - out.exponent_shift.real();
    return out;
}

}  // namespace stratdamp
