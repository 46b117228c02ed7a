#include "stratdamp/spectral_density.hpp"

#include <algorithm>
#include <cmath>

#include "stratdamp/parallel.hpp"

namespace stratdamp {

namespace {

// Value at eps = 0 of the polynomial through (eps_i, f_i) (Neville).
ComplexVector extrapolate_to_zero(const std::vector<double>& eps, std::vector<ComplexVector> f) {
    const size_t m = f.size();
    for (size_t level = 1; level < m; ++level)
        for (size_t i = 0; i + level < m; ++i) {
            const double a = eps[i], b = eps[i + level];
            f[i] = (a * f[i + 1] - b * f[i]) / (a - b);
        }
    return f[0];
}

double l2_away_from(const RealVector& grid, const ComplexVector& f, double y0, double gap) {
    double s = 0.0;
    const double h = grid(1) - grid(0);
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (std::abs(grid(i) - y0) > gap) s += std::norm(f(i));
    return std::sqrt(s * h);
}

bool is_real(const ModeData& d) {
    return d.omega0.imag().cwiseAbs().maxCoeff() == 0.0 && d.varrho0.imag().cwiseAbs().maxCoeff() == 0.0;
}

// (e^z - 1)/z and (e^z - 1 - z)/z^2, with series near 0.
Complex phi1(Complex z) {
    if (std::abs(z) < 1e-3) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return (std::exp(z) - 1.0) / z;
}
Complex phi2(Complex z) {
    if (std::abs(z) < 1e-2) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0 + z * z * z * z / 720.0;
    return (std::exp(z) - 1.0 - z) / (z * z);
}

}  // namespace

SpectralDensitySlice spectral_density(const Profile& p, const RegimePartition& part, int k, double y0,
                                      const ModeData& data, const DensityOptions& opt) {
    if (y0 < 0.0 || y0 > 2.0) throw Error(ErrorCode::InvalidArgument, "y0 outside [0,2]");
    const auto& ladder = opt.eps_ladder;
    if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "empty eps ladder");
    for (size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps ladder must be positive");
        if (i > 0 && !(ladder[i] < ladder[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "eps ladder must be decreasing");
    }
    SpectralDensitySlice s;
    s.k = k;
    s.y0 = y0;
    s.regime = part.lookup(y0);
    s.grid = p.grid;
    const Eigen::Index n = p.grid.size();
    if (data.zero()) {
        s.jump_psi = ComplexVector::Zero(n);
        s.jump_rho = ComplexVector::Zero(n);
        return s;
    }
    const bool conj = opt.use_conjugation && is_real(data);
    std::vector<ComplexVector> diffs;
    for (double eps : ladder) {
        ResolventQuery q{k, y0, eps, Side::Minus};
        const auto minus = solve_resolvent(p, &part, q, data, opt.solver);
        ComplexVector plus_psi;
        if (conj) {
            plus_psi = minus.psi.conjugate();
        } else {
            q.side = Side::Plus;
            const auto plus = solve_resolvent(p, &part, q, data, opt.solver);
            s.max_residual = std::max(s.max_residual, plus.residual);
            plus_psi = plus.psi;
        }
        s.max_residual = std::max(s.max_residual, minus.residual);
        diffs.push_back(minus.psi - plus_psi);
    }
    s.jump_psi = extrapolate_to_zero(ladder, diffs);
    const double v0 = p.at(y0).v;
    const double gap = 4.0 * ladder.front() / p.at(y0).v1;
    if (diffs.size() >= 2) {
        const size_t m = diffs.size();
        const ComplexVector last2 =
            extrapolate_to_zero({ladder[m - 2], ladder[m - 1]}, {diffs[m - 2], diffs[m - 1]});
        s.extrapolation_error = l2_away_from(p.grid, s.jump_psi - last2, y0, gap);
        // Successive rung differences must shrink.
        const double scale = std::max(l2_away_from(p.grid, diffs.back(), y0, gap), 1e-300);
        for (size_t i = 2; i < m; ++i) {
            const double a = l2_away_from(p.grid, diffs[i - 1] - diffs[i - 2], y0, gap);
            const double b = l2_away_from(p.grid, diffs[i] - diffs[i - 1], y0, gap);
            if (b > a && b > 1e-8 * scale)
                throw Error(ErrorCode::NoConvergence, "eps-ladder differences are not decreasing");
        }
    }
    s.jump_rho.resize(n);
    const double eps_min = ladder.back();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dv = p.v(i) - v0;
        s.jump_rho(i) = std::abs(dv) > eps_min ? p.P(i) * s.jump_psi(i) / dv : Complex(0.0);
    }
    return s;
}

ContourQuadrature contour_quadrature(const Profile& p, const RegimePartition& part, int k, double t_max,
                                     const ContourOptions& opt) {
    double lo = opt.full_interval ? 0.0 : p.theta1;
    double hi = opt.full_interval ? 2.0 : p.theta2;
    std::vector<double> breaks{lo, hi};
    std::vector<double> specials;
    if (p.stratified()) {
        for (double b : {part.varpi11, part.varpi1, part.varpi12, part.varpi21, part.varpi2, part.varpi22})
            if (b > lo && b < hi) specials.push_back(b);
        for (double b : {p.theta1, p.theta2})
            if (b > lo && b < hi) specials.push_back(b);
    }
    breaks.insert(breaks.end(), specials.begin(), specials.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-12; }),
                 breaks.end());
    double width = opt.panel_width;
    if (t_max > 0.0) width = std::min(width, kPi / (5.0 * std::abs(k) * p.C0 * t_max));

    // Panel edges: uniform within each piece, then geometric halving next to
    // the regime boundaries.
    std::vector<double> edges;
    for (size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double a = breaks[b], c = breaks[b + 1];
        const int np = std::max(1, static_cast<int>(std::ceil((c - a) / width)));
        std::vector<double> piece;
        for (int j = 0; j <= np; ++j) piece.push_back(a + (c - a) * j / np);
        auto special = [&](double x) {
            return std::any_of(specials.begin(), specials.end(), [&](double s) { return std::abs(s - x) < 1e-12; });
        };
        for (int lvl = 0; lvl < opt.boundary_refinement; ++lvl) {
            if (special(a) && piece.size() >= 2) piece.insert(piece.begin() + 1, 0.5 * (piece[0] + piece[1]));
            if (special(c) && piece.size() >= 2) {
                const size_t e = piece.size() - 1;
                piece.insert(piece.begin() + e, 0.5 * (piece[e - 1] + piece[e]));
            }
        }
        if (!edges.empty()) piece.erase(piece.begin());
        edges.insert(edges.end(), piece.begin(), piece.end());
    }

    const Eigen::VectorXd gx = [&] {
        // Gauss-Legendre nodes by Newton on P_n.
        const int m = opt.gauss_points;
        Eigen::VectorXd x(2 * m);
        for (int i = 0; i < m; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
            double dp = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int j = 2; j <= m; ++j) {
                    const double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x(i) = z;
            x(m + i) = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        return x;
    }();
    ContourQuadrature q;
    const int m = opt.gauss_points;
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e], b = edges[e + 1];
        for (int i = m - 1; i >= 0; --i) {
            q.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * gx(i));
            q.weights.push_back(0.5 * (b - a) * gx(m + i));
        }
    }
    if (static_cast<long>(q.nodes.size()) > opt.max_nodes)
        throw Error(ErrorCode::QuadratureBudgetExceeded,
                    "contour quadrature needs " + std::to_string(q.nodes.size()) + " nodes");
    return q;
}

DensityCache build_density_cache(const Profile& p, const RegimePartition& part, const ModeData& data, double t_max,
                                 const ContourOptions& opt) {
    DensityCache c;
    c.k = data.k;
    c.quadrature = contour_quadrature(p, part, data.k, t_max, opt);
    c.slices.resize(c.quadrature.nodes.size());
    parallel_for(
        static_cast<long>(c.slices.size()),
        [&](long j) { c.slices[j] = spectral_density(p, part, data.k, c.quadrature.nodes[j], data, opt.density); },
        opt.jobs);
    return c;
}

ModeTrajectory contour_evolve(const Profile& p, const ModeData& data, const DensityCache& c,
                              const std::vector<double>& times) {
    ModeTrajectory tr;
    tr.k = c.k;
    tr.grid = p.grid;
    tr.source = "contour";
    const Eigen::Index n = p.grid.size();
    const int k = c.k;
    const Complex ik(0.0, double(k));
    const Complex two_pi_i(0.0, 2.0 * kPi);
    for (double t : times) {
        if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
        // With d = v(y) - v(y0):
        //   psi      = (1/2pi i) int e^{-ikv0 t} J v' dy0
        //   I_psi    = int_0^t e^{ikvs} psi ds = (1/2pi i) int t phi1(ikdt) J v' dy0
        //   I_rho    = int_0^t e^{ikvs} rho ds = t rho0 + P (1/2pi i) int ik t^2 phi2(ikdt) J v' dy0
        // and rho, omega follow from the mode equations integrated along characteristics.
        ComplexVector psi = ComplexVector::Zero(n), ipsi = psi, irho = psi;
        for (size_t j = 0; j < c.slices.size(); ++j) {
            const auto s0 = p.at(c.quadrature.nodes[j]);
            const double w = c.quadrature.weights[j] * s0.v1;
            const auto& jump = c.slices[j].jump_psi;
            psi += (w * std::polar(1.0, -double(k) * s0.v * t)) * jump;
            for (Eigen::Index i = 0; i < n; ++i) {
                const Complex z = ik * (p.v(i) - s0.v) * t;
                ipsi(i) += w * t * phi1(z) * jump(i);
                irho(i) += w * ik * t * t * phi2(z) * jump(i);
            }
        }
        psi /= two_pi_i;
        ipsi /= two_pi_i;
        irho /= two_pi_i;
        psi(0) = 0.0;
        psi(n - 1) = 0.0;
        ComplexVector rho(n), omega(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex e = std::polar(1.0, -double(k) * p.v(i) * t);
            const Complex Irho = t * data.rho0(i) + p.P(i) * irho(i);
            rho(i) = e * (data.rho0(i) + ik * p.P(i) * ipsi(i));
            omega(i) = e * (data.omega0(i) + ik * (p.v2(i) * ipsi(i) - p.gravity * Irho));
        }
        tr.times.push_back(t);
        tr.psi.push_back(psi);
        tr.rho.push_back(rho);
        tr.omega.push_back(omega);
    }
    return tr;
}

ModeTrajectory contour_evolve(const Profile& p, const RegimePartition& part, const ModeData& data,
                              const std::vector<double>& times, const ContourOptions& opt) {
    const double t_max = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
    const auto cache = build_density_cache(p, part, data, t_max, opt);
    return contour_evolve(p, data, cache, times);
}

ModeSnapshot snapshot(const ModeTrajectory& tr, size_t index) {
    if (index >= tr.times.size()) throw Error(ErrorCode::InvalidArgument, "snapshot index out of range");
    return {tr.k, tr.times[index], tr.grid, tr.psi[index], tr.rho[index], tr.omega[index]};
}

LxNorms lx_norms(const std::vector<ModeSnapshot>& modes) {
    LxNorms out;
    if (modes.empty()) return out;
    out.grid = modes.front().grid;
    const Eigen::Index n = out.grid.size();
    const double h = out.grid(1) - out.grid(0);
    RealVector vx = RealVector::Zero(n), vy = vx, rho = vx, omega = vx, drho = vx;
    auto ddy = [&](const ComplexVector& f, Eigen::Index i) {
        if (i == 0) return (f(1) - f(0)) / h;
        if (i == n - 1) return (f(n - 1) - f(n - 2)) / h;
        return (f(i + 1) - f(i - 1)) / (2.0 * h);
    };
    for (const auto& m : modes) {
        if (m.k < 1) throw Error(ErrorCode::InvalidArgument, "lx_norms takes modes with k >= 1");
        if (m.grid.size() != n) throw Error(ErrorCode::InvalidArgument, "modes on different grids");
        for (Eigen::Index i = 0; i < n; ++i) {
            vx(i) += std::norm(ddy(m.psi, i));
            vy(i) += std::norm(double(m.k) * m.psi(i));
            rho(i) += std::norm(m.rho(i));
            omega(i) += std::norm(m.omega(i));
            drho(i) += std::norm(ddy(m.rho, i));
        }
    }
    out.vx = (2.0 * vx).cwiseSqrt();
    out.vy = (2.0 * vy).cwiseSqrt();
    out.rho = (2.0 * rho).cwiseSqrt();
    out.omega = (2.0 * omega).cwiseSqrt();
    out.drho = (2.0 * drho).cwiseSqrt();
    return out;
}

}  // namespace stratdamp
