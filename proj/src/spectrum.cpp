#include "stratdamp/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "stratdamp/ode.hpp"
#include "stratdamp/parallel.hpp"

namespace stratdamp {

namespace {

using State = Eigen::Matrix<Complex, 2, 1>;

ComplexVector shoot(const Profile& p, int k, Complex lambda, double g, double tol, const RealVector* stops,
                    Complex& W) {
    auto rhs = [&](double y, const State& s) {
        const auto b = p.at(y);
        const Complex u = b.v - lambda;
        State d;
        d << s(1), (double(k) * k + b.v2 / u - g * b.P / (u * u)) * s(0);
        return d;
    };
    AdaptiveControl ctl;
    ctl.rtol = tol;
    ctl.atol = tol * 1e-3;
    ctl.failure = ErrorCode::IntegrationFailure;
    State s;
    s << 0.0, 1.0;
    ComplexVector out;
    double x = 2.0;
    if (stops) {
        out.resize(stops->size());
        for (Eigen::Index i = stops->size() - 1; i >= 0; --i) {
            s = integrate_adaptive(rhs, x, (*stops)(i), s, ctl);
            x = (*stops)(i);
            out(i) = s(0);
        }
    }
    s = integrate_adaptive(rhs, x, 0.0, s, ctl);
    W = s(0);
    return out;
}

}  // namespace

ShootingResult shooting_wronskian(const Profile& p, int k, Complex lambda, double g_scale, double tol, bool tabulate,
                                  bool estimate_residual) {
    const double vmin = p.v.minCoeff(), vmax = p.v.maxCoeff();
    if (lambda.imag() == 0.0 && lambda.real() >= vmin && lambda.real() <= vmax)
        throw Error(ErrorCode::InvalidArgument, "real lambda inside the range of v: the equation is singular");
    const double g = g_scale < 0.0 ? p.gravity : g_scale;
    ShootingResult r;
    r.lambda = lambda;
    if (tabulate || estimate_residual) r.grid = p.grid;
    r.phi = shoot(p, k, lambda, g, tol, (tabulate || estimate_residual) ? &r.grid : nullptr, r.W);
    if (estimate_residual) {
        Complex w2;
        const ComplexVector ref = shoot(p, k, lambda, g, tol * 1e-2, &r.grid, w2);
        const double scale = std::max(ref.cwiseAbs().maxCoeff(), 1e-300);
        r.residual = (r.phi - ref).cwiseAbs().maxCoeff() / scale;
    }
    return r;
}

Box default_box(const Profile& p) { return {p.v(0) - 0.5, p.v(p.v.size() - 1) + 0.5, 0.05, 1.0}; }

Interval essential_band(const Profile& p) { return {p.at(p.theta1).v, p.at(p.theta2).v}; }

EigenCount count_zeros(const std::function<Complex(Complex)>& f, const Box& box, int nodes_per_side, int jobs) {
    if (nodes_per_side < 2) throw Error(ErrorCode::InvalidArgument, "nodes_per_side must be >= 2");
    if (!(box.re_lo < box.re_hi && box.im_lo < box.im_hi)) throw Error(ErrorCode::InvalidArgument, "empty box");
    // Counterclockwise boundary, parametrized by s in [0, 4).
    auto point = [&](double s) {
        const int side = std::min(3, static_cast<int>(s));
        const double a = s - side;
        switch (side) {
            case 0: return Complex(box.re_lo + a * (box.re_hi - box.re_lo), box.im_lo);
            case 1: return Complex(box.re_hi, box.im_lo + a * (box.im_hi - box.im_lo));
            case 2: return Complex(box.re_hi - a * (box.re_hi - box.re_lo), box.im_hi);
            default: return Complex(box.re_lo, box.im_hi - a * (box.im_hi - box.im_lo));
        }
    };
    const long m = 4L * nodes_per_side;
    std::vector<Complex> base(m);
    parallel_for(m, [&](long j) { base[j] = f(point(double(j) / nodes_per_side)); }, jobs);

    EigenCount out;
    out.box = box;
    out.evaluations = m;
    double arg = std::arg(base[0]);
    out.scan.push_back({point(0.0), base[0], arg});
    // Adds the argument change from (s0, w0) to (s1, w1), bisecting when it is large.
    std::function<void(double, Complex, double, Complex, int)> walk = [&](double s0, Complex w0, double s1,
                                                                         Complex w1, int depth) {
        if (w0 == 0.0 || w1 == 0.0) throw Error(ErrorCode::UnresolvedWinding, "zero on the contour");
        const double d = std::arg(w1 / w0);
        if (std::abs(d) > kPi / 2) {
            if (depth > 20) throw Error(ErrorCode::UnresolvedWinding, "argument increment not resolved");
            const double sm = 0.5 * (s0 + s1);
            const Complex wm = f(point(sm));
            ++out.evaluations;
            walk(s0, w0, sm, wm, depth + 1);
            walk(sm, wm, s1, w1, depth + 1);
            return;
        }
        arg += d;
        out.scan.push_back({point(s1), w1, arg});
    };
    for (long j = 0; j < m; ++j) {
        const long jn = (j + 1) % m;
        walk(double(j) / nodes_per_side, base[j], double(j + 1) / nodes_per_side, base[jn], 0);
    }
    out.winding = (arg - out.scan.front().argument) / (2.0 * kPi);
    out.count = static_cast<int>(std::lround(out.winding));
    if (std::abs(out.winding - out.count) > 1e-6)
        throw Error(ErrorCode::UnresolvedWinding, "winding number is not an integer");
    return out;
}

EigenCount count_eigenvalues(const Profile& p, int k, const Box& box, int nodes_per_side, double g_scale, int jobs) {
    // The contour must keep away from the real range of v, where W degenerates.
    const double s1 = p.v(0), s2 = p.v(p.v.size() - 1);
    const double b1 = p.at(p.theta1).v, b2 = p.at(p.theta2).v;
    auto distance = [&](Complex z, double lo, double hi) {
        return std::hypot(std::max({0.0, lo - z.real(), z.real() - hi}), z.imag());
    };
    for (int j = 0; j <= 4000; ++j) {
        const double s = 4.0 * j / 4000.0;
        const int side = std::min(3, static_cast<int>(s));
        const double a = s - side;
        Complex z;
        switch (side) {
            case 0: z = {box.re_lo + a * (box.re_hi - box.re_lo), box.im_lo}; break;
            case 1: z = {box.re_hi, box.im_lo + a * (box.im_hi - box.im_lo)}; break;
            case 2: z = {box.re_hi - a * (box.re_hi - box.re_lo), box.im_hi}; break;
            default: z = {box.re_lo, box.im_hi - a * (box.im_hi - box.im_lo)}; break;
        }
        if (distance(z, b1, b2) < 0.02 || distance(z, s1, s1) < 0.02 || distance(z, s2, s2) < 0.02)
            throw Error(ErrorCode::BoundaryTooClose, "contour passes within 0.02 of the real range of v");
    }
    auto W = [&](Complex lambda) { return shooting_wronskian(p, k, lambda, g_scale).W; };
    return count_zeros(W, box, nodes_per_side, jobs);
}

}  // namespace stratdamp
