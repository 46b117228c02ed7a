#include "stratdamp/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stratdamp/jet.hpp"

namespace stratdamp {

namespace {

using Jet4 = Jet<4>;

// C^2 symmetric bump on [-1,1] whose curvature is a trapezoid: S'' = 1 near
// the edges, -1 around the crest, linear ramps of length r in between.
class TrapezoidShape {
public:
    explicit TrapezoidShape(double r) {
        const double c = -0.5 + r / 4.0;
        knots_ = {-1.0, -1.0 + r, c - r, c + r, 0.0};
        const std::array<double, 5> q = {0.0, 1.0, 1.0, -1.0, -1.0};
        double S = 0.0, dS = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double len = knots_[i + 1] - knots_[i];
            const double m = (q[i + 1] - q[i]) / len;
            seg_[i] = {S, dS, q[i] / 2.0, m / 6.0};
            S += dS * len + q[i] * len * len / 2.0 + m * len * len * len / 6.0;
            dS += q[i] * len + m * len * len / 2.0;
        }
        peak_ = S;
    }

    double peak() const { return peak_; }

    // Jet in s, truncated at order 4.
    Jet4 operator()(double s) const {
        Jet4 out;
        if (std::abs(s) >= 1.0) return out;
        const double sm = -std::abs(s);
        int i = 3;
        while (i > 0 && sm < knots_[i]) --i;
        const double d = sm - knots_[i];
        const auto& a = seg_[i];
        // re-expand the cubic about sm
        out.c[0] = a[0] + a[1] * d + a[2] * d * d + a[3] * d * d * d;
        out.c[1] = a[1] + 2 * a[2] * d + 3 * a[3] * d * d;
        out.c[2] = a[2] + 3 * a[3] * d;
        out.c[3] = a[3];
        if (s > 0.0) {
            out.c[1] = -out.c[1];
            out.c[3] = -out.c[3];
        }
        return out;
    }

private:
    std::array<double, 5> knots_{};
    std::array<std::array<double, 4>, 4> seg_{};
    double peak_ = 0.0;
};

Jet4 exp_bump(const Jet4& s) {
    if (std::abs(s.c[0]) >= 1.0) return Jet4(0.0);
    const Jet4 u = Jet4(1.0) - s * s;
    return exp(Jet4(1.0) - Jet4(1.0) / u);
}

// Rescale a jet in s = (y - c)/w to a jet in y.
Jet4 to_y(Jet4 j, double w) {
    double f = 1.0;
    for (int k = 1; k <= 4; ++k) {
        f /= w;
        j.c[k] *= f;
    }
    return j;
}

class AnalyticModel : public ProfileModel {
public:
    explicit AnalyticModel(const ProfileSpec& s) : spec_(s), trap_(s.ramp) {}

    ProfileSample sample(double y) const override {
        ProfileSample o;
        Jet4 v = Jet4::variable(y);
        if (spec_.shear_amplitude != 0.0) {
            Jet4 s = Jet4::variable((y - spec_.shear_center) / spec_.shear_width);
            v = v + Jet4(spec_.shear_amplitude) * to_y(exp_bump(s), spec_.shear_width);
        }
        o.v = v.derivative(0);
        o.v1 = v.derivative(1);
        o.v2 = v.derivative(2);
        o.v3 = v.derivative(3);
        o.v4 = v.derivative(4);
        const double s0 = (y - spec_.center) / spec_.half_width;
        Jet4 P;
        if (spec_.family == "trapezoid") {
            P = to_y(trap_(s0), spec_.half_width);
            P = P * Jet4(spec_.amplitude / trap_.peak());
        } else if (spec_.family == "exp-bump") {
            P = to_y(exp_bump(Jet4::variable(s0)), spec_.half_width) * Jet4(spec_.amplitude);
        }
        o.P = P.derivative(0);
        o.P1 = P.derivative(1);
        o.P2 = P.derivative(2);
        return o;
    }

private:
    ProfileSpec spec_;
    TrapezoidShape trap_;
};

// Local 6-point Lagrange interpolation of uniformly tabulated fields.
class TabulatedModel : public ProfileModel {
public:
    TabulatedModel(double h, std::array<RealVector, 8> fields) : h_(h), f_(std::move(fields)) {}

    ProfileSample sample(double y) const override {
        const Eigen::Index n = f_[0].size();
        Eigen::Index i0 = static_cast<Eigen::Index>(std::floor(y / h_)) - 2;
        i0 = std::clamp<Eigen::Index>(i0, 0, n - 6);
        std::array<double, 6> w{};
        for (int a = 0; a < 6; ++a) {
            double p = 1.0;
            const double ya = (i0 + a) * h_;
            for (int b = 0; b < 6; ++b)
                if (b != a) p *= (y - (i0 + b) * h_) / (ya - (i0 + b) * h_);
            w[a] = p;
        }
        std::array<double, 8> out{};
        for (int k = 0; k < 8; ++k)
            for (int a = 0; a < 6; ++a) out[k] += w[a] * f_[k](i0 + a);
        return {out[0], out[1], out[2], out[3], out[4], out[5], out[6], out[7]};
    }

private:
    double h_;
    std::array<RealVector, 8> f_;
};

double bisect_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                   double a, double b) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 3; ++it) {
        const double d = df(x);
        if (d == 0.0) break;
        const double xn = x - f(x) / d;
        if (xn < a - 1e-12 || xn > b + 1e-12) break;
        x = xn;
    }
    return x;
}

std::vector<double> level_roots(const Profile& p, double level) {
    std::vector<double> roots;
    auto f = [&](double y) { return p.J(y) - level; };
    auto df = [&](double y) { return p.dJ(y); };
    const Eigen::Index n = p.grid.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double a = p.grid(i), b = p.grid(i + 1);
        if (b <= p.theta1 || a >= p.theta2) continue;
        const double fa = f(a), fb = f(b);
        if (fa == 0.0) {
            roots.push_back(a);
            continue;
        }
        if ((fa < 0) != (fb < 0) && fb != 0.0) roots.push_back(bisect_root(f, df, a, b));
    }
    return roots;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void assign_key(ProfileSpec& spec, const std::string& key, const std::string& raw) {
    std::string val = trim(raw);
    const bool quoted = val.size() >= 2 && (val.front() == '"' || val.front() == '\'');
    if (quoted) val = val.substr(1, val.size() - 2);
    auto num = [&]() {
        try {
            size_t pos = 0;
            const double d = std::stod(val, &pos);
            if (pos != val.size()) throw std::invalid_argument(val);
            return d;
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigParse, "key '" + key + "' expects a number, got '" + val + "'");
        }
    };
    if (key == "family") spec.family = val;
    else if (key == "amplitude" || key == "A") spec.amplitude = num();
    else if (key == "center") spec.center = num();
    else if (key == "half_width" || key == "w") spec.half_width = num();
    else if (key == "ramp") spec.ramp = num();
    else if (key == "shear_amplitude") spec.shear_amplitude = num();
    else if (key == "shear_center") spec.shear_center = num();
    else if (key == "shear_width") spec.shear_width = num();
    else if (key == "gravity" || key == "g") spec.gravity = num();
    else if (key == "grid_n") spec.grid_n = static_cast<int>(num());
    else throw Error(ErrorCode::ConfigParse, "unknown profile key '" + key + "'");
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::NonStratified: return "non-stratified";
        case Regime::Weak: return "weak";
        case Regime::Mild: return "mild";
        case Regime::Strong: return "strong";
    }
    return "?";
}

double Profile::J(double y) const {
    const auto s = at(y);
    return gravity * s.P / (s.v1 * s.v1);
}

double Profile::dJ(double y) const {
    const auto s = at(y);
    return gravity * (s.P1 * s.v1 - 2.0 * s.P * s.v2) / (s.v1 * s.v1 * s.v1);
}

RealVector Profile::J_grid() const {
    return (gravity * P.array() / v1.array().square()).matrix();
}

ProfileSpec default_profile_spec() { return ProfileSpec{}; }

Profile default_profile() { return build_profile(default_profile_spec()); }

RealVector fd_weights(const RealVector& x, double x0, int m) {
    // Fornberg's recursion.
    const int n = static_cast<int>(x.size()) - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, m + 1);
    double c1 = 1.0, c4 = x(0) - x0;
    c(0, 0) = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x(i) - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x(i) - x(j);
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c.col(m);
}

namespace {
template <typename Vec>
Vec differentiate_impl(const Vec& f, double h, int m) {
    const Eigen::Index n = f.size();
    if (n < 7) throw Error(ErrorCode::InvalidArgument, "need at least 7 samples to differentiate");
    Vec out(n);
    RealVector stencil(7);
    // Weight sets depend only on the offset of the node inside its stencil.
    std::array<RealVector, 7> w;
    for (int off = 0; off < 7; ++off) {
        for (int a = 0; a < 7; ++a) stencil(a) = (a - off) * h;
        w[off] = fd_weights(stencil, 0.0, m);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index i0 = std::clamp<Eigen::Index>(i - 3, 0, n - 7);
        const int off = static_cast<int>(i - i0);
        typename Vec::Scalar s = 0.0;
        for (int a = 0; a < 7; ++a) s += w[off](a) * f(i0 + a);
        out(i) = s;
    }
    return out;
}
}  // namespace

RealVector differentiate_uniform(const RealVector& f, double h, int m) { return differentiate_impl(f, h, m); }
ComplexVector differentiate_uniform(const ComplexVector& f, double h, int m) {
    return differentiate_impl(f, h, m);
}

Profile build_profile(const ProfileSpec& spec) {
    Profile p;
    p.family = spec.family;
    p.gravity = spec.gravity;
    if (!(spec.gravity > 0.0)) throw Error(ErrorCode::InvalidArgument, "gravity must be positive");

    if (spec.family == "tabulated") {
        const auto n = static_cast<Eigen::Index>(spec.sample_y.size());
        if (n < 8 || spec.sample_v.size() != spec.sample_y.size() || spec.sample_P.size() != spec.sample_y.size())
            throw Error(ErrorCode::ConfigParse, "tabulated profile needs matching y, v, P columns (>= 8 rows)");
        const double h = 2.0 / double(n - 1);
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(spec.sample_y[i] - h * i) > 1e-9)
                throw Error(ErrorCode::ConfigParse, "tabulated samples must be uniform on [0,2]");
        const RealVector v = Eigen::Map<const RealVector>(spec.sample_v.data(), n);
        const RealVector P = Eigen::Map<const RealVector>(spec.sample_P.data(), n);
        std::array<RealVector, 8> f = {v,
                                       differentiate_uniform(v, h, 1),
                                       differentiate_uniform(v, h, 2),
                                       differentiate_uniform(v, h, 3),
                                       differentiate_uniform(v, h, 4),
                                       P,
                                       differentiate_uniform(P, h, 1),
                                       differentiate_uniform(P, h, 2)};
        p.grid = RealVector::LinSpaced(n, 0.0, 2.0);
        p.v = f[0]; p.v1 = f[1]; p.v2 = f[2]; p.v3 = f[3]; p.v4 = f[4];
        p.P = f[5]; p.P1 = f[6]; p.P2 = f[7];
        p.model = std::make_shared<TabulatedModel>(h, f);
        const double scale = std::max(P.cwiseAbs().maxCoeff(), 1e-300);
        Eigen::Index first = -1, last = -1;
        for (Eigen::Index i = 0; i < n; ++i)
            if (P(i) > 1e-12 * scale) {
                if (first < 0) first = i;
                last = i;
            }
        if (first < 0) {
            p.theta1 = p.theta2 = 1.0;
        } else {
            if (first == 0 || last == n - 1)
                throw Error(ErrorCode::SupportViolation, "stratification touches the channel walls");
            p.theta1 = p.grid(first - 1);
            p.theta2 = p.grid(last + 1);
            for (Eigen::Index i = first; i <= last; ++i)
                if (P(i) < -1e-12 * scale)
                    throw Error(ErrorCode::SupportViolation, "P must be nonnegative");
        }
    } else {
        if (spec.family != "trapezoid" && spec.family != "exp-bump" && spec.family != "unstratified")
            throw Error(ErrorCode::ConfigParse, "unknown profile family '" + spec.family + "'");
        if (spec.grid_n < 16) throw Error(ErrorCode::InvalidArgument, "grid_n too small");
        p.theta1 = spec.center - spec.half_width;
        p.theta2 = spec.center + spec.half_width;
        if (!(p.theta1 > 0.0 && p.theta2 < 2.0 && p.theta1 < p.theta2))
            throw Error(ErrorCode::SupportViolation, "stratified window must satisfy 0 < theta1 < theta2 < 2");
        if (spec.family == "trapezoid" && !(spec.ramp > 0.0 && spec.ramp < 0.5))
            throw Error(ErrorCode::InvalidArgument, "trapezoid ramp must lie in (0, 0.5)");
        if (spec.shear_amplitude != 0.0 &&
            (spec.shear_center - spec.shear_width <= p.theta1 || spec.shear_center + spec.shear_width >= p.theta2))
            throw Error(ErrorCode::SupportViolation, "supp v'' must lie inside (theta1, theta2)");
        auto model = std::make_shared<AnalyticModel>(spec);
        p.model = model;
        const Eigen::Index n = spec.grid_n + 1;
        p.grid = RealVector::LinSpaced(n, 0.0, 2.0);
        p.v.resize(n); p.v1.resize(n); p.v2.resize(n); p.v3.resize(n); p.v4.resize(n);
        p.P.resize(n); p.P1.resize(n); p.P2.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto s = model->sample(p.grid(i));
            p.v(i) = s.v; p.v1(i) = s.v1; p.v2(i) = s.v2; p.v3(i) = s.v3; p.v4(i) = s.v4;
            p.P(i) = s.P; p.P1(i) = s.P1; p.P2(i) = s.P2;
        }
    }

    p.c0 = p.v1.minCoeff();
    p.C0 = p.v1.maxCoeff();
    if (!(p.c0 > 0.0)) throw Error(ErrorCode::NonMonotone, "v' must be positive on [0,2]");
    for (Eigen::Index i = 0; i < p.grid.size(); ++i) {
        const double y = p.grid(i);
        if ((y <= p.theta1 || y >= p.theta2) && std::abs(p.P(i)) > 1e-12)
            throw Error(ErrorCode::SupportViolation, "P nonzero outside (theta1, theta2)");
    }
    p.beta2 = p.J_grid().maxCoeff();
    return p;
}

Profile profile_from_model(std::shared_ptr<const ProfileModel> model, double theta1, double theta2,
                           double gravity, int grid_n, const std::string& family) {
    Profile p;
    p.family = family;
    p.gravity = gravity;
    p.theta1 = theta1;
    p.theta2 = theta2;
    p.model = std::move(model);
    const Eigen::Index n = grid_n + 1;
    p.grid = RealVector::LinSpaced(n, 0.0, 2.0);
    p.v.resize(n); p.v1.resize(n); p.v2.resize(n); p.v3.resize(n); p.v4.resize(n);
    p.P.resize(n); p.P1.resize(n); p.P2.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto s = p.model->sample(p.grid(i));
        p.v(i) = s.v; p.v1(i) = s.v1; p.v2(i) = s.v2; p.v3(i) = s.v3; p.v4(i) = s.v4;
        p.P(i) = s.P; p.P1(i) = s.P1; p.P2(i) = s.P2;
    }
    p.c0 = p.v1.minCoeff();
    p.C0 = p.v1.maxCoeff();
    if (!(p.c0 > 0.0)) throw Error(ErrorCode::NonMonotone, "v' must be positive on [0,2]");
    p.beta2 = p.J_grid().maxCoeff();
    return p;
}

RichardsonPoint richardson_from_J(double J) {
    RichardsonPoint r;
    r.J = J;
    r.gamma = std::sqrt(Complex(0.25 - J, 0.0));
    r.mu = r.gamma.real();
    r.nu = r.gamma.imag();
    return r;
}

RichardsonPoint richardson(const Profile& profile, double y) {
    if (y < 0.0 || y > 2.0) throw Error(ErrorCode::InvalidArgument, "y outside [0,2]");
    auto r = richardson_from_J(std::max(profile.J(y), 0.0));
    r.y = y;
    return r;
}

HypothesisReport check_hypotheses(const Profile& p) {
    HypothesisReport r;
    const Eigen::Index n = p.grid.size();
    r.c0 = p.c0;
    r.C0 = p.C0;
    r.v3_sup = p.v3.cwiseAbs().maxCoeff();
    r.calP2_sup = p.gravity * p.P2.cwiseAbs().maxCoeff();
    r.H1_value = r.v3_sup / p.c0 + 0.5 * r.calP2_sup / (p.c0 * p.c0);
    r.H1 = r.H1_value < 1.0;

    r.P_min_inside = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double y = p.grid(i);
        if (y > p.theta1 && y < p.theta2) {
            r.P_min_inside = std::min(r.P_min_inside, p.P(i));
        } else {
            r.P_max_outside = std::max(r.P_max_outside, std::abs(p.P(i)));
            r.v2_max_outside = std::max(r.v2_max_outside, std::abs(p.v2(i)));
        }
    }
    if (!std::isfinite(r.P_min_inside)) r.P_min_inside = 0.0;
    r.HP = r.P_min_inside > 0.0 && r.P_max_outside == 0.0;
    r.Hv = p.c0 > 0.0 && r.v2_max_outside <= 1e-12;

    const RealVector J = p.J_grid();
    Eigen::Index imax = 0;
    r.J_max = J.maxCoeff(&imax);
    r.y_tilde = p.grid(imax);
    const double tol_v2 = 1e-12 * std::max(1.0, p.v2.cwiseAbs().maxCoeff());
    double djmax = 0.0;
    RealVector dj(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        dj(i) = p.gravity * (p.P1(i) * p.v1(i) - 2.0 * p.P(i) * p.v2(i)) / std::pow(p.v1(i), 3);
        djmax = std::max(djmax, std::abs(dj(i)));
    }
    const double tol_dj = 1e-9 * std::max(djmax, 1e-300);
    r.H2_1 = r.H2_2 = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i <= imax && (p.v2(i) > tol_v2 || dj(i) < -tol_dj)) r.H2_1 = false;
        if (i >= imax && (p.v2(i) < -tol_v2 || dj(i) > tol_dj)) r.H2_2 = false;
    }
    // uniqueness of the maximiser
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != imax && J(i) == r.J_max && std::abs(i - imax) > 1) r.H2_1 = r.H2_2 = false;
    r.root_count = p.stratified() ? static_cast<int>(level_roots(p, 0.25).size()) : 0;
    r.H2_3 = r.root_count == 2;
    r.H2 = r.H2_1 && r.H2_2 && r.H2_3 && r.J_max > 0.0;
    return r;
}

std::vector<Interval> RegimePartition::non_stratified() const { return {{0.0, theta1}, {theta2, 2.0}}; }
std::vector<Interval> RegimePartition::weak() const { return {{theta1, varpi11}, {varpi22, theta2}}; }
std::vector<Interval> RegimePartition::mild() const { return {{varpi11, varpi12}, {varpi21, varpi22}}; }
std::vector<Interval> RegimePartition::strong() const { return {{varpi12, varpi21}}; }
std::vector<Interval> RegimePartition::weak_extended() const {
    return {{theta1, varpi_tilde11}, {varpi_tilde22, theta2}};
}
std::vector<Interval> RegimePartition::strong_extended() const { return {{varpi_tilde12, varpi_tilde21}}; }

Regime RegimePartition::lookup(double y) const {
    if (y <= theta1 || y >= theta2) return Regime::NonStratified;
    if ((y >= varpi11 && y <= varpi12) || (y >= varpi21 && y <= varpi22)) return Regime::Mild;
    if (y < varpi11 || y > varpi22) return Regime::Weak;
    return Regime::Strong;
}

double RegimePartition::boundary_distance(double y) const {
    double d = std::numeric_limits<double>::infinity();
    for (double b : {theta1, varpi11, varpi12, varpi21, varpi22, theta2}) d = std::min(d, std::abs(y - b));
    return d;
}

RegimePartition partition_regimes(const Profile& p, double delta_tilde) {
    if (!(delta_tilde > 0.0 && delta_tilde < 0.125))
        throw Error(ErrorCode::InvalidArgument, "delta_tilde must lie in (0, 1/8)");
    if (!p.stratified()) throw Error(ErrorCode::RootCountMismatch, "J vanishes identically; no root of J = 1/4");
    RegimePartition r;
    r.theta1 = p.theta1;
    r.theta2 = p.theta2;
    r.delta_tilde = delta_tilde;
    const auto crit = level_roots(p, 0.25);
    if (crit.size() != 2)
        throw Error(ErrorCode::RootCountMismatch,
                    "J - 1/4 has " + std::to_string(crit.size()) + " sign changes, expected 2");
    const auto lo = level_roots(p, 0.25 - delta_tilde);
    const auto hi = level_roots(p, 0.25 + delta_tilde);
    if (lo.size() != 2 || hi.size() != 2)
        throw Error(ErrorCode::RootCountMismatch, "|J - 1/4| = delta_tilde needs exactly four roots");
    r.varpi1 = crit[0];
    r.varpi2 = crit[1];
    r.varpi11 = lo[0];
    r.varpi22 = lo[1];
    r.varpi12 = hi[0];
    r.varpi21 = hi[1];
    if (!(r.theta1 < r.varpi11 && r.varpi11 < r.varpi1 && r.varpi1 < r.varpi12 && r.varpi12 < r.varpi21 &&
          r.varpi21 < r.varpi2 && r.varpi2 < r.varpi22 && r.varpi22 < r.theta2))
        throw Error(ErrorCode::RootCountMismatch, "regime boundaries are not ordered; J is not unimodal");
    r.varpi_tilde11 = 0.5 * (r.varpi11 + r.varpi1);
    r.varpi_tilde12 = 0.5 * (r.varpi1 + r.varpi12);
    r.varpi_tilde21 = 0.5 * (r.varpi21 + r.varpi2);
    r.varpi_tilde22 = 0.5 * (r.varpi2 + r.varpi22);
    return r;
}

ProfileSpec parse_profile_text(const std::string& text) {
    ProfileSpec spec;
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const std::exception& e) {
            throw Error(ErrorCode::ConfigParse, std::string("invalid JSON profile: ") + e.what());
        }
        std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& obj) {
            for (auto it = obj.begin(); it != obj.end(); ++it) {
                if (it.value().is_object()) walk(it.value());
                else if (it.value().is_string()) assign_key(spec, it.key(), it.value().get<std::string>());
                else assign_key(spec, it.key(), it.value().dump());
            }
        };
        walk(j);
        return spec;
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool in_quote = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (line[i] == '#' && !in_quote) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigParse, "line " + std::to_string(lineno) + ": expected key = value");
        assign_key(spec, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return spec;
}

ProfileSpec parse_profile_csv(const std::string& text) {
    ProfileSpec spec;
    spec.family = "tabulated";
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::array<double, 3> vals{};
        std::stringstream ls(line);
        std::string cell;
        int c = 0;
        bool numeric = true;
        while (std::getline(ls, cell, ',') && c < 3) {
            try {
                vals[c++] = std::stod(trim(cell));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (spec.sample_y.empty()) continue;  // header row
            throw Error(ErrorCode::ConfigParse, "non-numeric CSV row: " + line);
        }
        if (c != 3) throw Error(ErrorCode::ConfigParse, "CSV rows need y, v, P");
        spec.sample_y.push_back(vals[0]);
        spec.sample_v.push_back(vals[1]);
        spec.sample_P.push_back(vals[2]);
    }
    spec.grid_n = static_cast<int>(spec.sample_y.size()) - 1;
    return spec;
}

ProfileSpec load_profile_spec(const std::string& path) {
    if (path.empty() || path == "default") return default_profile_spec();
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigParse, "cannot open profile file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
    return csv ? parse_profile_csv(ss.str()) : parse_profile_text(ss.str());
}

}  // namespace stratdamp
