#include "stratdamp/decay_fit.hpp"

#include <algorithm>
#include <cmath>

namespace stratdamp {

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Vx: return "vx";
        case Quantity::Vy: return "vy";
        case Quantity::Rho: return "rho";
        case Quantity::Omega: return "omega";
        case Quantity::DyRho: return "dyrho";
    }
    return "?";
}

Quantity parse_quantity(const std::string& s) {
    for (Quantity q : kAllQuantities)
        if (s == to_string(q)) return q;
    throw Error(ErrorCode::InvalidArgument, "unknown quantity '" + s + "'");
}

DecayPrediction predicted_exponents(const Profile& p, const RegimePartition& part, double y, Quantity q) {
    if (part.boundary_distance(y) < 1e-9)
        throw Error(ErrorCode::BoundaryPoint, "probe sits on a regime boundary");
    DecayPrediction d;
    d.quantity = q;
    d.y = y;
    d.regime = part.lookup(y);
    d.mu = richardson(p, y).mu;
    const bool growth = q == Quantity::Omega || q == Quantity::DyRho;
    switch (d.regime) {
        case Regime::NonStratified:
            d.mu = 0.5;
            if (q == Quantity::Vx) d.exponent = -1.0;
            else if (q == Quantity::Vy) d.exponent = -2.0;
            else d.zero_field = true;
            break;
        case Regime::Weak:
        case Regime::Mild: {
            const double base = q == Quantity::Vy ? -1.5 : growth ? 0.5 : -0.5;
            d.exponent = base + d.mu;
            d.log_correction = d.regime == Regime::Mild;
            if (d.regime == Regime::Weak) {
                // min(t^{..}, t^{-1} + c), min(.., t^{-2} + c t^{-1}), min(.., P log t), min(.., 1 + c t)
                switch (q) {
                    case Quantity::Vx: d.secondary_exponent = 0.0; break;
                    case Quantity::Vy: d.secondary_exponent = -1.0; break;
                    case Quantity::Rho: d.secondary_exponent = 0.0; break;
                    case Quantity::Omega: d.secondary_exponent = 1.0; break;
                    case Quantity::DyRho: d.secondary_exponent = 1.0; break;
                }
            }
            break;
        }
        case Regime::Strong:
            d.mu = 0.0;
            d.exponent = q == Quantity::Vy ? -1.5 : growth ? 0.5 : -0.5;
            break;
    }
    return d;
}

void envelope_maxima(const std::vector<double>& t, const std::vector<double>& v, double period,
                     std::vector<double>& t_out, std::vector<double>& v_out) {
    t_out.clear();
    v_out.clear();
    if (period <= 0.0 || t.empty()) {
        t_out = t;
        v_out = v;
        return;
    }
    size_t i = 0;
    while (i < t.size()) {
        const double end = t[i] + period;
        size_t best = i;
        size_t j = i;
        for (; j < t.size() && t[j] < end; ++j)
            if (v[j] > v[best]) best = j;
        // A partial trailing block would bias the last maximum low.
        if (j == t.size() && t.back() - t[i] < 0.999 * period && !t_out.empty()) break;
        t_out.push_back(t[best]);
        v_out.push_back(v[best]);
        i = j;
    }
}

PowerFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_min, double t_max,
                       bool log_corrected, double period) {
    if (t.size() != v.size()) throw Error(ErrorCode::InvalidArgument, "times and values differ in length");
    if (!(t_min > 0.0) || t_max < 10.0 * t_min * (1.0 - 1e-12))
        throw Error(ErrorCode::WindowTooShort, "fit window must span at least one decade");
    std::vector<double> tw, vw;
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i] >= t_min - 1e-12 && t[i] <= t_max + 1e-12) {
            if (!(v[i] > 0.0)) throw Error(ErrorCode::NonPositiveValues, "values must be positive in the window");
            tw.push_back(t[i]);
            vw.push_back(v[i]);
        }
    if (tw.empty() || tw.back() < 0.9 * t_max || tw.front() > 1.1 * t_min)
        throw Error(ErrorCode::WindowTooShort, "samples do not cover the fit window");
    std::vector<double> te, ve;
    envelope_maxima(tw, vw, period, te, ve);
    const int n = static_cast<int>(te.size());
    if (n < 3) throw Error(ErrorCode::WindowTooShort, "fewer than three points in the fit window");
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = std::log(te[i]);
        b(i) = std::log(ve[i]) - (log_corrected ? std::log1p(std::log(te[i])) : 0.0);
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    PowerFit f;
    f.log_amplitude = c(0);
    f.exponent = c(1);
    f.points = n;
    if (n > 2) {
        const double s2 = (A * c - b).squaredNorm() / (n - 2);
        const double mean = A.col(1).mean();
        const double sxx = (A.col(1).array() - mean).square().sum();
        f.ci = 1.96 * std::sqrt(s2 / sxx);
    }
    return f;
}

double envelope_period(const Profile& p, int k, double y, double t_min, double t_max) {
    const double d = std::max(std::min(std::abs(y - p.theta1), std::abs(y - p.theta2)), 1e-3);
    const double period = 2.0 * kPi / (std::abs(k) * p.at(y).v1 * d);
    return std::min(period, 0.1 * (t_max - t_min));
}

std::vector<DecayReport> compare(const Profile& p, const RegimePartition& part, int k, const NormSeries& norms,
                                 const std::vector<Quantity>& quantities, const CompareOptions& opt) {
    std::vector<DecayReport> out;
    for (const auto& probe : norms.probes) {
        for (Quantity q : quantities) {
            DecayReport r;
            r.prediction = predicted_exponents(p, part, probe.y, q);
            r.t_min = opt.t_min;
            r.t_max = opt.t_max;
            std::vector<double> values;
            switch (q) {
                case Quantity::Vx: values = probe.dpsi; break;
                case Quantity::Vy:
                    values = probe.psi;
                    for (double& x : values) x *= std::abs(k);
                    break;
                case Quantity::Rho: values = probe.rho; break;
                case Quantity::Omega: values = probe.omega; break;
                case Quantity::DyRho: values = probe.drho; break;
            }
            for (size_t i = 0; i < values.size(); ++i)
                if (norms.times[i] >= opt.t_min && norms.times[i] <= opt.t_max)
                    r.max_value = std::max(r.max_value, values[i]);
            if (r.prediction.zero_field) {
                r.pass = r.max_value <= opt.zero_tol;
            } else {
                r.envelope_period = envelope_period(p, k, probe.y, opt.t_min, opt.t_max);
                const auto fit = fit_power_law(norms.times, values, opt.t_min, opt.t_max,
                                               r.prediction.log_correction, r.envelope_period);
                r.fitted = fit.exponent;
                r.ci = fit.ci;
                r.pass = std::abs(r.fitted - r.prediction.exponent) <= opt.tol;
            }
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace stratdamp
