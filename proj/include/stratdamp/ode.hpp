#pragma once

#include <algorithm>
#include <cmath>

#include "stratdamp/types.hpp"

namespace stratdamp {

struct AdaptiveControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h = 0.0;  // step to try first; updated on return
    long max_steps = 2000000;
    long steps = 0;
    ErrorCode failure = ErrorCode::IntegrationFailure;
};

// Dormand-Prince 5(4) embedded pair, integrating from x0 to x1
// (either direction). State is any Eigen vector type.
template <typename State, typename Rhs>
State integrate_adaptive(Rhs&& f, double x0, double x1, State y, AdaptiveControl& ctl) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = x1 - x0;
    if (span == 0.0) return y;
    const double dir = span > 0 ? 1.0 : -1.0;
    double h = ctl.h > 0 ? std::min(ctl.h, std::abs(span)) : std::abs(span) / 16;
    double x = x0;
    State k1 = f(x, y);
    while (dir * (x1 - x) > 0) {
        if (++ctl.steps > ctl.max_steps) throw Error(ctl.failure, "step budget exhausted");
        if (h < 1e-14 * std::max(1.0, std::abs(x)))
            throw Error(ctl.failure, "step size underflow at x = " + std::to_string(x));
        const bool last = h >= std::abs(x1 - x);
        const double hs = last ? std::abs(x1 - x) : h;
        const double hd = dir * hs;
        const State k2 = f(x + c2 * hd, y + hd * (a21 * k1));
        const State k3 = f(x + c3 * hd, y + hd * (a31 * k1 + a32 * k2));
        const State k4 = f(x + c4 * hd, y + hd * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = f(x + c5 * hd, y + hd * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = f(x + hd, y + hd * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State yn = y + hd * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = f(x + hd, yn);
        const State err = hd * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double en = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc = ctl.atol + ctl.rtol * std::max(std::abs(y(i)), std::abs(yn(i)));
            en = std::max(en, std::abs(err(i)) / sc);
        }
        if (!std::isfinite(en)) {
            h = hs / 4;
            continue;
        }
        if (en <= 1.0) {
            x = last ? x1 : x + hd;
            y = yn;
            k1 = k7;
            const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (!last) h = hs * fac;
            else h = std::max(h, hs * fac);
        } else {
            h = hs * std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
        }
    }
    ctl.h = h;
    return y;
}

}  // namespace stratdamp
