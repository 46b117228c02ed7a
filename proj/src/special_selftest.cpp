#include "stratdamp/special_selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "stratdamp/whittaker.hpp"

namespace stratdamp {

namespace {

IdentityCheck make(std::string name, double residual, double tol) {
    return {std::move(name), residual, tol, residual <= tol};
}

// Whittaker operator residual |f'' + (-1/4 + (1/4 - g^2)/z^2) f| / (1 + |f|)
// with f'' from a 4th-order central difference along the real direction.
template <typename F>
double ode_residual(F&& f, Complex g, Complex z) {
    const double h = 5e-3;
    const Complex fm2 = f(z - 2.0 * h), fm1 = f(z - h), f0 = f(z), fp1 = f(z + h), fp2 = f(z + 2.0 * h);
    const Complex d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    return std::abs(d2 + (-0.25 + (0.25 - g * g) / (z * z)) * f0) / (1.0 + std::abs(f0));
}

Complex central_derivative(const std::function<Complex(Complex)>& f, Complex z) {
    const double h = 1e-3;
    return (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
}

}  // namespace

std::vector<IdentityCheck> special_selftest(unsigned seed, int samples) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_gamma = [&] {
        // Real branch in [0, 1/2] or imaginary branch i nu, nu in (0, 1].
        if (unit(rng) < 0.5) return Complex(0.5 * unit(rng), 0.0);
        return Complex(0.0, 0.05 + 0.95 * unit(rng));
    };
    auto random_zeta = [&] {
        const double r = 0.5 + 4.5 * unit(rng);
        const double a = (2.0 * unit(rng) - 1.0) * (kPi - 0.3);
        return std::polar(r, a);
    };

    std::vector<IdentityCheck> out;
    double res_m = 0.0, res_w = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Complex g = random_gamma(), z = random_zeta();
        res_m = std::max(res_m, ode_residual([&](Complex x) { return whittaker_M(g, x); }, g, z));
        res_w = std::max(res_w, ode_residual([&](Complex x) { return whittaker_W(g, x); }, g, z));
    }
    out.push_back(make("ode_residual_M", res_m, 1e-6));
    out.push_back(make("ode_residual_W", res_w, 1e-6));

    double cont_m = 0.0, cont_w = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Complex g = i == 0 ? Complex(0.25) : random_gamma();
        const Complex z = i == 0 ? Complex(0.5) : random_zeta();
        for (Side s : {Side::Plus, Side::Minus}) {
            const Complex direct = whittaker_M_log(g, std::log(z) + sign_of(s) * kPi * kI);
            const Complex rel = continue_M(g, z, s);
            cont_m = std::max(cont_m, std::abs(direct - rel) / (1.0 + std::abs(direct)));
            if (std::abs(g) > kSmallGammaSwitch && std::abs(z) < 20) {
                const Complex wd = whittaker_W_log(g, std::log(z) + sign_of(s) * kPi * kI);
                const Complex wr = continue_W(g, z, s);
                cont_w = std::max(cont_w, std::abs(wd - wr) / (1.0 + std::abs(wd)));
            }
        }
    }
    out.push_back(make("continuation_M", cont_m, 1e-10));
    out.push_back(make("continuation_W", cont_w, 1e-10));
    {
        const Complex g = 0.2, z = 1.0;
        const Complex wd = whittaker_W_log(g, std::log(z) + kPi * kI);
        const Complex wr = complex_gamma(0.5 + g) / complex_gamma(1.0 + 2.0 * g) * whittaker_M(g, z) +
                           kI * std::exp(-g * kPi * kI) * whittaker_W(g, z);
        out.push_back(make("continuation_W_spot", std::abs(wd - wr), 1e-8));
    }

    {
        const Complex g = 0.3, z(2.0, 1.0);
        const Complex lhs = (std::pow(z, 2.0 * g) - 1.0) / (2.0 * g);
        out.push_back(make("q_gamma_identity", std::abs(lhs - std::log(z) * q_gamma(g, z)), 1e-12));
    }
    double q_edge = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Complex z = random_zeta();
        q_edge = std::max(q_edge, std::abs(q_gamma(0.0, z) - 1.0));
        q_edge = std::max(q_edge, std::abs(q_gamma(random_gamma(), 1.0) - 1.0));
    }
    out.push_back(make("q_gamma_trivial_cases", q_edge, 1e-14));

    // W{eta^{1/2+g}, eta^{1/2-g}} in y with eta = 2k(y - y0) + i 2k eps0.
    double wr_pow = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int k = 1 + static_cast<int>(unit(rng) * 8);
        const Complex g = random_gamma();
        const Complex eta(2.0 * k * (unit(rng) * 2.0 - 1.0), 2.0 * k * 1e-3);
        const Complex a = 0.5 + g, b = 0.5 - g;
        const Complex f = std::pow(eta, a), df = 2.0 * k * a * std::pow(eta, a - 1.0);
        const Complex h = std::pow(eta, b), dh = 2.0 * k * b * std::pow(eta, b - 1.0);
        wr_pow = std::max(wr_pow, std::abs(f * dh - df * h - (-4.0 * k * g)));
    }
    out.push_back(make("power_pair_wronskian", wr_pow, 1e-10));

    {
        const Complex g = 0.2, z = 1.0;
        const Complex m = whittaker_M(g, z), dm = whittaker_M_derivative(g, z);
        const Complex w = whittaker_W(g, z);
        const Complex dw = central_derivative([&](Complex x) { return whittaker_W(g, x); }, z);
        out.push_back(make("MW_wronskian", std::abs(m * dw - dm * w - whittaker_MW_wronskian(g)), 1e-9));
    }

    out.push_back(make("M_half_sinh", std::abs(whittaker_M(0.5, 1.0) - 2.0 * std::sinh(0.5)), 1e-13));
    {
        double jump = 0.0;
        for (double g : {1e-2, 1e-3, 1e-4})
            jump = std::max(jump, std::abs(whittaker_W(g, 1.0) - whittaker_W00_series(1.0)) / g);
        // |W_g - W_0| = O(g^2); the scaled gap must stay bounded and small.
        out.push_back(make("W_small_gamma_continuity", jump, 1e-1));
    }
    {
        const Complex g = 0.1, z = 30.0;
        const double ratio = std::abs(whittaker_W(g, z) / whittaker_M(g, z)) * std::exp(z.real());
        out.push_back(make("W_over_M_decay", ratio, 10.0));
    }
    {
        double conj = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double nu = 0.05 + unit(rng);
            const Complex z = random_zeta();
            conj = std::max(conj, std::abs(whittaker_M(Complex(0, nu), z) -
                                           std::conj(whittaker_M(Complex(0, -nu), std::conj(z)))));
        }
        out.push_back(make("M_conjugation", conj, 1e-12));
    }
    return out;
}

}  // namespace stratdamp
