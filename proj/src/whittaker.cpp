#include "stratdamp/whittaker.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace stratdamp {

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;
constexpr double kSqrtPi = 1.772453850905516027298167483341145;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

bool is_nonpositive_integer(Complex z) {
    if (std::abs(z.imag()) > 1e-14) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-14;
}

// c(s) = Gamma(1+2s)/Gamma(1/2+s) = 4^s Gamma(1+s)/sqrt(pi) by duplication.
Complex connection_c(Complex s) { return std::pow(4.0, s) * complex_gamma(1.0 + s) / kSqrtPi; }

// Power-series tables for the small-gamma split of W_{0,g}. With
// f_j(s) = c(-s)/((1+s)_j) expanded in s, the divided difference
// [f_j(-g) - f_j(g)]/(2g) is an even polynomial in g built from the odd
// coefficients of f_j.
struct SmallGammaTables {
    static constexpr int kDegree = 24;
    static constexpr int kTerms = 160;
    std::vector<std::array<double, kDegree>> odd;  // odd[j][m] = coefficient of s^{2m+1} in f_j

    SmallGammaTables() {
        // Taylor coefficients of c(-s) on a Cauchy circle; c(-s) is analytic for |s| < 1.
        constexpr int kNodes = 64;
        constexpr double kRadius = 0.5;
        std::array<double, 2 * kDegree> base{};
        for (int n = 0; n < 2 * kDegree; ++n) {
            Complex acc = 0.0;
            for (int m = 0; m < kNodes; ++m) {
                const double th = 2.0 * kPi * m / kNodes;
                const Complex s = kRadius * std::exp(kI * th);
                acc += connection_c(-s) * std::exp(-kI * (th * n));
            }
            base[n] = (acc / double(kNodes)).real() / std::pow(kRadius, n);
        }
        std::array<double, 2 * kDegree> f = base;
        odd.resize(kTerms + 1);
        for (int j = 0; j <= kTerms; ++j) {
            if (j > 0) {
                // multiply by 1/(j+s) = sum_n (-1)^n s^n / j^{n+1}
                std::array<double, 2 * kDegree> g{};
                for (int n = 0; n < 2 * kDegree; ++n) {
                    double acc = 0.0;
                    double inv = 1.0 / j;
                    for (int m = 0; m <= n; ++m) {
                        const double w = ((m % 2) ? -1.0 : 1.0) * inv;
                        acc += f[n - m] * w;
                        inv /= j;
                    }
                    g[n] = acc;
                }
                f = g;
            }
            for (int m = 0; m < kDegree; ++m) odd[j][m] = f[2 * m + 1];
        }
    }

    static const SmallGammaTables& instance() {
        static const SmallGammaTables tables;
        return tables;
    }
};

// (e^x - 1)/x without cancellation near x = 0.
Complex expm1_ratio(Complex x) {
    if (std::abs(x) < 0.1) {
        Complex term = 1.0, sum = 1.0;
        for (int n = 1; n < 30; ++n) {
            term *= x / double(n + 1);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return (std::exp(x) - 1.0) / x;
}

Complex series_E(Complex gamma, Complex zeta, bool derivative) {
    if (is_nonpositive_integer(1.0 + gamma))
        throw Error(ErrorCode::DegenerateGamma, "1 + gamma is a pole of Gamma");
    if (std::abs(zeta) > kSeriesRadius)
        throw Error(ErrorCode::SeriesDivergence, "|zeta| exceeds the series radius");
    const Complex x = zeta * zeta / 16.0;
    Complex term = 1.0;
    Complex sum = derivative ? Complex(0.0) : Complex(1.0);
    for (int j = 1; j <= kSeriesMaxTerms; ++j) {
        term *= x / (double(j) * (double(j) + gamma));
        const Complex add = derivative ? 2.0 * double(j) * term : term;
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum) && j > 2) {
            if (derivative) return sum / zeta;
            return sum;
        }
        if (std::abs(term) == 0.0) break;
    }
    if (std::abs(term) > 1e-15 * std::max(1.0, std::abs(sum)))
        throw Error(ErrorCode::SeriesDivergence, "E series did not converge within the term cap");
    return derivative ? sum / zeta : sum;
}

Complex w_small_gamma(Complex gamma, Complex log_zeta) {
    const auto& tab = SmallGammaTables::instance();
    const Complex zeta = std::exp(log_zeta);
    if (std::abs(zeta) > kSeriesRadius)
        throw Error(ErrorCode::SeriesDivergence, "|zeta| exceeds the series radius");
    const Complex g2 = gamma * gamma;
    const Complex x = zeta * zeta / 16.0;
    Complex d_sum = 0.0;
    Complex power = 1.0;  // x^j / j!
    for (int j = 0; j <= SmallGammaTables::kTerms; ++j) {
        if (j > 0) power *= x / double(j);
        Complex dj = 0.0;
        Complex gp = 1.0;
        for (int m = 0; m < SmallGammaTables::kDegree; ++m) {
            dj -= tab.odd[j][m] * gp;
            gp *= g2;
            if (std::abs(gp) < 1e-30) break;
        }
        const Complex add = power * dj;
        d_sum += add;
        if (j > 4 && std::abs(add) <= 1e-17 * std::abs(d_sum)) break;
    }
    const Complex e = series_E(gamma, zeta, false);
    // log(z) Q_g(z) on the requested branch
    const Complex log_q = log_zeta * expm1_ratio(2.0 * gamma * log_zeta);
    return std::exp((0.5 - gamma) * log_zeta) * (d_sum - log_q * connection_c(-gamma) * e);
}

Complex w_connection(Complex gamma, Complex log_zeta) {
    const Complex zeta = std::exp(log_zeta);
    const Complex gp = connection_c(gamma) * std::exp((0.5 - gamma) * log_zeta) * series_E(-gamma, zeta, false);
    const Complex gm = connection_c(-gamma) * std::exp((0.5 + gamma) * log_zeta) * series_E(gamma, zeta, false);
    return (gp - gm) / (2.0 * gamma);
}

}  // namespace

Complex complex_gamma(Complex z) {
    if (is_nonpositive_integer(z)) throw Error(ErrorCode::DegenerateGamma, "Gamma pole");
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    const Complex t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

Complex complex_log_gamma(Complex z) {
    if (z.real() < 0.5) return std::log(complex_gamma(z));
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    const Complex t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex digamma_at_half_integer(int n) {
    if (n < 1) throw Error(ErrorCode::DegenerateGamma, "digamma argument must be positive");
    if (n % 2 == 0) {
        double h = -kEulerGamma;
        for (int m = 1; m < n / 2; ++m) h += 1.0 / m;
        return h;
    }
    double h = -kEulerGamma - 2.0 * std::log(2.0);
    for (int m = 1; m <= (n - 1) / 2; ++m) h += 2.0 / (2 * m - 1);
    return h;
}

Complex whittaker_E(Complex gamma, Complex zeta) { return series_E(gamma, zeta, false); }

Complex whittaker_E_derivative(Complex gamma, Complex zeta) {
    if (zeta == 0.0) return 0.0;
    return series_E(gamma, zeta, true);
}

Complex whittaker_M(Complex gamma, Complex zeta) {
    if (zeta == 0.0) {
        if (is_nonpositive_integer(1.0 + gamma))
            throw Error(ErrorCode::DegenerateGamma, "1 + gamma is a pole of Gamma");
        return (0.5 + gamma).real() > 0.0 ? Complex(0.0) : Complex(1.0);
    }
    return std::pow(zeta, 0.5 + gamma) * series_E(gamma, zeta, false);
}

Complex whittaker_M_log(Complex gamma, Complex log_zeta) {
    return std::exp((0.5 + gamma) * log_zeta) * series_E(gamma, std::exp(log_zeta), false);
}

Complex whittaker_M_derivative(Complex gamma, Complex zeta) {
    const Complex a = 0.5 + gamma;
    const Complex e = series_E(gamma, zeta, false);
    const Complex de = whittaker_E_derivative(gamma, zeta);
    return std::pow(zeta, a - 1.0) * (a * e + zeta * de);
}

Complex whittaker_W_integral(Complex gamma, Complex zeta) {
    if (zeta.real() <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "integral form needs Re zeta > 0");
    const double h = 0.05;
    Complex sum = 0.5 * std::exp(-zeta / 2.0);
    for (int i = 1; i < 4000; ++i) {
        const double t = i * h;
        const Complex term = std::exp(-zeta * (std::cosh(t) / 2.0)) * std::cosh(gamma * t);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::sqrt(zeta / kPi) * h * sum;
}

Complex whittaker_W00_series(Complex zeta) {
    if (zeta == 0.0) throw Error(ErrorCode::InvalidArgument, "W is singular at zeta = 0");
    if (std::abs(zeta) > kSeriesRadius)
        throw Error(ErrorCode::SeriesDivergence, "|zeta| exceeds the series radius");
    const Complex lz = std::log(zeta);
    Complex coef = 1.0;  // (1/2)_s / (s!)^2 * zeta^s
    double psi1 = -kEulerGamma;
    double psih = -kEulerGamma - 2.0 * std::log(2.0);
    Complex sum = coef * (2.0 * psi1 - psih - lz);
    for (int s = 1; s <= 4 * kSeriesMaxTerms; ++s) {
        coef *= zeta * (s - 0.5) / (double(s) * double(s));
        psi1 += 1.0 / s;
        psih += 1.0 / (s - 0.5);
        const Complex add = coef * (2.0 * psi1 - psih - lz);
        sum += add;
        if (s > 4 && std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return std::exp(-zeta / 2.0) * std::sqrt(zeta / kPi) * sum;
}

Complex whittaker_W_log(Complex gamma, Complex log_zeta) {
    if (std::abs(gamma) < kSmallGammaSwitch) return w_small_gamma(gamma, log_zeta);
    return w_connection(gamma, log_zeta);
}

Complex whittaker_W(Complex gamma, Complex zeta) {
    if (zeta == 0.0) throw Error(ErrorCode::InvalidArgument, "W is singular at zeta = 0");
    if (zeta.imag() == 0.0 && zeta.real() < 0.0)
        throw Error(ErrorCode::BranchCut, "zeta on the negative real axis; pick a side");
    if (zeta.real() >= 2.0 && std::abs(zeta.imag()) <= zeta.real())
        return whittaker_W_integral(gamma, zeta);
    if (gamma == 0.0 && std::abs(zeta) <= 4.0) return whittaker_W00_series(zeta);
    return whittaker_W_log(gamma, std::log(zeta));
}

Complex q_gamma(Complex gamma, Complex zeta) {
    if (zeta == 0.0) throw Error(ErrorCode::InvalidArgument, "Q is undefined at zeta = 0");
    return expm1_ratio(2.0 * gamma * std::log(zeta));
}

Complex log_split_remainder(Complex gamma, Complex zeta) {
    const Complex lz = std::log(zeta);
    const Complex x = 2.0 * gamma * lz;
    if (std::abs(x) < 0.5) {
        Complex term = 1.0, sum = 0.0;
        for (int n = 1; n < 30; ++n) {
            term *= x * x / double((2 * n) * (2 * n + 1));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return 2.0 * lz * sum;
    }
    return (std::exp(x) - std::exp(-x)) / (2.0 * gamma) - 2.0 * lz;
}

Complex continue_M(Complex gamma, Complex zeta, Side side) {
    const double s = sign_of(side);
    return s * kI * std::exp(s * gamma * kPi * kI) * whittaker_M(gamma, zeta);
}

Complex continue_W(Complex gamma, Complex zeta, Side side) {
    const double s = sign_of(side);
    const Complex pref = complex_gamma(0.5 + gamma) / complex_gamma(1.0 + 2.0 * gamma);
    return pref * whittaker_M(gamma, zeta) + s * kI * std::exp(-s * gamma * kPi * kI) * whittaker_W(gamma, zeta);
}

Complex whittaker_MW_wronskian(Complex gamma) {
    return -complex_gamma(1.0 + 2.0 * gamma) / complex_gamma(0.5 + gamma);
}

}  // namespace stratdamp
