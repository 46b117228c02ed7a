#pragma once

#include <array>
#include <cmath>

namespace stratdamp {

// Truncated Taylor series c[0] + c[1] h + ... + c[N] h^N in one variable.
// Used to get exact derivatives of the analytic profile families.
template <int N>
struct Jet {
    std::array<double, N + 1> c{};

    Jet() = default;
    Jet(double value) { c[0] = value; }  // NOLINT: implicit constant lift

    static Jet variable(double x) {
        Jet j(x);
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    // k-th derivative at the expansion point.
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }

    friend Jet operator+(Jet a, const Jet& b) {
        for (int i = 0; i <= N; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend Jet operator-(Jet a, const Jet& b) {
        for (int i = 0; i <= N; ++i) a.c[i] -= b.c[i];
        return a;
    }
    friend Jet operator-(Jet a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= N; ++i) {
            double s = a.c[i];
            for (int j = 1; j <= i; ++j) s -= b.c[j] * r.c[i - j];
            r.c[i] = s / b.c[0];
        }
        return r;
    }
};

template <int N>
Jet<N> exp(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::exp(a.c[0]);
    for (int i = 1; i <= N; ++i) {
        double s = 0.0;
        for (int j = 1; j <= i; ++j) s += j * a.c[j] * r.c[i - j];
        r.c[i] = s / i;
    }
    return r;
}

}  // namespace stratdamp
