#pragma once

#include <algorithm>

#include "stratdamp/types.hpp"

namespace stratdamp {

// Local Lagrange interpolation on sorted nodes x using npts nodes around xq.
template <typename Vec>
typename Vec::Scalar lagrange_interpolate(const RealVector& x, const Vec& f, double xq, int npts = 6) {
    const Eigen::Index n = x.size();
    const auto it = std::upper_bound(x.data(), x.data() + n, xq);
    Eigen::Index j = static_cast<Eigen::Index>(it - x.data());  // first node > xq
    Eigen::Index i0 = std::clamp<Eigen::Index>(j - npts / 2, 0, n - npts);
    typename Vec::Scalar s = 0.0;
    for (int a = 0; a < npts; ++a) {
        double w = 1.0;
        const double xa = x(i0 + a);
        for (int b = 0; b < npts; ++b)
            if (b != a) w *= (xq - x(i0 + b)) / (xa - x(i0 + b));
        s += w * f(i0 + a);
    }
    return s;
}

// First derivative of the same local interpolant.
template <typename Vec>
typename Vec::Scalar lagrange_derivative(const RealVector& x, const Vec& f, double xq, int npts = 6) {
    const Eigen::Index n = x.size();
    const auto it = std::upper_bound(x.data(), x.data() + n, xq);
    Eigen::Index j = static_cast<Eigen::Index>(it - x.data());
    Eigen::Index i0 = std::clamp<Eigen::Index>(j - npts / 2, 0, n - npts);
    typename Vec::Scalar s = 0.0;
    for (int a = 0; a < npts; ++a) {
        const double xa = x(i0 + a);
        double denom = 1.0;
        for (int b = 0; b < npts; ++b)
            if (b != a) denom *= xa - x(i0 + b);
        double num = 0.0;
        for (int c = 0; c < npts; ++c) {
            if (c == a) continue;
            double prod = 1.0;
            for (int b = 0; b < npts; ++b)
                if (b != a && b != c) prod *= xq - x(i0 + b);
            num += prod;
        }
        s += num / denom * f(i0 + a);
    }
    return s;
}

template <typename Vec>
Vec lagrange_resample(const RealVector& x, const Vec& f, const RealVector& xq, int npts = 6) {
    Vec out(xq.size());
    for (Eigen::Index i = 0; i < xq.size(); ++i) out(i) = lagrange_interpolate(x, f, xq(i), npts);
    return out;
}

}  // namespace stratdamp
