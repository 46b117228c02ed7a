#pragma once

#include <cmath>
#include <algorithm>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "stratdamp/types.hpp"

namespace stratdamp {

// Tridiagonal system: lower(i) couples row i to i-1, upper(i) to i+1.
// lower(0) and upper(n-1) are ignored.
template <typename Scalar>
struct Tridiagonal {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Vector lower, diag, upper;

    Tridiagonal() = default;
    explicit Tridiagonal(Eigen::Index n)
        : lower(Vector::Zero(n)), diag(Vector::Zero(n)), upper(Vector::Zero(n)) {}

    Eigen::Index size() const { return diag.size(); }

    template <typename Derived>
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply(
        const Eigen::MatrixBase<Derived>& x) const {
        using Out = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;
        const Eigen::Index n = size();
        Out y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto s = diag(i) * x(i);
            if (i > 0) s += lower(i) * x(i - 1);
            if (i + 1 < n) s += upper(i) * x(i + 1);
            y(i) = s;
        }
        return y;
    }
};

// LU factorization without pivoting (Thomas algorithm), kept so repeated
// solves against a fixed operator cost O(n).
template <typename Scalar>
class TridiagonalLU {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    TridiagonalLU() = default;
    explicit TridiagonalLU(const Tridiagonal<Scalar>& a) { factor(a); }

    void factor(const Tridiagonal<Scalar>& a) {
        const Eigen::Index n = a.size();
        lower_ = a.lower;
        upper_ = a.upper;
        pivot_.resize(n);
        min_pivot_ = std::numeric_limits<double>::infinity();
        max_pivot_ = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Scalar p = a.diag(i);
            if (i > 0) p -= lower_(i) * upper_(i - 1) / pivot_(i - 1);
            if (std::abs(p) == 0.0)
                throw Error(ErrorCode::SingularSystem, "zero pivot in tridiagonal factorization");
            pivot_(i) = p;
            min_pivot_ = std::min(min_pivot_, static_cast<double>(std::abs(p)));
            max_pivot_ = std::max(max_pivot_, static_cast<double>(std::abs(p)));
        }
    }

    template <typename Derived>
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> solve(
        const Eigen::MatrixBase<Derived>& b) const {
        using Out = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;
        const Eigen::Index n = pivot_.size();
        Out x(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto r = b(i);
            if (i > 0) r -= lower_(i) * x(i - 1);
            x(i) = r / pivot_(i);
        }
        for (Eigen::Index i = n - 2; i >= 0; --i) x(i) -= upper_(i) * x(i + 1) / pivot_(i);
        return x;
    }

    // Ratio of largest to smallest pivot magnitude, a cheap conditioning proxy.
    double pivot_ratio() const { return max_pivot_ / min_pivot_; }

private:
    Vector lower_, upper_, pivot_;
    double min_pivot_ = 0.0, max_pivot_ = 0.0;
};

template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_tridiagonal(const Tridiagonal<Scalar>& a,
                                                          const Eigen::MatrixBase<Derived>& b) {
    return TridiagonalLU<Scalar>(a).solve(b);
}

// Three-point second derivative on a possibly nonuniform node set, restricted
// to interior nodes 1..n-2 (Dirichlet ends eliminated). Row i of the result
// corresponds to node i+1.
template <typename Scalar>
Tridiagonal<Scalar> second_difference(const RealVector& y) {
    const Eigen::Index m = y.size() - 2;
    Tridiagonal<Scalar> d(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double hm = y(i + 1) - y(i);
        const double hp = y(i + 2) - y(i + 1);
        d.lower(i) = Scalar(2.0 / (hm * (hm + hp)));
        d.upper(i) = Scalar(2.0 / (hp * (hm + hp)));
        d.diag(i) = Scalar(-2.0 / (hm * hp));
    }
    return d;
}

}  // namespace stratdamp
