#pragma once

#include <functional>
#include <array>
#include <optional>

#include "stratdamp/profiles.hpp"

namespace stratdamp {

struct ResolventQuery {
    int k = 1;
    double y0 = 1.0;
    double eps = 1e-3;
    Side side = Side::Plus;

    // eps0 = eps / v'(y0), the displacement in y of the critical layer.
    double eps0(const Profile& p) const { return eps / p.at(y0).v1; }
    void validate() const;
};

// Initial data of one Fourier mode on the profile grid. rho0 = P * varrho0.
struct ModeData {
    int k = 1;
    RealVector grid;
    ComplexVector omega0, varrho0;
    ComplexVector w0, q0;  // w0 = omega0 - v'' varrho0, q0 = varrho0'' - k^2 varrho0
    ComplexVector rho0;
    Interval support;

    // Local 6-point Lagrange interpolation of (w0, q0, varrho0) at y.
    std::array<Complex, 3> interpolate(double y) const;
    bool zero() const { return omega0.cwiseAbs().maxCoeff() == 0.0 && varrho0.cwiseAbs().maxCoeff() == 0.0; }
};

ModeData regularize_data(const Profile& profile, const ComplexVector& omega0, const ComplexVector& varrho0, int k);

// Smooth compact test data: a Gaussian of width sigma times a C-infinity cutoff
// of half-width cutoff, both centered at c, sampled on the profile grid.
ComplexVector gaussian_bump(const Profile& profile, double c, double sigma, double cutoff);

struct SolverOptions {
    double grading = 0.04;      // relative node spacing at distance d from y0: ~grading*(d + eps0)
    bool extrapolate_mesh = true;  // Richardson extrapolation between the mesh and its refinement
    double max_residual = 1e-6;
};

// Node set graded toward y0 with spacing capped by the profile grid spacing.
RealVector resolvent_mesh(const Profile& profile, double y0, double eps0, double grading, double scale = 1.0);

struct ResolventField {
    ResolventQuery query;
    Regime regime = Regime::NonStratified;
    RealVector grid;
    ComplexVector phi, psi, rho;
    double residual = 0.0;  // max-norm TG residual of the discrete system relative to the right-hand side
    RealVector mesh;        // fine mesh and solution on it
    ComplexVector phi_mesh;
};

ResolventField solve_resolvent(const Profile& profile, const RegimePartition* partition,
                               const ResolventQuery& query, const ModeData& data,
                               const SolverOptions& opt = {});

Complex error_operator(const Profile& profile, const ResolventQuery& query, double y);

double laplacian_green(int k, double y, double z);

enum class GreenFormula { Auto, Laplacian, MPair, MWPair };

class GreenFunction {
public:
    GreenFunction(const Profile& profile, const RegimePartition& partition, const ResolventQuery& query,
                  GreenFormula formula = GreenFormula::Auto);

    // G(y, y0, z)
    Complex operator()(double y, double z) const;
    Complex phi_u(double y) const;
    Complex phi_l(double y) const;
    Complex wronskian() const { return wronskian_; }
    Regime regime() const { return regime_; }
    GreenFormula formula() const { return formula_; }
    Complex gamma0() const { return gamma0_; }
    double J0() const { return J0_; }
    const ResolventQuery& query() const { return query_; }

    RealVector grid;
    ComplexVector phi_u_grid, phi_l_grid;

private:
    Complex xi(double y) const { return Complex(y - query_.y0, sign_of(query_.side) * eps0_); }
    Complex basis_first(Complex x) const;   // M_r
    Complex basis_second(Complex x) const;  // M_s or W_r

    ResolventQuery query_;
    Regime regime_;
    GreenFormula formula_;
    double eps0_ = 0.0;
    double J0_ = 0.0;
    Complex gamma0_;
    Complex a_lo_, b_lo_, a_hi_, b_hi_;
    Complex wronskian_;
};

GreenFunction rtg_green(const Profile& profile, const RegimePartition& partition, const ResolventQuery& query);

// One evaluation of the fixed-point map
//   phi(y) = int G (w0/u + q0) dz - int G E phi dz
// with phi supplied on mesh nodes (trapezoid rule on the mesh).
ComplexVector green_fixed_point(const Profile& profile, const GreenFunction& green, const ModeData& data,
                                const RealVector& mesh, const ComplexVector& phi_mesh,
                                const RealVector& at);

struct HomogeneousPair {
    ResolventQuery query;
    Complex gamma0;
    bool mild = false;  // second member is phi_L instead of phi_s
    RealVector grid;
    ComplexVector first, second;      // phi_r and phi_s (or phi_L)
    ComplexVector first_d, second_d;  // y-derivatives
    Complex wronskian;                // numerical W{first, second} at y0
    Complex expected_wronskian;       // -2 gamma0 v'(y0), or v'(y0) in the mild case
};

HomogeneousPair homogeneous_pair(const Profile& profile, const ResolventQuery& query, double tol = 1e-10,
                                 const RealVector* grid = nullptr);

// Half-width of the critical-layer fit window in y. The lower edge is 10 eps0.
inline constexpr double kFrobeniusReach = 0.05;

struct FrobeniusFit {
    Complex a_r, a_s;
    double residual = 0.0;
    Complex exponent_shift;      // free-exponent estimate of gamma0, Re and Im >= 0
    double singular_exponent = 0.0;  // 1/2 - Re(shift)
    double free_residual = 0.0;
};

FrobeniusFit frobenius_fit(const Profile& profile, const ResolventField& field, const RichardsonPoint& rich);

}  // namespace stratdamp
