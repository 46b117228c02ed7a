#pragma once

#include <string>
#include <vector>

#include "stratdamp/taylor_goldstein.hpp"
#include "stratdamp/tridiagonal.hpp"

namespace stratdamp {

struct ModeTrajectory {
    int k = 1;
    RealVector grid;
    std::vector<double> times;
    std::vector<ComplexVector> psi, rho, omega;
    std::string source;  // "contour" or "timestepper"
};

// Moduli of the mode fields at one probe position.
struct ProbeSeries {
    double y = 0.0;
    std::vector<double> psi, dpsi, rho, omega, drho;
};

struct NormSeries {
    std::vector<double> times;
    std::vector<double> psi_l2, dpsi_l2, rho_l2, omega_l2;
    std::vector<ProbeSeries> probes;
};

// Dirichlet inverse of d^2/dy^2 - k^2 on a uniform grid, fourth order
// (Numerov weighting), factored once.
class PoissonSolver {
public:
    PoissonSolver(const RealVector& grid, int k);
    ComplexVector solve(const ComplexVector& omega) const;
    // max |L psi - M omega| over interior rows, in the solver's own discretization
    double residual(const ComplexVector& psi, const ComplexVector& omega) const;

private:
    double h_ = 0.0, k2_ = 0.0;
    TridiagonalLU<double> lu_;
};

struct EvolveOptions {
    double t_end = 5.0;
    double dt = 0.0;             // 0 selects min(0.05/(|k| C0), 2e-3)
    double sample_dt = 0.01;     // spacing of stored samples
    double store_fields_until = 10.0;  // full fields kept only up to this time
    std::vector<double> probes;
};

struct Evolution {
    ModeTrajectory trajectory;
    NormSeries norms;
    double dt = 0.0;
    double poisson_residual = 0.0;  // worst residual over stored samples
};

double default_time_step(const Profile& profile, int k);

Evolution evolve(const Profile& profile, int k, const ComplexVector& omega0, const ComplexVector& rho0,
                 const EvolveOptions& opt);
Evolution evolve(const Profile& profile, const ModeData& init, const EvolveOptions& opt);

struct DuhamelResidual {
    double rho = 0.0;    // max over y and stored t, relative to max |rho|
    double omega = 0.0;  // same for the vorticity identity
    RealVector rho_by_y, omega_by_y;
};

// Checks, by Simpson quadrature in time over the stored samples,
//   e^{ikvt} rho(t)   = rho0   + ik P int_0^t e^{ikvs} psi ds
//   e^{ikvt} omega(t) = omega0 + ik int_0^t e^{ikvs} (v'' psi - g rho) ds
DuhamelResidual duhamel_residual(const ModeTrajectory& trajectory, const Profile& profile);

}  // namespace stratdamp
