#pragma once

#include <vector>

#include "stratdamp/taylor_goldstein.hpp"
#include "stratdamp/timestepper.hpp"

namespace stratdamp {

struct SpectralDensitySlice {
    int k = 1;
    double y0 = 0.0;
    Regime regime = Regime::NonStratified;
    RealVector grid;
    // eps -> 0 limits of (X^- - X^+)(y; y0). jump_rho is the principal-value
    // density P jump_psi / (v - v(y0)), set to 0 within eps_min of y0.
    ComplexVector jump_psi, jump_rho;
    double extrapolation_error = 0.0;  // L2 gap between full and last-two-rung extrapolations
    double max_residual = 0.0;
};

struct DensityOptions {
    std::vector<double> eps_ladder{4e-3, 2e-3, 1e-3};
    SolverOptions solver;
    bool use_conjugation = true;  // real data: phi^+ = conj(phi^-), one solve per rung
};

SpectralDensitySlice spectral_density(const Profile& profile, const RegimePartition& partition, int k, double y0,
                                      const ModeData& data, const DensityOptions& opt = {});

struct ContourOptions {
    DensityOptions density;
    double panel_width = 0.01;  // upper bound; shrunk further for oscillation
    int gauss_points = 4;
    int boundary_refinement = 4;  // geometric halvings toward each regime boundary
    long max_nodes = 20000;
    bool full_interval = false;  // integrate y0 over [0,2] instead of [theta1, theta2]
    int jobs = 0;
};

struct ContourQuadrature {
    std::vector<double> nodes, weights;
};

ContourQuadrature contour_quadrature(const Profile& profile, const RegimePartition& partition, int k, double t_max,
                                     const ContourOptions& opt);

// psi(t,y) = (1/2 pi i) int e^{-ikv(y0)t} jump_psi(y;y0) v'(y0) dy0 at each requested time.
// rho and omega use the same density through bounded kernels such as
// (e^{-ikv0 t} - e^{-ikvt})/(v - v0), which equal their oscillatory integrals
// but stay regular at y0 = y.
ModeTrajectory contour_evolve(const Profile& profile, const RegimePartition& partition, const ModeData& data,
                              const std::vector<double>& times, const ContourOptions& opt = {});

// Same, reusing densities computed once on the quadrature nodes.
struct DensityCache {
    int k = 1;
    ContourQuadrature quadrature;
    std::vector<SpectralDensitySlice> slices;
};

DensityCache build_density_cache(const Profile& profile, const RegimePartition& partition, const ModeData& data,
                                 double t_max, const ContourOptions& opt = {});
ModeTrajectory contour_evolve(const Profile& profile, const ModeData& data, const DensityCache& cache,
                              const std::vector<double>& times);

struct ModeSnapshot {
    int k = 1;
    double t = 0.0;
    RealVector grid;
    ComplexVector psi, rho, omega;
};

ModeSnapshot snapshot(const ModeTrajectory& trajectory, size_t index);

// Parseval norms in x over the torus of length 2 pi, normalized so a single
// mode gives sqrt(2)|X_k|: ((1/2pi) int |f|^2 dx)^{1/2} = (2 sum_{k>=1} |X_k|^2)^{1/2}.
struct LxNorms {
    RealVector grid;
    RealVector vx, vy, rho, omega, drho;
};

LxNorms lx_norms(const std::vector<ModeSnapshot>& modes);

}  // namespace stratdamp
