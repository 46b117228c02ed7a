#pragma once

#include <functional>
#include <vector>

#include "stratdamp/profiles.hpp"

namespace stratdamp {

struct ShootingResult {
    Complex lambda;
    Complex W;           // phi(0)
    RealVector grid;     // checkpoints (profile grid)
    ComplexVector phi;   // phi(2) = 0, phi'(2) = 1
    double residual = -1.0;  // relative change against a 100x tighter integration, if requested
};

// Solves (d^2 - k^2 - v''/(v - lambda) + g_scale P/(v - lambda)^2) phi = 0 from y = 2 to y = 0.
// g_scale < 0 means the profile's own gravity.
ShootingResult shooting_wronskian(const Profile& profile, int k, Complex lambda, double g_scale = -1.0,
                                  double tol = 1e-10, bool tabulate = false, bool estimate_residual = false);

struct Box {
    double re_lo = 0.0, re_hi = 1.0, im_lo = 0.05, im_hi = 1.0;
};

struct WindingNode {
    Complex lambda, W;
    double argument = 0.0;  // accumulated continuous argument
};

struct EigenCount {
    Box box;
    int count = 0;
    double winding = 0.0;  // unrounded
    long evaluations = 0;
    std::vector<WindingNode> scan;
};

// Winding number of f along the counterclockwise boundary of box. Segments
// whose argument increment exceeds pi/2 are bisected.
EigenCount count_zeros(const std::function<Complex(Complex)>& f, const Box& box, int nodes_per_side, int jobs = 0);

EigenCount count_eigenvalues(const Profile& profile, int k, const Box& box, int nodes_per_side = 64,
                             double g_scale = -1.0, int jobs = 0);

// Box used by the spectrum criterion: Re in [v(0) - 0.5, v(2) + 0.5], Im in [0.05, 1].
Box default_box(const Profile& profile);

Interval essential_band(const Profile& profile);

}  // namespace stratdamp
