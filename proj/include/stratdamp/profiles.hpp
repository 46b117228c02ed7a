#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stratdamp/types.hpp"

namespace stratdamp {

// Background state at one point: shear v and derivatives up to fourth order,
// stratification P = -d(rho_bar)/dy and derivatives up to second order.
struct ProfileSample {
    double v = 0, v1 = 0, v2 = 0, v3 = 0, v4 = 0;
    double P = 0, P1 = 0, P2 = 0;
};

class ProfileModel {
public:
    virtual ~ProfileModel() = default;
    virtual ProfileSample sample(double y) const = 0;
};

struct ProfileSpec {
    // trapezoid | exp-bump | unstratified | tabulated
    std::string family = "trapezoid";
    double amplitude = 0.35;   // max of P
    double center = 1.0;       // center of the stratified window
    double half_width = 0.9;   // theta = center -+ half_width
    double ramp = 0.1;         // trapezoid curvature ramp length (in units of half_width)
    double shear_amplitude = 0.0;  // v = y + a * bump((y - c_s)/w_s)
    double shear_center = 1.0;
    double shear_width = 0.5;
    double gravity = 1.0;
    int grid_n = 2048;  // number of grid intervals on [0,2]
    // tabulated family: uniform samples on [0,2]
    std::vector<double> sample_y, sample_v, sample_P;
};

struct Profile {
    std::string family;
    RealVector grid;
    RealVector v, v1, v2, v3, v4;
    RealVector P, P1, P2;
    double gravity = 1.0;
    double theta1 = 0.0, theta2 = 0.0;
    double c0 = 0.0, C0 = 0.0;
    double beta2 = 0.0;  // sup of J, sizes the local windows |y - y0| <= n beta / k
    std::shared_ptr<const ProfileModel> model;

    ProfileSample at(double y) const { return model->sample(y); }
    double J(double y) const;
    double dJ(double y) const;
    RealVector J_grid() const;
    double beta() const { return std::sqrt(beta2); }
    bool stratified() const { return P.maxCoeff() > 0.0; }
};

struct RichardsonPoint {
    double y = 0.0;
    double J = 0.0;
    Complex gamma = 0.5;
    double mu = 0.5;
    double nu = 0.0;
};

struct HypothesisReport {
    bool HP = false, Hv = false, H1 = false, H2 = false;
    bool H2_1 = false, H2_2 = false, H2_3 = false;
    double H1_value = 0.0;
    double c0 = 0.0, C0 = 0.0;
    double v3_sup = 0.0, calP2_sup = 0.0;
    double P_min_inside = 0.0, P_max_outside = 0.0, v2_max_outside = 0.0;
    double y_tilde = 0.0, J_max = 0.0;
    int root_count = 0;
    std::string H3 = "deferred to spectrum scan";
};

enum class Regime { NonStratified, Weak, Mild, Strong };
const char* to_string(Regime r);

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double y) const { return y >= lo && y <= hi; }
};

struct RegimePartition {
    double theta1 = 0.0, theta2 = 0.0;
    double varpi1 = 0.0, varpi2 = 0.0;
    double varpi11 = 0.0, varpi12 = 0.0, varpi21 = 0.0, varpi22 = 0.0;
    // Positions halfway between varpi_n and varpi_{n,j}; the overlapping
    // weak/strong bands end there.
    double varpi_tilde11 = 0.0, varpi_tilde12 = 0.0, varpi_tilde21 = 0.0, varpi_tilde22 = 0.0;
    double delta_tilde = 0.05;

    std::vector<Interval> non_stratified() const;
    std::vector<Interval> weak() const;
    std::vector<Interval> mild() const;
    std::vector<Interval> strong() const;
    std::vector<Interval> weak_extended() const;
    std::vector<Interval> strong_extended() const;

    // Total on [0,2]; mild bands are closed, weak/strong open.
    Regime lookup(double y) const;
    // Distance from y to the nearest regime boundary.
    double boundary_distance(double y) const;
};

ProfileSpec default_profile_spec();
Profile build_profile(const ProfileSpec& spec);
Profile default_profile();
// Wraps an arbitrary model without the support checks; used for synthetic
// backgrounds such as constant J in tests.
Profile profile_from_model(std::shared_ptr<const ProfileModel> model, double theta1, double theta2,
                           double gravity = 1.0, int grid_n = 2048, const std::string& family = "custom");

// Reads a TOML-style key = value file, a JSON object, or a CSV of (y, v, P).
ProfileSpec load_profile_spec(const std::string& path);
ProfileSpec parse_profile_text(const std::string& text);
ProfileSpec parse_profile_csv(const std::string& text);

RichardsonPoint richardson(const Profile& profile, double y);
RichardsonPoint richardson_from_J(double J);

HypothesisReport check_hypotheses(const Profile& profile);
RegimePartition partition_regimes(const Profile& profile, double delta_tilde = 0.05);

// Finite-difference weights for the m-th derivative at x0 on arbitrary nodes.
RealVector fd_weights(const RealVector& nodes, double x0, int m);
// Derivative of order m of uniform samples, 4th-order centered in the
// interior and one-sided near the ends (7-point stencils).
RealVector differentiate_uniform(const RealVector& f, double h, int m);
ComplexVector differentiate_uniform(const ComplexVector& f, double h, int m);

}  // namespace stratdamp
