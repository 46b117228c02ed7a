#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratdamp/profiles.hpp"
#include "stratdamp/timestepper.hpp"

namespace stratdamp {

enum class Quantity { Vx, Vy, Rho, Omega, DyRho };
const char* to_string(Quantity q);
Quantity parse_quantity(const std::string& s);
inline constexpr Quantity kAllQuantities[] = {Quantity::Vx, Quantity::Vy, Quantity::Rho, Quantity::Omega,
                                              Quantity::DyRho};

struct DecayPrediction {
    Quantity quantity = Quantity::Vx;
    double y = 0.0;
    Regime regime = Regime::NonStratified;
    double mu = 0.5;
    double exponent = 0.0;
    bool log_correction = false;
    bool zero_field = false;  // the quantity vanishes identically at y
    // Late-time exponent of the second branch of the refined min(...) bound
    // near the edges of the stratified band (weak region only).
    std::optional<double> secondary_exponent;
};

DecayPrediction predicted_exponents(const Profile& profile, const RegimePartition& partition, double y,
                                    Quantity quantity);

struct PowerFit {
    double exponent = 0.0;
    double ci = 0.0;  // 95% half-width from the regression residual variance
    double log_amplitude = 0.0;
    int points = 0;
};

// Block maxima over consecutive windows of the given length; returns
// (time of max, max) pairs. period <= 0 leaves the series unchanged.
void envelope_maxima(const std::vector<double>& t, const std::vector<double>& v, double period,
                     std::vector<double>& t_out, std::vector<double>& v_out);

PowerFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_min, double t_max,
                       bool log_corrected = false, double envelope_period = 0.0);

struct CompareOptions {
    double t_min = 20.0, t_max = 200.0;
    double tol = 0.15;
    double zero_tol = 1e-8;
};

struct DecayReport {
    DecayPrediction prediction;
    double fitted = 0.0;
    double ci = 0.0;
    double t_min = 0.0, t_max = 0.0;
    double envelope_period = 0.0;
    double max_value = 0.0;  // over the window, used for zero-field checks
    bool pass = false;
};

// Envelope window for a probe: 2 pi / (k v'(y) d) with d the distance from y
// to the nearest edge of the stratified band, capped at a tenth of the window.
double envelope_period(const Profile& profile, int k, double y, double t_min, double t_max);

std::vector<DecayReport> compare(const Profile& profile, const RegimePartition& partition, int k,
                                 const NormSeries& norms, const std::vector<Quantity>& quantities,
                                 const CompareOptions& opt = {});

}  // namespace stratdamp
