#pragma once

#include <string>
#include <vector>

#include "stratdamp/types.hpp"

namespace stratdamp {

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Residuals of the Whittaker-function identities: ODE residuals on random
// samples, branch continuation, the Q identity, Wronskians, closed forms.
// Deterministic for a given seed.
std::vector<IdentityCheck> special_selftest(unsigned seed = 20240611u, int samples = 200);

}  // namespace stratdamp
