#pragma once

#include <random>
#include <string>

#include "ftcons/ftcons.hpp"

namespace testing_support {

inline std::string config_path(const std::string& name) {
    return std::string(FTCONS_CONFIG_DIR) + "/" + name;
}

/// Random rho with k p < 1 < k q, kept away from the constraint boundaries.
inline ftcons::FixedTimeParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> log_gain(std::log(0.5), std::log(4.0));
    std::uniform_real_distribution<double> kd(0.3, 1.5);
    std::uniform_real_distribution<double> frac(0.1, 0.9);
    std::uniform_real_distribution<double> over(1.2, 3.0);
    ftcons::FixedTimeParams rho;
    rho.alpha = std::exp(log_gain(rng));
    rho.beta = std::exp(log_gain(rng));
    rho.k = kd(rng);
    rho.p = frac(rng) / rho.k;
    rho.q = over(rng) / rho.k;
    return rho;
}

}  // namespace testing_support
