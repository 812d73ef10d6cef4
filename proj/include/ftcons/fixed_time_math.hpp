#pragma once

// Scalar fixed-time stability primitives: signed powers, the Gamma function,
// the settling-time bound gamma(rho) and the tracking-controller constants.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <sstream>
#include <string>

#include "ftcons/errors.hpp"

namespace ftcons {

/// sign(0) is 0 so the origin is an exact equilibrium of every right-hand side.
constexpr double sign(double x) noexcept {
    return (x > 0.0) ? 1.0 : ((x < 0.0) ? -1.0 : 0.0);
}

/// |x|^r sign(x). Defined at x = 0 only for r > 0.
inline double signed_pow(double x, double r) {
    if (x == 0.0) {
        if (r <= 0.0) {
            throw DomainError("signed_pow: x = 0 requires r > 0");
        }
        return 0.0;
    }
    return std::pow(std::abs(x), r) * sign(x);
}

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

inline double lanczos_gamma(double z) {
    const double x = z - 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
        sum += kLanczosCoeffs[k] / (x + static_cast<double>(k));
    }
    const double t = x + kLanczosG + 0.5;
    // Split the power so large z does not overflow before exp(-t) is applied.
    const double half = std::pow(t, 0.5 * (x + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

}  // namespace detail

/// Gamma function on the positive real axis.
inline double gamma_fn(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("gamma_fn: argument must be finite and positive");
    }
    if (z < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return std::numbers::pi /
               (std::sin(std::numbers::pi * z) * detail::lanczos_gamma(1.0 - z));
    }
    return detail::lanczos_gamma(z);
}

/// rho = [alpha, beta, p, q, k] of the scalar system
/// dx/dt = -(alpha |x|^p + beta |x|^q)^k sign(x).
struct FixedTimeParams {
    double alpha = 1.0;
    double beta = 1.0;
    double p = 0.5;
    double q = 1.5;
    double k = 1.0;

    /// (1 - k p) / (q - p)
    [[nodiscard]] double m_p() const { return (1.0 - k * p) / (q - p); }
    /// (k q - 1) / (q - p)
    [[nodiscard]] double m_q() const { return (k * q - 1.0) / (q - p); }

    /// Throws ValidationError naming the first violated inequality.
    void validate() const {
        const auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw ValidationError(std::string(name) + " > 0 violated");
            }
        };
        positive(alpha, "alpha");
        positive(beta, "beta");
        positive(p, "p");
        positive(q, "q");
        positive(k, "k");
        if (!(k * p < 1.0)) {
            std::ostringstream os;
            os << "k*p < 1 violated (k*p = " << k * p << ")";
            throw ValidationError(os.str());
        }
        if (!(k * q > 1.0)) {
            std::ostringstream os;
            os << "k*q > 1 violated (k*q = " << k * q << ")";
            throw ValidationError(os.str());
        }
    }

    [[nodiscard]] bool is_valid() const noexcept {
        try {
            validate();
            return true;
        } catch (const ValidationError&) {
            return false;
        }
    }

    friend bool operator==(const FixedTimeParams&, const FixedTimeParams&) = default;
};

/// (alpha |x|^p + beta |x|^q)^k, the magnitude of the fixed-time vector field.
inline double fixed_time_magnitude(double x, const FixedTimeParams& rho) {
    const double a = std::abs(x);
    if (a == 0.0) {
        return 0.0;
    }
    return std::pow(rho.alpha * std::pow(a, rho.p) + rho.beta * std::pow(a, rho.q), rho.k);
}

/// Upper bound gamma(rho) on the settling time of the scalar fixed-time system,
/// uniform over all initial conditions.
inline double settling_bound(const FixedTimeParams& rho) {
    rho.validate();
    const double mp = rho.m_p();
    const double mq = rho.m_q();
    return gamma_fn(mp) * gamma_fn(mq) /
           (std::pow(rho.alpha, rho.k) * gamma_fn(rho.k) * (rho.q - rho.p)) *
           std::pow(rho.alpha / rho.beta, mp);
}

struct ControllerConstants {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double m_p = 0.0;
    double m_q = 0.0;
};

/// gamma1 is the bound of the reduced sliding dynamics (p = 1, q = 3, k = 1/2);
/// gamma2 is gamma(rho) for the reaching law [alpha2, beta2, p', q', k'].
inline ControllerConstants controller_constants(double alpha1, double beta1, double alpha2,
                                                double beta2, double p_prime, double q_prime,
                                                double k_prime) {
    if (!(alpha1 > 0.0) || !(beta1 > 0.0)) {
        throw ValidationError("alpha1 > 0 and beta1 > 0 required");
    }
    const FixedTimeParams reaching{alpha2, beta2, p_prime, q_prime, k_prime};
    reaching.validate();

    ControllerConstants c;
    const double g14 = gamma_fn(0.25);
    c.gamma1 = g14 * g14 / (2.0 * std::sqrt(alpha1) * gamma_fn(0.5)) *
               std::pow(alpha1 / beta1, 0.25);
    c.gamma2 = settling_bound(reaching);
    c.m_p = reaching.m_p();
    c.m_q = reaching.m_q();
    return c;
}

/// Power-mean inequality used to lower-bound the Lyapunov derivative:
/// mean(a_i (alpha a_i^p + beta a_i^q)^k) >= abar (alpha abar^p + beta abar^q)^k.
/// A relative slack of 1e-12 absorbs rounding in the equality case.
inline bool check_power_mean_inequality(std::span<const double> a, const FixedTimeParams& rho) {
    if (a.empty()) {
        return true;
    }
    double lhs = 0.0;
    double mean = 0.0;
    for (double ai : a) {
        lhs += ai * fixed_time_magnitude(ai, rho);
        mean += ai;
    }
    const double n = static_cast<double>(a.size());
    lhs /= n;
    mean /= n;
    const double rhs = mean * fixed_time_magnitude(mean, rho);
    return lhs >= rhs * (1.0 - 1e-12);
}

/// ||z||_l <= ||z||_r for l > r > 0.
inline bool check_norm_monotonicity(std::span<const double> z, double l, double r) {
    if (!(l > r && r > 0.0)) {
        throw DomainError("check_norm_monotonicity requires l > r > 0");
    }
    double scale = 0.0;
    for (double zi : z) {
        scale = std::max(scale, std::abs(zi));
    }
    if (scale == 0.0) {
        return true;
    }
    // Scaled by the sup-norm so large exponents cannot overflow.
    double sl = 0.0;
    double sr = 0.0;
    for (double zi : z) {
        const double u = std::abs(zi) / scale;
        sl += std::pow(u, l);
        sr += std::pow(u, r);
    }
    const double norm_l = scale * std::pow(sl, 1.0 / l);
    const double norm_r = scale * std::pow(sr, 1.0 / r);
    return norm_l <= norm_r * (1.0 + 1e-12);
}

}  // namespace ftcons
