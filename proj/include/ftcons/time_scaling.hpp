#pragma once

// Bounded time-varying gains built from a time-scaling profile Phi:
//   psi(tau)   = T_c * int_0^tau Phi
//   rho(tau)   = 1 / (T_c Phi(tau))
//   kappa(t)   = rho(psi^{-1}(t - t0))  on [t0, t0 + eta T_c),  1 elsewhere.
//
// Only the exponential profile Phi(tau) = a / eta * exp(-a tau) with
// eta = 1 - exp(-a T) is implemented; every quantity has a closed form.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>

#include "ftcons/errors.hpp"

namespace ftcons {

struct ExponentialProfile {
    double rate = 1.0;

    friend bool operator==(const ExponentialProfile&, const ExponentialProfile&) = default;
};

using GainProfile = std::variant<ExponentialProfile>;

inline std::string profile_name(const GainProfile& profile) {
    return std::visit(
        [](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ExponentialProfile>) {
                return "exponential";
            }
        },
        profile);
}

class GainSchedule {
public:
    GainSchedule() : GainSchedule(ExponentialProfile{1.0}, 0.0, 1.0, 1.0) {}

    /// \param t0     start of the gain window
    /// \param tc     predefined settling scale T_c > 0
    /// \param shape  window-shaping parameter T > 0
    GainSchedule(GainProfile profile, double t0, double tc, double shape)
        : profile_(profile), t0_(t0), tc_(tc), shape_(shape) {
        if (!(tc > 0.0) || !std::isfinite(tc)) {
            throw ValidationError("gain schedule: T_c must be positive");
        }
        if (!(shape > 0.0) || !std::isfinite(shape)) {
            throw ValidationError("gain schedule: T must be positive");
        }
        if (!std::isfinite(t0)) {
            throw ValidationError("gain schedule: t0 must be finite");
        }
        std::visit([this](const auto& p) { init(p); }, profile_);
    }

    [[nodiscard]] const GainProfile& profile() const noexcept { return profile_; }
    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double tc() const noexcept { return tc_; }
    [[nodiscard]] double shape() const noexcept { return shape_; }
    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] double window_end() const noexcept { return t0_ + eta_ * tc_; }
    [[nodiscard]] double rate() const { return std::get<ExponentialProfile>(profile_).rate; }

    [[nodiscard]] bool in_window(double t) const noexcept {
        return t >= t0_ && t < window_end();
    }

    /// Phi(tau) for tau >= 0.
    [[nodiscard]] double phi(double tau) const {
        const double a = rate();
        return a / eta_ * std::exp(-a * tau);
    }

    /// rho(tau) = 1 / (T_c Phi(tau)).
    [[nodiscard]] double rho(double tau) const {
        const double a = rate();
        return eta_ * std::exp(a * tau) / (a * tc_);
    }

    [[nodiscard]] double psi(double tau) const {
        if (tau < 0.0) {
            throw DomainError("psi: tau must be >= 0");
        }
        const double a = rate();
        return tc_ / eta_ * -std::expm1(-a * tau);
    }

    /// Supremum of psi over tau >= 0.
    [[nodiscard]] double psi_limit() const noexcept { return tc_ / eta_; }

    [[nodiscard]] double psi_inverse(double t_rel) const {
        if (t_rel < 0.0) {
            throw DomainError("psi_inverse: argument must be >= 0");
        }
        if (t_rel >= psi_limit()) {
            throw DomainError("psi_inverse: argument at or beyond the limit of psi");
        }
        const double a = rate();
        return -std::log1p(-eta_ * t_rel / tc_) / a;
    }

    [[nodiscard]] double kappa(double t) const {
        if (!in_window(t)) {
            return 1.0;
        }
        const double a = rate();
        return eta_ / (a * (tc_ - eta_ * (t - t0_)));
    }

    /// Time derivative of kappa. At t0 the interior value is returned, at
    /// window_end the exterior value 0.
    [[nodiscard]] double kappa_dot(double t) const {
        if (!in_window(t)) {
            return 0.0;
        }
        const double a = rate();
        const double d = tc_ - eta_ * (t - t0_);
        return eta_ * eta_ / (a * d * d);
    }

    /// kappa at the window start, eta / (a T_c).
    [[nodiscard]] double kappa_at_start() const { return eta_ / (rate() * tc_); }

    /// Supremum of kappa over the window, eta / (a T_c (1 - eta^2)).
    [[nodiscard]] double kappa_supremum() const {
        return eta_ / (rate() * tc_ * (1.0 - eta_ * eta_));
    }

    /// Lower and upper bounds of kappa over all t.
    [[nodiscard]] double kappa_lower_bound() const { return std::min(1.0, kappa_at_start()); }
    [[nodiscard]] double kappa_upper_bound() const { return std::max(1.0, kappa_supremum()); }

    friend bool operator==(const GainSchedule& a, const GainSchedule& b) {
        return a.profile_ == b.profile_ && a.t0_ == b.t0_ && a.tc_ == b.tc_ &&
               a.shape_ == b.shape_;
    }

private:
    void init(const ExponentialProfile& p) {
        if (!(p.rate > 0.0) || !std::isfinite(p.rate)) {
            throw ValidationError("gain schedule: exponential rate must be positive");
        }
        eta_ = -std::expm1(-p.rate * shape_);
        if (!(eta_ > 0.0 && eta_ < 1.0)) {
            throw ValidationError("gain schedule: eta = 1 - exp(-rate*T) must lie in (0, 1)");
        }
    }

    GainProfile profile_ = ExponentialProfile{};
    double t0_ = 0.0;
    double tc_ = 1.0;
    double shape_ = 1.0;
    double eta_ = 0.0;
};

inline double psi(double tau, const GainSchedule& s) { return s.psi(tau); }
inline double psi_inverse(double t_rel, const GainSchedule& s) { return s.psi_inverse(t_rel); }
inline double kappa_hat(double t, const GainSchedule& s) { return s.kappa(t); }
inline double kappa_hat_dot(double t, const GainSchedule& s) { return s.kappa_dot(t); }

}  // namespace ftcons
