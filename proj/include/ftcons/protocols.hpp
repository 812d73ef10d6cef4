#pragma once

// Right-hand sides of the leader, the distributed observers and the tracking
// controllers, plus the gain conditions that make their settling-time bounds
// hold.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ftcons/errors.hpp"
#include "ftcons/fixed_time_math.hpp"
#include "ftcons/graph_topology.hpp"
#include "ftcons/time_scaling.hpp"

namespace ftcons {

// ---------------------------------------------------------------------------
// Exogenous signals

enum class SignalKind { Constant, Sine, Cosine };

/// constant: amplitude; sin/cos: amplitude * f(frequency * t + phase).
struct Signal {
    SignalKind kind = SignalKind::Constant;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;

    [[nodiscard]] double operator()(double t) const {
        switch (kind) {
            case SignalKind::Constant:
                return amplitude;
            case SignalKind::Sine:
                return amplitude * std::sin(frequency * t + phase);
            case SignalKind::Cosine:
                return amplitude * std::cos(frequency * t + phase);
        }
        return 0.0;
    }

    /// sup_t |s(t)|
    [[nodiscard]] double bound() const { return std::abs(amplitude); }

    friend bool operator==(const Signal&, const Signal&) = default;
};

struct LeaderModel {
    Signal u0;
    double u0_max = 0.0;
    double x0_init = 0.0;
    double v0_init = 0.0;

    void validate() const {
        if (!(u0_max >= u0.bound())) {
            std::ostringstream os;
            os << "leader: u0_max = " << u0_max << " is below the input amplitude "
               << u0.bound();
            throw ValidationError(os.str());
        }
    }

    friend bool operator==(const LeaderModel&, const LeaderModel&) = default;
};

struct DisturbanceModel {
    std::vector<Signal> delta;
    /// delta_i with |Delta_i(t)| <= delta_i.
    std::vector<double> bounds;

    void validate(std::size_t n) const {
        if (delta.size() != n || bounds.size() != n) {
            throw ValidationError("disturbance: one signal and one bound per follower required");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!(bounds[i] >= delta[i].bound())) {
                throw ValidationError("disturbance: bound of follower " + std::to_string(i + 1) +
                                      " is below its amplitude");
            }
        }
    }

    friend bool operator==(const DisturbanceModel&, const DisturbanceModel&) = default;
};

/// sign(x), or x / width inside a boundary layer |x| < width when width > 0.
struct SignFunction {
    double width = 0.0;

    [[nodiscard]] double operator()(double x) const noexcept {
        if (width > 0.0 && std::abs(x) < width) {
            return x / width;
        }
        return sign(x);
    }
};

// ---------------------------------------------------------------------------
// Parameters

struct ObserverParams {
    FixedTimeParams core{1.0, 2.0, 1.5, 3.0, 0.5};
    double zeta_x = 0.0;
    double zeta_v = 0.0;
    std::vector<double> kappa_x;
    std::vector<double> kappa_v;
    /// Velocity-channel and position-channel phase times.
    double tc1 = 0.1;
    double tc2 = 0.9;

    [[nodiscard]] double kappa_x_min() const {
        return *std::min_element(kappa_x.begin(), kappa_x.end());
    }
    [[nodiscard]] double kappa_v_min() const {
        return *std::min_element(kappa_v.begin(), kappa_v.end());
    }

    void validate(std::size_t n) const {
        core.validate();
        if (kappa_x.size() != n || kappa_v.size() != n) {
            throw ValidationError("observer: one kappa_x and one kappa_v per follower required");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!(kappa_x[i] > 0.0) || !(kappa_v[i] > 0.0)) {
                throw ValidationError("observer: gains kappa must be positive");
            }
        }
        if (!(zeta_x >= 0.0)) {
            throw ValidationError("observer: zeta_x >= 0 violated");
        }
        if (!(zeta_v > 0.0)) {
            throw ValidationError("observer: zeta_v > 0 violated");
        }
        if (!(tc1 > 0.0) || !(tc2 > 0.0)) {
            throw ValidationError("observer: Tc1 and Tc2 must be positive");
        }
    }

    friend bool operator==(const ObserverParams&, const ObserverParams&) = default;
};

struct ControllerGains {
    double alpha1 = 0.25;
    double beta1 = 4.0;
    double alpha2 = 0.25;
    double beta2 = 4.0;
    double p = 1.5;
    double q = 3.0;
    double k = 0.5;
    /// Phase times of the reduced sliding dynamics and of the reaching phase.
    double tc1 = 1.0;
    double tc2 = 1.0;

    friend bool operator==(const ControllerGains&, const ControllerGains&) = default;
};

/// Tracking-controller gains with the derived constants gamma1, gamma2 cached.
class ControllerParams {
public:
    ControllerParams() : ControllerParams(ControllerGains{}, {}) {}

    ControllerParams(const ControllerGains& gains, std::vector<double> zeta)
        : gains_(gains), zeta_(std::move(zeta)) {
        if (!(gains.tc1 > 0.0) || !(gains.tc2 > 0.0)) {
            throw ValidationError("controller: phase times must be positive");
        }
        for (double z : zeta_) {
            if (!(z >= 0.0)) {
                throw ValidationError("controller: zeta_i >= 0 required");
            }
        }
        constants_ = controller_constants(gains.alpha1, gains.beta1, gains.alpha2, gains.beta2,
                                          gains.p, gains.q, gains.k);
        surface_gain_ = constants_.gamma1 * constants_.gamma1 / (gains.tc1 * gains.tc1);
        reaching_gain_ = constants_.gamma2 / gains.tc2;
    }

    [[nodiscard]] const ControllerGains& gains() const noexcept { return gains_; }
    [[nodiscard]] const std::vector<double>& zeta() const noexcept { return zeta_; }
    [[nodiscard]] const ControllerConstants& constants() const noexcept { return constants_; }
    /// gamma1^2 / That_c1^2
    [[nodiscard]] double surface_gain() const noexcept { return surface_gain_; }
    /// gamma2 / That_c2
    [[nodiscard]] double reaching_gain() const noexcept { return reaching_gain_; }

    friend bool operator==(const ControllerParams& a, const ControllerParams& b) {
        return a.gains_ == b.gains_ && a.zeta_ == b.zeta_;
    }

private:
    ControllerGains gains_;
    std::vector<double> zeta_;
    ControllerConstants constants_;
    double surface_gain_ = 0.0;
    double reaching_gain_ = 0.0;
};

enum class ControllerStart { Immediate, AfterObserver };

struct NonAutoSettings {
    double rate1 = 220.0;
    double rate2 = 90.0;
    double rate3 = 1.8;
    double t_alpha = 0.016;
    double t_beta = 0.055;
    double t_gamma = 1.5;
    double t0 = 0.0;

    friend bool operator==(const NonAutoSettings&, const NonAutoSettings&) = default;
};

/// The three chained gain schedules of the non-autonomous protocol.
struct NonAutoParams {
    GainSchedule velocity;  // rho_1 on [t0, t0 + eta1 Tc1)
    GainSchedule position;  // rho_2 on [t0', t0' + eta2 Tc2), t0' = end of rho_1
    GainSchedule tracking;  // rho_3 on [T'_o, T'_o + eta3 Tc3)
    double t0 = 0.0;
    double controller_start = 0.0;

    /// t0 + eta1 Tc1
    [[nodiscard]] double velocity_ubst() const { return velocity.window_end(); }
    /// t0 + eta1 Tc1 + eta2 Tc2
    [[nodiscard]] double observer_ubst() const { return position.window_end(); }
    /// T'_o + eta3 Tc3
    [[nodiscard]] double tracking_ubst() const { return tracking.window_end(); }
};

inline NonAutoParams make_nonauto_params(const NonAutoSettings& s, const ObserverParams& obs,
                                         const ControllerParams& ctrl, ControllerStart start) {
    NonAutoParams na;
    na.t0 = s.t0;
    na.velocity = GainSchedule(ExponentialProfile{s.rate1}, s.t0, obs.tc1, s.t_alpha);
    na.position =
        GainSchedule(ExponentialProfile{s.rate2}, na.velocity.window_end(), obs.tc2, s.t_beta);
    na.controller_start = (start == ControllerStart::Immediate) ? s.t0 : na.observer_ubst();
    const double tc3 = ctrl.gains().tc1 + ctrl.gains().tc2;
    na.tracking = GainSchedule(ExponentialProfile{s.rate3}, na.controller_start, tc3, s.t_gamma);
    return na;
}

// ---------------------------------------------------------------------------
// Observer

/// sum_j a_ij (z_j - z_i) + b_i (z0 - z_i) for every follower i.
inline Eigen::VectorXd neighborhood_error(const Eigen::VectorXd& estimates, double leader,
                                          const ConnectionMatrices& topo) {
    const Eigen::Index n = topo.adjacency.rows();
    if (estimates.size() != n) {
        throw ValidationError("consensus_errors: estimate count does not match the topology");
    }
    Eigen::VectorXd e(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double acc = topo.leader_links(i) * (leader - estimates(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = topo.adjacency(i, j);
            if (a != 0.0) {
                acc += a * (estimates(j) - estimates(i));
            }
        }
        e(i) = acc;
    }
    return e;
}

struct ConsensusErrors {
    Eigen::VectorXd position;  // e_1
    Eigen::VectorXd velocity;  // e_2
};

inline ConsensusErrors consensus_errors(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& v_hat,
                                        double x0, double v0, const ConnectionMatrices& topo) {
    return {neighborhood_error(x_hat, x0, topo), neighborhood_error(v_hat, v0, topo)};
}

struct ObserverDerivative {
    Eigen::VectorXd x_hat;
    Eigen::VectorXd v_hat;
};

namespace detail {

// The consensus error e points from the local estimate toward the leader, so
// the injection acts along +sign(e); in error coordinates this is
// d(x~)/dt = v~ - Phi_x(M x~).
inline ObserverDerivative observer_rhs(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& v_hat,
                                       double x0, double v0, const ObserverParams& params,
                                       const ConnectionMatrices& topo, double gain_x,
                                       double gain_v, const SignFunction& sgn) {
    const ConsensusErrors e = consensus_errors(x_hat, v_hat, x0, v0, topo);
    const Eigen::Index n = x_hat.size();
    ObserverDerivative d{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const double e1 = e.position(i);
        const double e2 = e.velocity(i);
        d.x_hat(i) = v_hat(i) + params.kappa_x[iu] *
                                    (gain_x * fixed_time_magnitude(e1, params.core) +
                                     params.zeta_x) *
                                    sgn(e1);
        d.v_hat(i) = params.kappa_v[iu] *
                     (gain_v * fixed_time_magnitude(e2, params.core) + params.zeta_v) * sgn(e2);
    }
    return d;
}

}  // namespace detail

inline ObserverDerivative observer_rhs_autonomous(const Eigen::VectorXd& x_hat,
                                                  const Eigen::VectorXd& v_hat, double x0,
                                                  double v0, const ObserverParams& params,
                                                  const ConnectionMatrices& topo,
                                                  const SignFunction& sgn = {}) {
    return detail::observer_rhs(x_hat, v_hat, x0, v0, params, topo, 1.0, 1.0, sgn);
}

/// The time-varying gains scale the nonlinear injection only; the robustness
/// terms zeta enter unscaled (zeta_hat = zeta / rho inside the bracket).
inline ObserverDerivative observer_rhs_nonautonomous(const Eigen::VectorXd& x_hat,
                                                     const Eigen::VectorXd& v_hat, double x0,
                                                     double v0, const ObserverParams& params,
                                                     const NonAutoParams& na,
                                                     const ConnectionMatrices& topo, double t,
                                                     const SignFunction& sgn = {}) {
    return detail::observer_rhs(x_hat, v_hat, x0, v0, params, topo, na.position.kappa(t),
                                na.velocity.kappa(t), sgn);
}

// ---------------------------------------------------------------------------
// Tracking controller

/// sigma = e_v + [ [e_v]^2 + (gamma1^2/That_c1^2)(alpha1 e_x + beta1 [e_x]^3) ]^{1/2}
inline double sliding_variable(double e_x, double e_v, const ControllerParams& ctrl) {
    const ControllerGains& g = ctrl.gains();
    const double inner = signed_pow(e_v, 2.0) +
                         ctrl.surface_gain() * (g.alpha1 * e_x + g.beta1 * signed_pow(e_x, 3.0));
    return e_v + signed_pow(inner, 0.5);
}

inline double control_autonomous(double e_x, double e_v, const ControllerParams& ctrl,
                                 double zeta, const SignFunction& sgn = {}) {
    const ControllerGains& g = ctrl.gains();
    const double sigma = sliding_variable(e_x, e_v, ctrl);
    const double a = std::abs(sigma);
    double reaching = 0.0;
    if (a > 0.0) {
        reaching = std::pow(g.alpha2 * std::pow(a, g.p) + g.beta2 * std::pow(a, g.q), g.k);
    }
    const double magnitude = ctrl.reaching_gain() * reaching +
                             0.5 * ctrl.surface_gain() * (g.alpha1 + 3.0 * g.beta1 * e_x * e_x) +
                             zeta;
    return -magnitude * sgn(sigma);
}

/// Zero before the controller start time; the time-scaled law inside the
/// rho_3 window; the autonomous law afterwards.
inline double control_nonautonomous(double e_x, double e_v, const ControllerParams& ctrl,
                                    double zeta, const NonAutoParams& na, double t,
                                    const SignFunction& sgn = {}) {
    if (t < na.controller_start) {
        return 0.0;
    }
    if (!na.tracking.in_window(t)) {
        return control_autonomous(e_x, e_v, ctrl, zeta, sgn);
    }
    const double r = na.tracking.kappa(t);
    const double r_dot = na.tracking.kappa_dot(t);
    return r * r * control_autonomous(e_x, e_v / r, ctrl, zeta, sgn) + r_dot / r * e_v;
}

// ---------------------------------------------------------------------------
// Gain conditions

namespace detail {
inline bool at_least(double value, double bound) {
    return value >= bound * (1.0 - 1e-12) - std::numeric_limits<double>::min();
}
}  // namespace detail

struct ObserverGainReport {
    std::size_t followers = 0;
    double lambda_min = 0.0;
    double gamma = 0.0;
    double kappa_x = 0.0;  // per-agent minimum
    double kappa_v = 0.0;
    double zeta_v = 0.0;
    double u0_max = 0.0;
    double kappa_x_star = 0.0;
    double kappa_v_star = 0.0;
    double zeta_v_star = 0.0;
    bool kappa_x_ok = false;
    bool kappa_v_ok = false;
    bool zeta_v_ok = false;
    double observer_ubst = 0.0;  // Tc1 + Tc2

    [[nodiscard]] bool ok() const { return kappa_x_ok && kappa_v_ok && zeta_v_ok; }

    [[nodiscard]] std::vector<std::string> violations() const {
        std::vector<std::string> out;
        std::ostringstream os;
        os.precision(6);
        if (!kappa_x_ok) {
            os << "observer: kappa_x = " << kappa_x << " < N gamma/(lambda_min Tc2) = "
               << kappa_x_star;
            out.push_back(os.str());
            os.str("");
        }
        if (!kappa_v_ok) {
            os << "observer: kappa_v = " << kappa_v << " < N gamma/(lambda_min Tc1) = "
               << kappa_v_star;
            out.push_back(os.str());
            os.str("");
        }
        if (!zeta_v_ok) {
            os << "observer: kappa_v zeta_v = " << kappa_v * zeta_v << " < u0_max = " << u0_max;
            out.push_back(os.str());
        }
        return out;
    }
};

/// Minimal gains: kappa_x* = N gamma/(lambda_min Tc2), kappa_v* = N gamma/(lambda_min Tc1),
/// zeta_v* = u0_max / kappa_v.
inline ObserverGainReport validate_observer_gains(const ObserverParams& params,
                                                  const ConnectionMatrices& topo,
                                                  const LeaderModel& leader) {
    ObserverGainReport r;
    r.followers = topo.size();
    r.lambda_min = topo.lambda_min;
    r.gamma = settling_bound(params.core);
    const double n = static_cast<double>(r.followers);
    r.kappa_x_star = n * r.gamma / (r.lambda_min * params.tc2);
    r.kappa_v_star = n * r.gamma / (r.lambda_min * params.tc1);
    r.kappa_x = params.kappa_x.empty() ? 0.0 : params.kappa_x_min();
    r.kappa_v = params.kappa_v.empty() ? 0.0 : params.kappa_v_min();
    r.zeta_v = params.zeta_v;
    r.u0_max = leader.u0_max;
    r.zeta_v_star = r.kappa_v > 0.0 ? leader.u0_max / r.kappa_v : 0.0;
    r.kappa_x_ok = detail::at_least(r.kappa_x, r.kappa_x_star);
    r.kappa_v_ok = detail::at_least(r.kappa_v, r.kappa_v_star);
    r.zeta_v_ok = detail::at_least(r.kappa_v * r.zeta_v, leader.u0_max);
    r.observer_ubst = params.tc1 + params.tc2;
    return r;
}

/// Uniform minimal compliant observer gains for the given topology and leader.
inline ObserverParams with_minimal_observer_gains(ObserverParams params,
                                                  const ConnectionMatrices& topo,
                                                  const LeaderModel& leader) {
    const std::size_t n = topo.size();
    const double gamma = settling_bound(params.core);
    const double kx = static_cast<double>(n) * gamma / (topo.lambda_min * params.tc2);
    const double kv = static_cast<double>(n) * gamma / (topo.lambda_min * params.tc1);
    params.kappa_x.assign(n, kx);
    params.kappa_v.assign(n, kv);
    params.zeta_v = leader.u0_max / kv;
    return params;
}

struct ControllerGainReport {
    std::vector<double> zeta;
    std::vector<double> zeta_min;  // u0_max + delta_i
    std::vector<bool> zeta_ok;
    bool exponents_ok = false;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double controller_start = 0.0;
    double tracking_ubst = 0.0;  // T'_o + That_c1 + That_c2

    [[nodiscard]] bool ok() const {
        return exponents_ok && std::all_of(zeta_ok.begin(), zeta_ok.end(), [](bool b) { return b; });
    }

    [[nodiscard]] std::vector<std::string> violations() const {
        std::vector<std::string> out;
        if (!exponents_ok) {
            out.emplace_back("controller: k'p' < 1 < k'q' violated");
        }
        for (std::size_t i = 0; i < zeta_ok.size(); ++i) {
            if (!zeta_ok[i]) {
                std::ostringstream os;
                os << "controller: zeta_" << (i + 1) << " = " << zeta[i]
                   << " < u0_max + delta_i = " << zeta_min[i];
                out.push_back(os.str());
            }
        }
        return out;
    }
};

inline ControllerGainReport validate_controller_gains(const ControllerParams& ctrl,
                                                      const LeaderModel& leader,
                                                      const DisturbanceModel& disturbance,
                                                      double controller_start = 0.0) {
    ControllerGainReport r;
    const ControllerGains& g = ctrl.gains();
    r.exponents_ok = FixedTimeParams{g.alpha2, g.beta2, g.p, g.q, g.k}.is_valid();
    r.zeta = ctrl.zeta();
    for (std::size_t i = 0; i < r.zeta.size(); ++i) {
        const double delta = i < disturbance.bounds.size() ? disturbance.bounds[i] : 0.0;
        r.zeta_min.push_back(leader.u0_max + delta);
        r.zeta_ok.push_back(detail::at_least(r.zeta[i], r.zeta_min.back()));
    }
    r.gamma1 = ctrl.constants().gamma1;
    r.gamma2 = ctrl.constants().gamma2;
    r.controller_start = controller_start;
    r.tracking_ubst = controller_start + g.tc1 + g.tc2;
    return r;
}

}  // namespace ftcons
