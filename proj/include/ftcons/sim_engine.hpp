#pragma once

// Deterministic fixed-step simulation of the leader, the followers and their
// observers, with settling-time detection on the recorded channels.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftcons/errors.hpp"
#include "ftcons/fixed_time_math.hpp"
#include "ftcons/graph_topology.hpp"
#include "ftcons/integrators.hpp"
#include "ftcons/protocols.hpp"

namespace ftcons {

struct SimConfig {
    double dt = 1e-5;
    double horizon = 3.0;
    Integrator integrator = Integrator::RK4;
    SignFunction sign{};
    std::size_t record_stride = 10;
    double eps_settle = 1e-3;

    friend bool operator==(const SimConfig& a, const SimConfig& b) {
        return a.dt == b.dt && a.horizon == b.horizon && a.integrator == b.integrator &&
               a.sign.width == b.sign.width && a.record_stride == b.record_stride &&
               a.eps_settle == b.eps_settle;
    }
};

struct WorldState {
    double t = 0.0;
    double x0 = 0.0;
    double v0 = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd v;
    Eigen::VectorXd x_hat;
    Eigen::VectorXd v_hat;

    [[nodiscard]] std::size_t followers() const { return static_cast<std::size_t>(x.size()); }

    /// [x0, v0, x, v, x_hat, v_hat]
    [[nodiscard]] Eigen::VectorXd pack() const {
        const Eigen::Index n = x.size();
        Eigen::VectorXd y(2 + 4 * n);
        y << x0, v0, x, v, x_hat, v_hat;
        return y;
    }

    static WorldState unpack(double t, const Eigen::VectorXd& y) {
        const Eigen::Index n = (y.size() - 2) / 4;
        WorldState w;
        w.t = t;
        w.x0 = y(0);
        w.v0 = y(1);
        w.x = y.segment(2, n);
        w.v = y.segment(2 + n, n);
        w.x_hat = y.segment(2 + 2 * n, n);
        w.v_hat = y.segment(2 + 3 * n, n);
        return w;
    }
};

enum class ProtocolKind { Autonomous, NonAutonomous };

/// Everything a run needs, already validated and with derived quantities.
struct Scenario {
    ConnectionMatrices topo;
    LeaderModel leader;
    DisturbanceModel disturbance;
    ObserverParams observer;
    ControllerParams controller;
    ProtocolKind kind = ProtocolKind::Autonomous;
    ControllerStart start = ControllerStart::Immediate;
    std::optional<NonAutoParams> nonauto;
    WorldState initial;
    SimConfig sim;

    /// T'_o, the time the tracking controller switches on.
    [[nodiscard]] double controller_start_time() const {
        if (kind == ProtocolKind::NonAutonomous) {
            return nonauto->controller_start;
        }
        return start == ControllerStart::Immediate ? 0.0 : observer.tc1 + observer.tc2;
    }

    /// Times at which the right-hand side switches; the step grid lands on each.
    [[nodiscard]] std::vector<double> breakpoints() const {
        std::vector<double> b{controller_start_time()};
        if (kind == ProtocolKind::NonAutonomous) {
            for (const GainSchedule* s : {&nonauto->velocity, &nonauto->position, &nonauto->tracking}) {
                b.push_back(s->t0());
                b.push_back(s->window_end());
            }
        }
        return b;
    }
};

/// Upper bounds of the settling times configured for a scenario.
struct Ubsts {
    double velocity = 0.0;  // v~
    double observer = 0.0;  // x~ (and the whole observer)
    double tracking = 0.0;  // (e_x, e_v)
};

inline Ubsts ubsts(const Scenario& s) {
    if (s.kind == ProtocolKind::NonAutonomous) {
        return {s.nonauto->velocity_ubst(), s.nonauto->observer_ubst(), s.nonauto->tracking_ubst()};
    }
    const ControllerGains& g = s.controller.gains();
    return {s.observer.tc1, s.observer.tc1 + s.observer.tc2,
            s.controller_start_time() + g.tc1 + g.tc2};
}

/// Sliding variable as seen by the active controller at time t.
inline double sliding_at(const Scenario& s, double t, double e_x, double e_v) {
    if (s.kind == ProtocolKind::NonAutonomous && s.nonauto->tracking.in_window(t)) {
        return sliding_variable(e_x, e_v / s.nonauto->tracking.kappa(t), s.controller);
    }
    return sliding_variable(e_x, e_v, s.controller);
}

inline Eigen::VectorXd world_rhs(const Scenario& s, double t, const Eigen::VectorXd& y) {
    const Eigen::Index n = (y.size() - 2) / 4;
    const double x0 = y(0);
    const double v0 = y(1);
    const auto x = y.segment(2, n);
    const auto v = y.segment(2 + n, n);
    const Eigen::VectorXd x_hat = y.segment(2 + 2 * n, n);
    const Eigen::VectorXd v_hat = y.segment(2 + 3 * n, n);

    const ObserverDerivative obs =
        s.kind == ProtocolKind::NonAutonomous
            ? observer_rhs_nonautonomous(x_hat, v_hat, x0, v0, s.observer, *s.nonauto, s.topo, t,
                                         s.sim.sign)
            : observer_rhs_autonomous(x_hat, v_hat, x0, v0, s.observer, s.topo, s.sim.sign);

    Eigen::VectorXd dy(y.size());
    dy(0) = v0;
    dy(1) = s.leader.u0(t);
    const bool active = t >= s.controller_start_time();
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        double u = 0.0;
        if (active) {
            const double e_x = x(i) - x_hat(i);
            const double e_v = v(i) - v_hat(i);
            const double zeta = s.controller.zeta()[iu];
            u = s.kind == ProtocolKind::NonAutonomous
                    ? control_nonautonomous(e_x, e_v, s.controller, zeta, *s.nonauto, t, s.sim.sign)
                    : control_autonomous(e_x, e_v, s.controller, zeta, s.sim.sign);
        }
        dy(2 + i) = v(i);
        dy(2 + n + i) = u + s.disturbance.delta[iu](t);
    }
    dy.segment(2 + 2 * n, n) = obs.x_hat;
    dy.segment(2 + 3 * n, n) = obs.v_hat;
    return dy;
}

namespace detail {

inline void check_finite(double t, const Eigen::VectorXd& y) {
    const Eigen::Index n = (y.size() - 2) / 4;
    static const char* const blocks[] = {"x", "v", "x_hat", "v_hat"};
    for (Eigen::Index k = 0; k < y.size(); ++k) {
        if (std::isfinite(y(k))) {
            continue;
        }
        if (k < 2) {
            throw NumericalAbort(t, k == 0 ? "x0" : "v0");
        }
        const Eigen::Index block = (k - 2) / n;
        const Eigen::Index agent = (k - 2) % n;
        throw NumericalAbort(t, std::string(blocks[block]) + "[" + std::to_string(agent + 1) + "]");
    }
}

}  // namespace detail

/// One integrator step of length h from `world`.
inline WorldState step(const WorldState& world, const Scenario& s, double h) {
    for (const double value : {world.x0, world.v0}) {
        if (!std::isfinite(value)) {
            throw NumericalAbort(world.t, "leader");
        }
    }
    const Eigen::VectorXd y = world.pack();
    detail::check_finite(world.t, y);
    const auto f = [&s](double t, const Eigen::VectorXd& state) { return world_rhs(s, t, state); };
    const Eigen::VectorXd next = integrate_step(s.sim.integrator, f, world.t, y, h);
    detail::check_finite(world.t + h, next);
    return WorldState::unpack(world.t + h, next);
}

/// Uniform steps of size dt that are shortened to land exactly on each
/// breakpoint and on the horizon. Step times are computed as
/// segment_start + k dt, so no rounding accumulates across a segment.
class StepGrid {
public:
    StepGrid(double dt, double horizon, std::vector<double> breakpoints)
        : dt_(dt), horizon_(horizon) {
        if (!(dt > 0.0) || !(horizon > 0.0)) {
            throw ValidationError("sim: dt and horizon must be positive");
        }
        for (double b : breakpoints) {
            if (b > 0.0 && b < horizon) {
                breaks_.push_back(b);
            }
        }
        std::sort(breaks_.begin(), breaks_.end());
        breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
        breaks_.push_back(horizon);
    }

    [[nodiscard]] bool done() const { return current_ >= horizon_; }
    [[nodiscard]] double time() const { return current_; }

    /// Advances and returns the new time.
    double advance() {
        const double bound = breaks_[next_break_];
        double next = segment_start_ + static_cast<double>(k_ + 1) * dt_;
        if (next >= bound - 1e-9 * dt_) {
            next = bound;
            segment_start_ = bound;
            k_ = 0;
            ++next_break_;
        } else {
            ++k_;
        }
        current_ = next;
        return next;
    }

private:
    double dt_;
    double horizon_;
    std::vector<double> breaks_;
    std::size_t next_break_ = 0;
    double segment_start_ = 0.0;
    std::size_t k_ = 0;
    double current_ = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<WorldState> states;
    std::vector<Eigen::VectorXd> x_tilde;  // x_hat - x0
    std::vector<Eigen::VectorXd> v_tilde;  // v_hat - v0
    std::vector<Eigen::VectorXd> e_x;      // x - x_hat
    std::vector<Eigen::VectorXd> e_v;      // v - v_hat
    std::vector<Eigen::VectorXd> sigma;

    [[nodiscard]] bool empty() const { return times.empty(); }
    [[nodiscard]] std::size_t size() const { return times.size(); }

    void record(const Scenario& s, const WorldState& w) {
        times.push_back(w.t);
        states.push_back(w);
        const Eigen::Index n = w.x.size();
        x_tilde.emplace_back(w.x_hat.array() - w.x0);
        v_tilde.emplace_back(w.v_hat.array() - w.v0);
        e_x.emplace_back(w.x - w.x_hat);
        e_v.emplace_back(w.v - w.v_hat);
        Eigen::VectorXd sig(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            sig(i) = sliding_at(s, w.t, e_x.back()(i), e_v.back()(i));
        }
        sigma.push_back(std::move(sig));
    }
};

/// Per-sample sup-norm of a vector channel.
inline std::vector<double> sup_norm_series(const std::vector<Eigen::VectorXd>& channel) {
    std::vector<double> out;
    out.reserve(channel.size());
    for (const auto& z : channel) {
        out.push_back(z.size() == 0 ? 0.0 : z.cwiseAbs().maxCoeff());
    }
    return out;
}

/// Earliest sample time after which every later sample stays below eps, or
/// nullopt when the last sample is not below eps.
inline std::optional<double> detect_settling(std::span<const double> times,
                                             std::span<const double> norms, double eps) {
    if (times.empty() || times.size() != norms.size()) {
        throw ValidationError("detect_settling: series must be nonempty and of equal length");
    }
    std::size_t first_ok = times.size();
    for (std::size_t j = times.size(); j-- > 0;) {
        if (!(norms[j] < eps)) {
            break;
        }
        first_ok = j;
    }
    if (first_ok == times.size()) {
        return std::nullopt;
    }
    return times[first_ok];
}

struct SettlingReport {
    double eps = 0.0;
    std::optional<double> v_tilde;
    std::optional<double> x_tilde;
    std::optional<double> tracking;
};

inline SettlingReport settling_report(const Trajectory& tr, double eps) {
    SettlingReport r;
    r.eps = eps;
    if (tr.empty()) {
        return r;
    }
    r.v_tilde = detect_settling(tr.times, sup_norm_series(tr.v_tilde), eps);
    r.x_tilde = detect_settling(tr.times, sup_norm_series(tr.x_tilde), eps);
    const auto ex = sup_norm_series(tr.e_x);
    const auto ev = sup_norm_series(tr.e_v);
    std::vector<double> joint(ex.size());
    for (std::size_t k = 0; k < ex.size(); ++k) {
        joint[k] = std::max(ex[k], ev[k]);
    }
    r.tracking = detect_settling(tr.times, joint, eps);
    return r;
}

struct AbortInfo {
    double time = 0.0;
    std::string channel;
    std::string message;
};

struct RunResult {
    Trajectory trajectory;
    SettlingReport settling;
    std::optional<AbortInfo> abort;
};

/// Integrates from the initial state to the horizon. A non-finite state stops
/// the run; the samples recorded so far are kept and the abort is reported.
inline RunResult run_scenario(const Scenario& s) {
    RunResult out;
    StepGrid grid(s.sim.dt, s.sim.horizon, s.breakpoints());
    const std::size_t stride = std::max<std::size_t>(1, s.sim.record_stride);
    WorldState w = s.initial;
    w.t = 0.0;
    out.trajectory.record(s, w);
    std::size_t steps = 0;
    try {
        while (!grid.done()) {
            const double t_prev = grid.time();
            const double t_next = grid.advance();
            w = step(w, s, t_next - t_prev);
            w.t = t_next;
            ++steps;
            if (steps % stride == 0 || grid.done()) {
                out.trajectory.record(s, w);
            }
        }
    } catch (const NumericalAbort& e) {
        out.abort = AbortInfo{e.time(), e.channel(), e.what()};
    }
    out.settling = settling_report(out.trajectory, s.sim.eps_settle);
    return out;
}

/// V(z) = (1/N) sqrt(lambda_min z^T M z) for every sample of a channel.
inline std::vector<double> lyapunov_v(const std::vector<Eigen::VectorXd>& channel,
                                      const ConnectionMatrices& topo) {
    std::vector<double> out;
    out.reserve(channel.size());
    const double n = static_cast<double>(topo.size());
    for (const auto& z : channel) {
        const double quad = z.dot(topo.leader_matrix * z);
        out.push_back(std::sqrt(std::max(0.0, topo.lambda_min * quad)) / n);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Observer-only runs in two coordinate systems.

enum class ObserverCoordinates { Absolute, Error };

struct ObserverTrace {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> x_tilde;
    std::vector<Eigen::VectorXd> v_tilde;
};

/// Absolute: integrates (x0, v0, x_hat, v_hat) and reports x_hat - x0, v_hat - v0.
/// Error: integrates (x~, v~) directly with e = -M x~ and the leader input as
/// forcing. Both use the scenario's step grid and integrator.
inline ObserverTrace simulate_observer(const Scenario& s, ObserverCoordinates coords,
                                       double horizon) {
    const Eigen::Index n = static_cast<Eigen::Index>(s.topo.size());
    const bool nonauto = s.kind == ProtocolKind::NonAutonomous;
    const auto gains = [&](double t) {
        return nonauto ? std::pair{s.nonauto->position.kappa(t), s.nonauto->velocity.kappa(t)}
                       : std::pair{1.0, 1.0};
    };

    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> f;
    Eigen::VectorXd y;
    if (coords == ObserverCoordinates::Absolute) {
        y.resize(2 + 2 * n);
        y << s.initial.x0, s.initial.v0, s.initial.x_hat, s.initial.v_hat;
        f = [&s, n, nonauto](double t, const Eigen::VectorXd& z) {
            const Eigen::VectorXd x_hat = z.segment(2, n);
            const Eigen::VectorXd v_hat = z.segment(2 + n, n);
            const ObserverDerivative d =
                nonauto ? observer_rhs_nonautonomous(x_hat, v_hat, z(0), z(1), s.observer,
                                                     *s.nonauto, s.topo, t, s.sim.sign)
                        : observer_rhs_autonomous(x_hat, v_hat, z(0), z(1), s.observer, s.topo,
                                                  s.sim.sign);
            Eigen::VectorXd dz(z.size());
            dz << z(1), s.leader.u0(t), d.x_hat, d.v_hat;
            return dz;
        };
    } else {
        y.resize(2 * n);
        y << (s.initial.x_hat.array() - s.initial.x0).matrix(),
            (s.initial.v_hat.array() - s.initial.v0).matrix();
        f = [&s, n, gains](double t, const Eigen::VectorXd& z) {
            const Eigen::VectorXd e1 = -(s.topo.leader_matrix * z.head(n));
            const Eigen::VectorXd e2 = -(s.topo.leader_matrix * z.tail(n));
            const auto [gx, gv] = gains(t);
            const double u0 = s.leader.u0(t);
            Eigen::VectorXd dz(z.size());
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto iu = static_cast<std::size_t>(i);
                dz(i) = z(n + i) + s.observer.kappa_x[iu] *
                                       (gx * fixed_time_magnitude(e1(i), s.observer.core) +
                                        s.observer.zeta_x) *
                                       s.sim.sign(e1(i));
                dz(n + i) = s.observer.kappa_v[iu] *
                                (gv * fixed_time_magnitude(e2(i), s.observer.core) +
                                 s.observer.zeta_v) *
                                s.sim.sign(e2(i)) -
                            u0;
            }
            return dz;
        };
    }

    ObserverTrace trace;
    const auto record = [&](double t) {
        trace.times.push_back(t);
        if (coords == ObserverCoordinates::Absolute) {
            trace.x_tilde.emplace_back(y.segment(2, n).array() - y(0));
            trace.v_tilde.emplace_back(y.segment(2 + n, n).array() - y(1));
        } else {
            trace.x_tilde.emplace_back(y.head(n));
            trace.v_tilde.emplace_back(y.tail(n));
        }
    };
    StepGrid grid(s.sim.dt, horizon, s.breakpoints());
    const std::size_t stride = std::max<std::size_t>(1, s.sim.record_stride);
    record(0.0);
    std::size_t steps = 0;
    while (!grid.done()) {
        const double t_prev = grid.time();
        const double t_next = grid.advance();
        y = integrate_step(s.sim.integrator, f, t_prev, y, t_next - t_prev);
        ++steps;
        if (steps % stride == 0 || grid.done()) {
            record(t_next);
        }
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Scalar fixed-time system dx/dt = -(alpha|x|^p + beta|x|^q)^k sign(x)

struct ScalarRunOptions {
    /// Step floor once |x| <= 1.
    double near_dt = 1e-6;
    /// Far from the origin the step is this fraction of |x| / |dx/dt|.
    double far_fraction = 1e-2;
    double max_dt = 1e-2;
    /// |x| below which the state counts as settled.
    double eps = 1e-6;
    double horizon = 0.0;  // 0: twice the settling bound plus one
};

struct ScalarRunResult {
    std::optional<double> settling_time;
    std::size_t steps = 0;
};

/// RK4 on a state-dependent grid: coarse far from the origin, near_dt close
/// to it. Settling is the first step end at which |x| < eps or x changed sign.
inline ScalarRunResult simulate_scalar_fixed_time(const FixedTimeParams& rho, double x0,
                                                  const ScalarRunOptions& opts = {}) {
    rho.validate();
    const auto f = [&rho](double, double x) { return -fixed_time_magnitude(x, rho) * sign(x); };
    const double horizon =
        opts.horizon > 0.0 ? opts.horizon : 2.0 * settling_bound(rho) + 1.0;
    ScalarRunResult r;
    double t = 0.0;
    double x = x0;
    if (std::abs(x) < opts.eps) {
        r.settling_time = 0.0;
        return r;
    }
    while (t < horizon) {
        const double speed = std::abs(f(t, x));
        double h = opts.far_fraction * std::abs(x) / speed;
        if (std::abs(x) <= 1.0) {
            h = std::max(h, opts.near_dt);
        }
        h = std::min(h, opts.max_dt);
        const double next = rk4_step(f, t, x, h);
        t += h;
        ++r.steps;
        if (std::abs(next) < opts.eps || sign(next) != sign(x)) {
            r.settling_time = t;
            return r;
        }
        x = next;
    }
    return r;
}

}  // namespace ftcons
