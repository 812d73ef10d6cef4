#pragma once

// Scenario files: INI text with one section per component.
//
//   [scenario]      name, protocol (autonomous | nonautonomous),
//                   controller_start (immediate | after_observer)
//   [topology]      followers, edges ("1-2:1, 2-3:0.5", 1-based), leader_links
//   [leader]        u0_kind (constant | sin | cos), u0_amplitude, u0_frequency,
//                   u0_phase, u0_max, x0, v0
//   [disturbance]   kind, amplitude, frequency, phase, phase_step, bound;
//                   follower i gets phase + (i - 1) * phase_step
//   [agents]        x, v, x_hat, v_hat (comma-separated, one per follower)
//   [observer]      alpha, beta, p, q, k, tc1, tc2, zeta_x,
//                   zeta_v (number | auto), kappa_x, kappa_v (auto | one value | list)
//   [controller]    alpha1, beta1, alpha2, beta2, p, q, k, tc1, tc2, zeta (auto | list)
//   [nonautonomous] rate1, rate2, rate3, t_alpha, t_beta, t_gamma, t0
//   [sim]           dt, horizon, integrator (rk4 | euler), sign_width,
//                   record_stride, eps_settle
//   [reference]     optional externally reported values: t1, t2, t3,
//                   slack_v, slack_x, slack_e
//
// Missing sections and keys take the defaults of the corresponding structs,
// except [topology] and [agents], which are required.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ftcons/errors.hpp"
#include "ftcons/graph_topology.hpp"
#include "ftcons/protocols.hpp"
#include "ftcons/sim_engine.hpp"

namespace ftcons {

/// Identical signal shape for every follower with a per-index phase offset.
struct DisturbanceFamily {
    Signal signal;
    double phase_step = 0.0;
    double bound = 0.0;

    [[nodiscard]] DisturbanceModel expand(std::size_t n) const {
        DisturbanceModel d;
        for (std::size_t i = 0; i < n; ++i) {
            Signal s = signal;
            s.phase += static_cast<double>(i) * phase_step;
            d.delta.push_back(s);
            d.bounds.push_back(bound);
        }
        return d;
    }

    friend bool operator==(const DisturbanceFamily&, const DisturbanceFamily&) = default;
};

struct ObserverConfig {
    FixedTimeParams core{1.0, 2.0, 1.5, 3.0, 0.5};
    double tc1 = 0.1;
    double tc2 = 0.9;
    double zeta_x = 0.0;
    std::optional<double> zeta_v;                 // nullopt: u0_max / kappa_v
    std::optional<std::vector<double>> kappa_x;   // nullopt: minimal compliant
    std::optional<std::vector<double>> kappa_v;

    friend bool operator==(const ObserverConfig&, const ObserverConfig&) = default;
};

struct ControllerConfig {
    ControllerGains gains;
    std::optional<std::vector<double>> zeta;  // nullopt: u0_max + delta_i

    friend bool operator==(const ControllerConfig&, const ControllerConfig&) = default;
};

struct InitialConditions {
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> x_hat;
    std::vector<double> v_hat;

    friend bool operator==(const InitialConditions&, const InitialConditions&) = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    ProtocolKind protocol = ProtocolKind::Autonomous;
    ControllerStart controller_start = ControllerStart::Immediate;
    TopologySpec topology;
    LeaderModel leader;
    DisturbanceFamily disturbance;
    InitialConditions agents;
    ObserverConfig observer;
    ControllerConfig controller;
    NonAutoSettings nonauto;
    SimConfig sim;
    std::map<std::string, double> reference;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

using boost::property_tree::ptree;

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] inline void config_fail(const std::string& section, const std::string& key,
                                     const std::string& what) {
    throw ConfigError("config: [" + section + "] " + key + ": " + what);
}

inline double parse_number(const std::string& text, const std::string& section,
                           const std::string& key) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
        config_fail(section, key, "expected a finite number, got '" + t + "'");
    }
    return value;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& section,
                                      const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(item, section, key));
    }
    if (out.empty()) {
        config_fail(section, key, "expected a comma-separated list of numbers");
    }
    return out;
}

class Reader {
public:
    explicit Reader(const ptree& root) : root_(root) {}

    [[nodiscard]] bool has_section(const std::string& section) const {
        return root_.get_child_optional(section).has_value();
    }

    [[nodiscard]] std::optional<std::string> raw(const std::string& section,
                                                 const std::string& key) const {
        const auto child = root_.get_child_optional(section);
        if (!child) {
            return std::nullopt;
        }
        const auto value = child->get_optional<std::string>(ptree::path_type(key, '\0'));
        if (!value) {
            return std::nullopt;
        }
        return trim(*value);
    }

    [[nodiscard]] std::string required(const std::string& section, const std::string& key) const {
        auto value = raw(section, key);
        if (!value) {
            config_fail(section, key, "missing required key");
        }
        return *value;
    }

    void number(const std::string& section, const std::string& key, double& out) const {
        if (const auto value = raw(section, key)) {
            out = parse_number(*value, section, key);
        }
    }

    [[nodiscard]] std::vector<double> list(const std::string& section, const std::string& key,
                                           std::size_t n) const {
        const auto values = parse_list(required(section, key), section, key);
        if (values.size() != n) {
            config_fail(section, key,
                        "expected " + std::to_string(n) + " values, got " +
                            std::to_string(values.size()));
        }
        return values;
    }

    /// auto | one value (broadcast) | one value per follower
    [[nodiscard]] std::optional<std::vector<double>> per_agent(const std::string& section,
                                                               const std::string& key,
                                                               std::size_t n) const {
        const auto value = raw(section, key);
        if (!value || lower(*value) == "auto") {
            return std::nullopt;
        }
        auto values = parse_list(*value, section, key);
        if (values.size() == 1) {
            values.assign(n, values.front());
        }
        if (values.size() != n) {
            config_fail(section, key,
                        "expected 1 or " + std::to_string(n) + " values, got " +
                            std::to_string(values.size()));
        }
        return values;
    }

private:
    const ptree& root_;
};

inline SignalKind parse_signal_kind(const std::string& text, const std::string& section,
                                    const std::string& key) {
    const std::string t = lower(text);
    if (t == "constant") return SignalKind::Constant;
    if (t == "sin") return SignalKind::Sine;
    if (t == "cos") return SignalKind::Cosine;
    config_fail(section, key, "expected constant, sin or cos, got '" + text + "'");
}

inline const char* signal_kind_name(SignalKind kind) {
    switch (kind) {
        case SignalKind::Constant:
            return "constant";
        case SignalKind::Sine:
            return "sin";
        case SignalKind::Cosine:
            return "cos";
    }
    return "constant";
}

inline std::vector<Edge> parse_edges(const std::string& text, std::size_t n) {
    std::vector<Edge> edges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string e = trim(item);
        if (e.empty()) {
            continue;
        }
        const auto dash = e.find('-');
        const auto colon = e.find(':');
        if (dash == std::string::npos || dash == 0) {
            config_fail("topology", "edges", "expected i-j[:weight], got '" + e + "'");
        }
        const std::string a = e.substr(0, dash);
        const std::string b =
            colon == std::string::npos ? e.substr(dash + 1) : e.substr(dash + 1, colon - dash - 1);
        const double i = parse_number(a, "topology", "edges");
        const double j = parse_number(b, "topology", "edges");
        const double w =
            colon == std::string::npos ? 1.0 : parse_number(e.substr(colon + 1), "topology", "edges");
        if (i != std::floor(i) || j != std::floor(j) || i < 1 || j < 1 ||
            i > static_cast<double>(n) || j > static_cast<double>(n)) {
            config_fail("topology", "edges",
                        "follower indices must be integers in 1.." + std::to_string(n) +
                            ", got '" + e + "'");
        }
        edges.push_back({static_cast<std::size_t>(i) - 1, static_cast<std::size_t>(j) - 1, w});
    }
    return edges;
}

}  // namespace detail

inline ScenarioConfig parse_scenario(std::istream& in) {
    detail::ptree root;
    try {
        boost::property_tree::ini_parser::read_ini(in, root);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config: parse error at line " + std::to_string(e.line()) + ": " +
                          e.message());
    }
    const detail::Reader r(root);
    ScenarioConfig c;

    if (const auto v = r.raw("scenario", "name")) {
        c.name = *v;
    }
    if (const auto v = r.raw("scenario", "protocol")) {
        const std::string p = detail::lower(*v);
        if (p == "autonomous") {
            c.protocol = ProtocolKind::Autonomous;
        } else if (p == "nonautonomous") {
            c.protocol = ProtocolKind::NonAutonomous;
        } else {
            detail::config_fail("scenario", "protocol", "expected autonomous or nonautonomous");
        }
    }
    if (const auto v = r.raw("scenario", "controller_start")) {
        const std::string s = detail::lower(*v);
        if (s == "immediate") {
            c.controller_start = ControllerStart::Immediate;
        } else if (s == "after_observer") {
            c.controller_start = ControllerStart::AfterObserver;
        } else {
            detail::config_fail("scenario", "controller_start",
                                "expected immediate or after_observer");
        }
    }

    double followers = 0.0;
    followers = detail::parse_number(r.required("topology", "followers"), "topology", "followers");
    if (followers < 1 || followers != std::floor(followers)) {
        detail::config_fail("topology", "followers", "expected a positive integer");
    }
    const auto n = static_cast<std::size_t>(followers);
    c.topology.n_followers = n;
    if (const auto v = r.raw("topology", "edges")) {
        c.topology.edges = detail::parse_edges(*v, n);
    }
    c.topology.leader_links = r.list("topology", "leader_links", n);

    if (const auto v = r.raw("leader", "u0_kind")) {
        c.leader.u0.kind = detail::parse_signal_kind(*v, "leader", "u0_kind");
    }
    r.number("leader", "u0_amplitude", c.leader.u0.amplitude);
    r.number("leader", "u0_frequency", c.leader.u0.frequency);
    r.number("leader", "u0_phase", c.leader.u0.phase);
    c.leader.u0_max = c.leader.u0.bound();
    r.number("leader", "u0_max", c.leader.u0_max);
    r.number("leader", "x0", c.leader.x0_init);
    r.number("leader", "v0", c.leader.v0_init);

    if (const auto v = r.raw("disturbance", "kind")) {
        c.disturbance.signal.kind = detail::parse_signal_kind(*v, "disturbance", "kind");
    }
    r.number("disturbance", "amplitude", c.disturbance.signal.amplitude);
    r.number("disturbance", "frequency", c.disturbance.signal.frequency);
    r.number("disturbance", "phase", c.disturbance.signal.phase);
    r.number("disturbance", "phase_step", c.disturbance.phase_step);
    c.disturbance.bound = c.disturbance.signal.bound();
    r.number("disturbance", "bound", c.disturbance.bound);

    c.agents.x = r.list("agents", "x", n);
    c.agents.v = r.list("agents", "v", n);
    c.agents.x_hat = r.list("agents", "x_hat", n);
    c.agents.v_hat = r.list("agents", "v_hat", n);

    ObserverConfig& o = c.observer;
    r.number("observer", "alpha", o.core.alpha);
    r.number("observer", "beta", o.core.beta);
    r.number("observer", "p", o.core.p);
    r.number("observer", "q", o.core.q);
    r.number("observer", "k", o.core.k);
    r.number("observer", "tc1", o.tc1);
    r.number("observer", "tc2", o.tc2);
    r.number("observer", "zeta_x", o.zeta_x);
    if (const auto v = r.raw("observer", "zeta_v"); v && detail::lower(*v) != "auto") {
        o.zeta_v = detail::parse_number(*v, "observer", "zeta_v");
    }
    o.kappa_x = r.per_agent("observer", "kappa_x", n);
    o.kappa_v = r.per_agent("observer", "kappa_v", n);

    ControllerGains& g = c.controller.gains;
    r.number("controller", "alpha1", g.alpha1);
    r.number("controller", "beta1", g.beta1);
    r.number("controller", "alpha2", g.alpha2);
    r.number("controller", "beta2", g.beta2);
    r.number("controller", "p", g.p);
    r.number("controller", "q", g.q);
    r.number("controller", "k", g.k);
    r.number("controller", "tc1", g.tc1);
    r.number("controller", "tc2", g.tc2);
    c.controller.zeta = r.per_agent("controller", "zeta", n);

    NonAutoSettings& na = c.nonauto;
    r.number("nonautonomous", "rate1", na.rate1);
    r.number("nonautonomous", "rate2", na.rate2);
    r.number("nonautonomous", "rate3", na.rate3);
    r.number("nonautonomous", "t_alpha", na.t_alpha);
    r.number("nonautonomous", "t_beta", na.t_beta);
    r.number("nonautonomous", "t_gamma", na.t_gamma);
    r.number("nonautonomous", "t0", na.t0);

    SimConfig& s = c.sim;
    r.number("sim", "dt", s.dt);
    r.number("sim", "horizon", s.horizon);
    if (const auto v = r.raw("sim", "integrator")) {
        const std::string m = detail::lower(*v);
        if (m == "rk4") {
            s.integrator = Integrator::RK4;
        } else if (m == "euler") {
            s.integrator = Integrator::Euler;
        } else {
            detail::config_fail("sim", "integrator", "expected rk4 or euler");
        }
    }
    r.number("sim", "sign_width", s.sign.width);
    if (const auto v = r.raw("sim", "record_stride")) {
        const double stride = detail::parse_number(*v, "sim", "record_stride");
        if (stride < 1 || stride != std::floor(stride)) {
            detail::config_fail("sim", "record_stride", "expected an integer >= 1");
        }
        s.record_stride = static_cast<std::size_t>(stride);
    }
    r.number("sim", "eps_settle", s.eps_settle);

    if (const auto ref = root.get_child_optional("reference")) {
        for (const auto& [key, node] : *ref) {
            c.reference[key] = detail::parse_number(node.data(), "reference", key);
        }
    }
    return c;
}

/// Writes a file that parse_scenario reads back into an equal config.
inline void save_scenario(std::ostream& os, const ScenarioConfig& c) {
    const auto list = [&os](const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            os << (i == 0 ? "" : ", ") << values[i];
        }
        os << '\n';
    };
    const auto optional_list = [&](const std::optional<std::vector<double>>& values) {
        if (values) {
            list(*values);
        } else {
            os << "auto\n";
        }
    };
    os << std::setprecision(17);
    os << "[scenario]\n"
       << "name = " << c.name << '\n'
       << "protocol = "
       << (c.protocol == ProtocolKind::Autonomous ? "autonomous" : "nonautonomous") << '\n'
       << "controller_start = "
       << (c.controller_start == ControllerStart::Immediate ? "immediate" : "after_observer")
       << "\n\n";

    os << "[topology]\nfollowers = " << c.topology.n_followers << "\nedges = ";
    for (std::size_t k = 0; k < c.topology.edges.size(); ++k) {
        const Edge& e = c.topology.edges[k];
        os << (k == 0 ? "" : ", ") << e.i + 1 << '-' << e.j + 1 << ':' << e.weight;
    }
    os << "\nleader_links = ";
    list(c.topology.leader_links);

    os << "\n[leader]\n"
       << "u0_kind = " << detail::signal_kind_name(c.leader.u0.kind) << '\n'
       << "u0_amplitude = " << c.leader.u0.amplitude << '\n'
       << "u0_frequency = " << c.leader.u0.frequency << '\n'
       << "u0_phase = " << c.leader.u0.phase << '\n'
       << "u0_max = " << c.leader.u0_max << '\n'
       << "x0 = " << c.leader.x0_init << '\n'
       << "v0 = " << c.leader.v0_init << "\n\n";

    const DisturbanceFamily& d = c.disturbance;
    os << "[disturbance]\n"
       << "kind = " << detail::signal_kind_name(d.signal.kind) << '\n'
       << "amplitude = " << d.signal.amplitude << '\n'
       << "frequency = " << d.signal.frequency << '\n'
       << "phase = " << d.signal.phase << '\n'
       << "phase_step = " << d.phase_step << '\n'
       << "bound = " << d.bound << "\n\n";

    os << "[agents]\nx = ";
    list(c.agents.x);
    os << "v = ";
    list(c.agents.v);
    os << "x_hat = ";
    list(c.agents.x_hat);
    os << "v_hat = ";
    list(c.agents.v_hat);

    const ObserverConfig& o = c.observer;
    os << "\n[observer]\n"
       << "alpha = " << o.core.alpha << "\nbeta = " << o.core.beta << "\np = " << o.core.p
       << "\nq = " << o.core.q << "\nk = " << o.core.k << "\ntc1 = " << o.tc1
       << "\ntc2 = " << o.tc2 << "\nzeta_x = " << o.zeta_x << "\nzeta_v = ";
    if (o.zeta_v) {
        os << *o.zeta_v << '\n';
    } else {
        os << "auto\n";
    }
    os << "kappa_x = ";
    optional_list(o.kappa_x);
    os << "kappa_v = ";
    optional_list(o.kappa_v);

    const ControllerGains& g = c.controller.gains;
    os << "\n[controller]\n"
       << "alpha1 = " << g.alpha1 << "\nbeta1 = " << g.beta1 << "\nalpha2 = " << g.alpha2
       << "\nbeta2 = " << g.beta2 << "\np = " << g.p << "\nq = " << g.q << "\nk = " << g.k
       << "\ntc1 = " << g.tc1 << "\ntc2 = " << g.tc2 << "\nzeta = ";
    optional_list(c.controller.zeta);

    const NonAutoSettings& na = c.nonauto;
    os << "\n[nonautonomous]\n"
       << "rate1 = " << na.rate1 << "\nrate2 = " << na.rate2 << "\nrate3 = " << na.rate3
       << "\nt_alpha = " << na.t_alpha << "\nt_beta = " << na.t_beta
       << "\nt_gamma = " << na.t_gamma << "\nt0 = " << na.t0 << "\n\n";

    os << "[sim]\n"
       << "dt = " << c.sim.dt << "\nhorizon = " << c.sim.horizon << "\nintegrator = "
       << (c.sim.integrator == Integrator::RK4 ? "rk4" : "euler")
       << "\nsign_width = " << c.sim.sign.width << "\nrecord_stride = " << c.sim.record_stride
       << "\neps_settle = " << c.sim.eps_settle << '\n';

    if (!c.reference.empty()) {
        os << "\n[reference]\n";
        for (const auto& [key, value] : c.reference) {
            os << key << " = " << value << '\n';
        }
    }
}

inline void save_scenario(const std::filesystem::path& path, const ScenarioConfig& c) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("config: cannot write " + path.string());
    }
    save_scenario(out, c);
}

/// Observer gains with every "auto" entry resolved to the minimal compliant value.
inline ObserverParams resolve_observer(const ObserverConfig& o, const ConnectionMatrices& topo,
                                       const LeaderModel& leader) {
    ObserverParams base;
    base.core = o.core;
    base.tc1 = o.tc1;
    base.tc2 = o.tc2;
    base.zeta_x = o.zeta_x;
    const ObserverParams minimal = with_minimal_observer_gains(base, topo, leader);
    ObserverParams p = base;
    p.kappa_x = o.kappa_x ? *o.kappa_x : minimal.kappa_x;
    p.kappa_v = o.kappa_v ? *o.kappa_v : minimal.kappa_v;
    if (o.zeta_v) {
        p.zeta_v = *o.zeta_v;
    } else {
        const double kv = *std::min_element(p.kappa_v.begin(), p.kappa_v.end());
        p.zeta_v = leader.u0_max / kv;
    }
    return p;
}

inline std::vector<double> resolve_zeta(const ControllerConfig& c, const LeaderModel& leader,
                                        const DisturbanceModel& d) {
    if (c.zeta) {
        return *c.zeta;
    }
    std::vector<double> z;
    for (double bound : d.bounds) {
        z.push_back(leader.u0_max + bound);
    }
    return z;
}

namespace detail {

template <class F>
auto in_section(const char* section, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("config: [") + section + "] " + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: [") + section + "] " + e.what());
    }
}

}  // namespace detail

/// Validates every section and assembles the runtime scenario.
inline Scenario build_scenario(const ScenarioConfig& c) {
    Scenario s;
    const std::size_t n = c.topology.n_followers;
    s.topo = detail::in_section("topology", [&] { return build_matrices(c.topology); });
    s.leader = c.leader;
    s.leader.u0_max = c.leader.u0_max;
    detail::in_section("leader", [&] {
        s.leader.validate();
        return 0;
    });
    s.disturbance = c.disturbance.expand(n);
    detail::in_section("disturbance", [&] {
        s.disturbance.validate(n);
        return 0;
    });
    s.observer = detail::in_section("observer", [&] {
        c.observer.core.validate();
        ObserverParams p = resolve_observer(c.observer, s.topo, s.leader);
        p.validate(n);
        return p;
    });
    s.controller = detail::in_section("controller", [&] {
        const ControllerGains& g = c.controller.gains;
        FixedTimeParams{g.alpha2, g.beta2, g.p, g.q, g.k}.validate();
        std::vector<double> zeta = resolve_zeta(c.controller, s.leader, s.disturbance);
        if (zeta.size() != n) {
            throw ValidationError("zeta: one value per follower required");
        }
        return ControllerParams(g, std::move(zeta));
    });
    s.kind = c.protocol;
    s.start = c.controller_start;
    if (c.protocol == ProtocolKind::NonAutonomous) {
        s.nonauto = detail::in_section("nonautonomous", [&] {
            return make_nonauto_params(c.nonauto, s.observer, s.controller, c.controller_start);
        });
    }
    s.sim = c.sim;
    if (!(c.sim.dt > 0.0) || !(c.sim.horizon > 0.0) || !(c.sim.eps_settle > 0.0) ||
        c.sim.sign.width < 0.0) {
        throw ConfigError("config: [sim] dt, horizon and eps_settle must be positive, "
                          "sign_width >= 0");
    }
    const Ubsts u = ubsts(s);
    if (!(c.sim.horizon > std::max({u.velocity, u.observer, u.tracking}))) {
        throw ConfigError("config: [sim] horizon must exceed every settling-time bound (" +
                          std::to_string(std::max({u.velocity, u.observer, u.tracking})) + ")");
    }

    const auto vec = [](const std::vector<double>& v) {
        return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    };
    s.initial.t = 0.0;
    s.initial.x0 = c.leader.x0_init;
    s.initial.v0 = c.leader.v0_init;
    s.initial.x = vec(c.agents.x);
    s.initial.v = vec(c.agents.v);
    s.initial.x_hat = vec(c.agents.x_hat);
    s.initial.v_hat = vec(c.agents.v_hat);
    return s;
}

/// Settling-time condition violations of the resolved gains; empty when compliant.
inline std::vector<std::string> gain_warnings(const Scenario& s) {
    std::vector<std::string> out = validate_observer_gains(s.observer, s.topo, s.leader).violations();
    const auto ctrl = validate_controller_gains(s.controller, s.leader, s.disturbance,
                                                s.controller_start_time());
    for (auto& v : ctrl.violations()) {
        out.push_back(std::move(v));
    }
    return out;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path, bool strict = false) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path.string());
    }
    ScenarioConfig c = parse_scenario(in);
    const Scenario s = build_scenario(c);
    if (strict) {
        const auto warnings = gain_warnings(s);
        if (!warnings.empty()) {
            std::string msg = "config: gains violate the settling-time conditions (strict):";
            for (const auto& w : warnings) {
                msg += "\n  " + w;
            }
            throw ConfigError(msg);
        }
    }
    return c;
}

}  // namespace ftcons
