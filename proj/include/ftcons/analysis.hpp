#pragma once

// Run reports, slack tables, protocol comparison, parameter sweeps and file
// emission (trajectory CSV plus matplotlib scripts).

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ftcons/errors.hpp"
#include "ftcons/protocols.hpp"
#include "ftcons/scenario.hpp"
#include "ftcons/sim_engine.hpp"

namespace ftcons {

/// UBST minus detected settling time for the three channels; nullopt where
/// the channel never settled.
struct SlackColumn {
    std::string label;
    std::optional<double> velocity;  // s(v~) = Tc1 - T1
    std::optional<double> observer;  // s(x~) = To - T2
    std::optional<double> tracking;  // s(e~) = That - T3

    [[nodiscard]] std::array<std::optional<double>, 3> rows() const {
        return {velocity, observer, tracking};
    }
};

struct SlackTable {
    std::vector<SlackColumn> columns;

    static constexpr std::array<const char*, 3> row_names{"s(v~)", "s(x~)", "s(e~)"};

    /// True iff column `a` has strictly smaller slack than column `b` in every
    /// row and all six entries exist.
    [[nodiscard]] bool strictly_smaller(std::size_t a, std::size_t b) const {
        const auto ra = columns.at(a).rows();
        const auto rb = columns.at(b).rows();
        for (std::size_t r = 0; r < 3; ++r) {
            if (!ra[r] || !rb[r] || !(*ra[r] < *rb[r])) {
                return false;
            }
        }
        return true;
    }
};

struct RunReport {
    std::string name;
    ProtocolKind kind = ProtocolKind::Autonomous;
    double eps_settle = 0.0;
    std::optional<double> t1;  // v~ settled
    std::optional<double> t2;  // x~ settled
    std::optional<double> t3;  // (e_x, e_v) settled
    Ubsts ubst;
    SlackColumn slack;
    ObserverGainReport observer_gains;
    ControllerGainReport controller_gains;
    std::optional<AbortInfo> abort;
    std::map<std::string, double> reference;
    std::vector<std::filesystem::path> files;
};

inline std::optional<double> slack_of(double ubst, const std::optional<double>& settled) {
    if (!settled) {
        return std::nullopt;
    }
    return ubst - *settled;
}

/// UBSTs come from the scenario parameters, never from the run.
inline RunReport make_run_report(const std::string& name, const Scenario& s,
                                 const RunResult& run) {
    RunReport r;
    r.name = name;
    r.kind = s.kind;
    r.eps_settle = run.settling.eps;
    r.t1 = run.settling.v_tilde;
    r.t2 = run.settling.x_tilde;
    r.t3 = run.settling.tracking;
    r.ubst = ubsts(s);
    r.slack = {name, slack_of(r.ubst.velocity, r.t1), slack_of(r.ubst.observer, r.t2),
               slack_of(r.ubst.tracking, r.t3)};
    r.observer_gains = validate_observer_gains(s.observer, s.topo, s.leader);
    r.controller_gains =
        validate_controller_gains(s.controller, s.leader, s.disturbance, s.controller_start_time());
    r.controller_gains.tracking_ubst = r.ubst.tracking;
    r.abort = run.abort;
    return r;
}

/// Settled channels whose detected time exceeds the configured UBST.
inline std::vector<std::string> ubst_violations(const RunReport& r) {
    std::vector<std::string> out;
    const auto check = [&](const char* channel, const std::optional<double>& t, double ubst) {
        std::ostringstream os;
        os << std::setprecision(6);
        if (!t) {
            os << r.name << ": " << channel << " did not settle below " << r.eps_settle
               << " (UBST " << ubst << ")";
            out.push_back(os.str());
        } else if (*t > ubst) {
            os << r.name << ": " << channel << " settled at " << *t << " > UBST " << ubst;
            out.push_back(os.str());
        }
    };
    check("v~", r.t1, r.ubst.velocity);
    check("x~", r.t2, r.ubst.observer);
    check("(e_x, e_v)", r.t3, r.ubst.tracking);
    return out;
}

/// Where a config carries reported settling times and slacks, their sum is
/// the UBST those reports imply; flag any that disagree with the formula.
inline std::vector<std::string> reference_inconsistencies(const RunReport& r) {
    std::vector<std::string> out;
    const std::array<std::tuple<const char*, const char*, const char*, double>, 3> rows{{
        {"t1", "slack_v", "v~", r.ubst.velocity},
        {"t2", "slack_x", "x~", r.ubst.observer},
        {"t3", "slack_e", "(e_x, e_v)", r.ubst.tracking},
    }};
    for (const auto& [tk, sk, channel, ubst] : rows) {
        const auto t = r.reference.find(tk);
        const auto s = r.reference.find(sk);
        if (t == r.reference.end() || s == r.reference.end()) {
            continue;
        }
        const double implied = t->second + s->second;
        if (std::abs(implied - ubst) > 1e-3 * std::max(1.0, ubst)) {
            std::ostringstream os;
            os << std::setprecision(6) << r.name << ": reference values for " << channel
               << " imply UBST " << implied << " (" << tk << " = " << t->second << ", " << sk
               << " = " << s->second << "), the configured parameters give " << ubst;
            out.push_back(os.str());
        }
    }
    return out;
}

/// Field-by-field differences between the parts two compared configs must share.
inline std::vector<std::string> shared_scenario_differences(const ScenarioConfig& a,
                                                            const ScenarioConfig& b) {
    std::vector<std::string> out;
    const auto diff = [&out](bool same, const char* field) {
        if (!same) {
            out.emplace_back(field);
        }
    };
    diff(a.topology.n_followers == b.topology.n_followers, "topology.followers");
    diff(a.topology.edges == b.topology.edges, "topology.edges");
    diff(a.topology.leader_links == b.topology.leader_links, "topology.leader_links");
    diff(a.leader.u0 == b.leader.u0, "leader.u0");
    diff(a.leader.u0_max == b.leader.u0_max, "leader.u0_max");
    diff(a.leader.x0_init == b.leader.x0_init, "leader.x0");
    diff(a.leader.v0_init == b.leader.v0_init, "leader.v0");
    diff(a.disturbance.signal == b.disturbance.signal, "disturbance.signal");
    diff(a.disturbance.phase_step == b.disturbance.phase_step, "disturbance.phase_step");
    diff(a.disturbance.bound == b.disturbance.bound, "disturbance.bound");
    diff(a.agents.x == b.agents.x, "agents.x");
    diff(a.agents.v == b.agents.v, "agents.v");
    diff(a.agents.x_hat == b.agents.x_hat, "agents.x_hat");
    diff(a.agents.v_hat == b.agents.v_hat, "agents.v_hat");
    return out;
}

struct Comparison {
    RunReport first;
    RunReport second;
    SlackTable table;
    std::vector<std::string> flags;
};

inline Comparison compare(const ScenarioConfig& a, const ScenarioConfig& b) {
    const auto differences = shared_scenario_differences(a, b);
    if (!differences.empty()) {
        std::string msg = "compare: scenarios differ in";
        for (const auto& d : differences) {
            msg += "\n  " + d;
        }
        throw ConfigError(msg);
    }
    const Scenario sa = build_scenario(a);
    const Scenario sb = build_scenario(b);
    auto fa = std::async(std::launch::async, [&sa] { return run_scenario(sa); });
    auto fb = std::async(std::launch::async, [&sb] { return run_scenario(sb); });
    const RunResult ra = fa.get();
    const RunResult rb = fb.get();

    Comparison c;
    c.first = make_run_report(a.name, sa, ra);
    c.first.reference = a.reference;
    c.second = make_run_report(b.name, sb, rb);
    c.second.reference = b.reference;
    c.table.columns = {c.first.slack, c.second.slack};
    for (const RunReport* r : {&c.first, &c.second}) {
        for (auto& f : ubst_violations(*r)) {
            c.flags.push_back(std::move(f));
        }
        for (auto& f : reference_inconsistencies(*r)) {
            c.flags.push_back(std::move(f));
        }
        if (r->abort) {
            c.flags.push_back(r->name + ": run aborted: " + r->abort->message);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Text output

namespace detail {

inline std::string fmt(const std::optional<double>& v, int precision = 6) {
    if (!v) {
        return "not found";
    }
    std::ostringstream os;
    os << std::setprecision(precision) << *v;
    return os.str();
}

}  // namespace detail

inline void print_run_report(std::ostream& os, const RunReport& r) {
    os << "scenario " << r.name << " ("
       << (r.kind == ProtocolKind::Autonomous ? "autonomous" : "non-autonomous")
       << "), eps_settle = " << r.eps_settle << '\n';
    os << std::left << std::setw(12) << "channel" << std::setw(14) << "settled" << std::setw(14)
       << "UBST" << "slack\n";
    const auto row = [&](const char* ch, const std::optional<double>& t, double ubst,
                         const std::optional<double>& slack) {
        os << std::setw(12) << ch << std::setw(14) << detail::fmt(t) << std::setw(14)
           << detail::fmt(ubst) << detail::fmt(slack) << '\n';
    };
    row("v~", r.t1, r.ubst.velocity, r.slack.velocity);
    row("x~", r.t2, r.ubst.observer, r.slack.observer);
    row("e", r.t3, r.ubst.tracking, r.slack.tracking);
    os << std::right;
    for (const auto& v : r.observer_gains.violations()) {
        os << "warning: " << v << '\n';
    }
    for (const auto& v : r.controller_gains.violations()) {
        os << "warning: " << v << '\n';
    }
    if (r.abort) {
        os << "aborted: " << r.abort->message << '\n';
    }
}

inline void print_slack_table(std::ostream& os, const SlackTable& t) {
    os << std::left << std::setw(10) << "slack";
    for (const auto& c : t.columns) {
        os << std::setw(24) << c.label;
    }
    os << '\n';
    for (std::size_t r = 0; r < 3; ++r) {
        os << std::setw(10) << SlackTable::row_names[r];
        for (const auto& c : t.columns) {
            os << std::setw(24) << detail::fmt(c.rows()[r]);
        }
        os << '\n';
    }
    os << std::right;
}

/// Gain conditions as aligned text followed by key=value lines.
inline void format_gains_report(std::ostream& os, const Scenario& s) {
    const ObserverGainReport o = validate_observer_gains(s.observer, s.topo, s.leader);
    const ControllerGainReport c =
        validate_controller_gains(s.controller, s.leader, s.disturbance, s.controller_start_time());
    const Ubsts u = ubsts(s);
    const auto line = [&os](const std::string& label, double value, const std::string& note = "") {
        os << "  " << std::left << std::setw(26) << label << std::right << std::setw(24)
           << std::setprecision(10) << value << (note.empty() ? "" : "  " + note) << '\n';
    };
    const auto status = [](bool ok) { return std::string(ok ? "ok" : "VIOLATED"); };

    os << "topology\n";
    line("followers N", static_cast<double>(o.followers));
    line("lambda_min(M)", o.lambda_min);
    os << "observer\n";
    line("gamma(rho)", o.gamma);
    line("kappa_x (min)", o.kappa_x, status(o.kappa_x_ok));
    line("kappa_x* = N g/(l Tc2)", o.kappa_x_star);
    line("kappa_v (min)", o.kappa_v, status(o.kappa_v_ok));
    line("kappa_v* = N g/(l Tc1)", o.kappa_v_star);
    line("zeta_v", o.zeta_v, status(o.zeta_v_ok));
    line("zeta_v* = u0_max/kappa_v", o.zeta_v_star);
    os << "controller\n";
    line("gamma1", c.gamma1);
    line("gamma2", c.gamma2);
    for (std::size_t i = 0; i < c.zeta.size(); ++i) {
        line("zeta_" + std::to_string(i + 1), c.zeta[i],
             status(c.zeta_ok[i]) + " (min " + detail::fmt(c.zeta_min[i]) + ")");
    }
    os << "settling-time bounds\n";
    line("velocity", u.velocity);
    line("observer", u.observer);
    line("tracking", u.tracking);

    os << std::setprecision(17);
    os << "\nn_followers=" << o.followers << '\n'
       << "lambda_min=" << o.lambda_min << '\n'
       << "gamma=" << o.gamma << '\n'
       << "kappa_x=" << o.kappa_x << '\n'
       << "kappa_v=" << o.kappa_v << '\n'
       << "zeta_v=" << o.zeta_v << '\n'
       << "kappa_x_star=" << o.kappa_x_star << '\n'
       << "kappa_v_star=" << o.kappa_v_star << '\n'
       << "zeta_v_star=" << o.zeta_v_star << '\n'
       << "gamma1=" << c.gamma1 << '\n'
       << "gamma2=" << c.gamma2 << '\n';
    for (std::size_t i = 0; i < c.zeta.size(); ++i) {
        os << "zeta_min_" << (i + 1) << '=' << c.zeta_min[i] << '\n';
    }
    os << "ubst_velocity=" << u.velocity << '\n'
       << "ubst_observer=" << u.observer << '\n'
       << "ubst_tracking=" << u.tracking << '\n'
       << "observer_ok=" << (o.ok() ? "true" : "false") << '\n'
       << "controller_ok=" << (c.ok() ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------------------
// Files

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    if (tr.empty()) {
        throw ValidationError("trajectory is empty");
    }
    const Eigen::Index n = tr.states.front().x.size();
    os << "t,x0,v0";
    for (Eigen::Index i = 1; i <= n; ++i) {
        os << ",x_" << i << ",v_" << i << ",xhat_" << i << ",vhat_" << i << ",xtilde_" << i
           << ",vtilde_" << i << ",ex_" << i << ",ev_" << i << ",sigma_" << i;
    }
    os << '\n' << std::setprecision(17);
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const WorldState& w = tr.states[k];
        os << tr.times[k] << ',' << w.x0 << ',' << w.v0;
        for (Eigen::Index i = 0; i < n; ++i) {
            os << ',' << w.x(i) << ',' << w.v(i) << ',' << w.x_hat(i) << ',' << w.v_hat(i) << ','
               << tr.x_tilde[k](i) << ',' << tr.v_tilde[k](i) << ',' << tr.e_x[k](i) << ','
               << tr.e_v[k](i) << ',' << tr.sigma[k](i);
        }
        os << '\n';
    }
}

namespace detail {

inline std::string script_header(const RunReport& r, std::size_t n) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "import os\n"
       << "import numpy as np\n"
       << "import matplotlib\n"
       << "matplotlib.use(\"Agg\")\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "HERE = os.path.dirname(os.path.abspath(__file__))\n"
       << "N = " << n << '\n'
       << "UBST_VELOCITY = " << r.ubst.velocity << '\n'
       << "UBST_OBSERVER = " << r.ubst.observer << '\n'
       << "UBST_TRACKING = " << r.ubst.tracking << "\n\n"
       << "d = np.genfromtxt(os.path.join(HERE, \"trajectory.csv\"), delimiter=\",\", "
          "names=True)\n"
       << "t = d[\"t\"]\n\n";
    return os.str();
}

inline std::string script_estimates() {
    return "fig, ax = plt.subplots(2, 1, sharex=True, figsize=(8, 6))\n"
           "for i in range(1, N + 1):\n"
           "    ax[0].plot(t, d[f\"xhat_{i}\"], label=f\"agent {i}\")\n"
           "    ax[1].plot(t, d[f\"vhat_{i}\"], label=f\"agent {i}\")\n"
           "ax[0].plot(t, d[\"x0\"], \"k--\", label=\"leader\")\n"
           "ax[1].plot(t, d[\"v0\"], \"k--\", label=\"leader\")\n"
           "for a in ax:\n"
           "    a.axvline(UBST_OBSERVER, color=\"gray\", linestyle=\":\")\n"
           "    a.grid(True)\n"
           "ax[0].set_ylabel(\"estimated position\")\n"
           "ax[1].set_ylabel(\"estimated velocity\")\n"
           "ax[1].set_xlabel(\"t [s]\")\n"
           "ax[0].legend(loc=\"upper right\", fontsize=\"small\")\n"
           "fig.tight_layout()\n"
           "fig.savefig(os.path.join(HERE, \"estimates.png\"), dpi=150)\n";
}

inline std::string script_observer_errors() {
    return "fig, ax = plt.subplots(2, 2, figsize=(11, 6))\n"
           "for i in range(1, N + 1):\n"
           "    for col in range(2):\n"
           "        ax[0][col].plot(t, d[f\"xtilde_{i}\"], label=f\"agent {i}\")\n"
           "        ax[1][col].plot(t, d[f\"vtilde_{i}\"], label=f\"agent {i}\")\n"
           "for col in range(2):\n"
           "    ax[0][col].axvline(UBST_OBSERVER, color=\"gray\", linestyle=\":\")\n"
           "    ax[1][col].axvline(UBST_VELOCITY, color=\"gray\", linestyle=\":\")\n"
           "    ax[0][col].set_ylabel(\"x~\")\n"
           "    ax[1][col].set_ylabel(\"v~\")\n"
           "    ax[1][col].set_xlabel(\"t [s]\")\n"
           "    for row in range(2):\n"
           "        ax[row][col].grid(True)\n"
           "ax[0][1].set_xlim(0, 1.2 * UBST_OBSERVER)\n"
           "ax[0][1].set_ylim(-0.05, 0.05)\n"
           "ax[1][1].set_xlim(0, 1.5 * UBST_VELOCITY)\n"
           "ax[1][1].set_ylim(-0.05, 0.05)\n"
           "ax[0][1].set_title(\"zoom\")\n"
           "ax[0][0].legend(loc=\"upper right\", fontsize=\"small\")\n"
           "fig.tight_layout()\n"
           "fig.savefig(os.path.join(HERE, \"observer_errors.png\"), dpi=150)\n";
}

inline std::string script_tracking_errors() {
    return "fig, ax = plt.subplots(2, 2, figsize=(11, 6))\n"
           "for i in range(1, N + 1):\n"
           "    for col in range(2):\n"
           "        ax[0][col].plot(t, d[f\"ex_{i}\"], label=f\"agent {i}\")\n"
           "        ax[1][col].plot(t, d[f\"ev_{i}\"], label=f\"agent {i}\")\n"
           "for col in range(2):\n"
           "    for row in range(2):\n"
           "        ax[row][col].axvline(UBST_TRACKING, color=\"gray\", linestyle=\":\")\n"
           "        ax[row][col].grid(True)\n"
           "    ax[0][col].set_ylabel(\"e_x\")\n"
           "    ax[1][col].set_ylabel(\"e_v\")\n"
           "    ax[1][col].set_xlabel(\"t [s]\")\n"
           "for row in range(2):\n"
           "    ax[row][1].set_xlim(0.5 * UBST_TRACKING, 1.1 * UBST_TRACKING)\n"
           "    ax[row][1].set_ylim(-0.05, 0.05)\n"
           "ax[0][1].set_title(\"zoom\")\n"
           "ax[0][0].legend(loc=\"upper right\", fontsize=\"small\")\n"
           "fig.tight_layout()\n"
           "fig.savefig(os.path.join(HERE, \"tracking_errors.png\"), dpi=150)\n";
}

inline std::string script_agent_states() {
    return "fig, ax = plt.subplots(2, 1, sharex=True, figsize=(8, 6))\n"
           "for i in range(1, N + 1):\n"
           "    ax[0].plot(t, d[f\"x_{i}\"], label=f\"agent {i}\")\n"
           "    ax[1].plot(t, d[f\"v_{i}\"], label=f\"agent {i}\")\n"
           "ax[0].plot(t, d[\"x0\"], \"k--\", label=\"leader\")\n"
           "ax[1].plot(t, d[\"v0\"], \"k--\", label=\"leader\")\n"
           "for a in ax:\n"
           "    a.axvline(UBST_TRACKING, color=\"gray\", linestyle=\":\")\n"
           "    a.grid(True)\n"
           "ax[0].set_ylabel(\"position\")\n"
           "ax[1].set_ylabel(\"velocity\")\n"
           "ax[1].set_xlabel(\"t [s]\")\n"
           "ax[0].legend(loc=\"upper right\", fontsize=\"small\")\n"
           "fig.tight_layout()\n"
           "fig.savefig(os.path.join(HERE, \"agent_states.png\"), dpi=150)\n";
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out || !(out << content) || !out.flush()) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

}  // namespace detail

/// Writes trajectory.csv and four plotting scripts into out_dir and returns
/// their paths. UBST marker lines in the scripts are taken from the report.
inline std::vector<std::filesystem::path> emit_plots(const Trajectory& tr, const RunReport& report,
                                                     const std::filesystem::path& out_dir) {
    if (tr.empty()) {
        throw ValidationError("emit_plots: trajectory is empty");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw std::runtime_error("cannot create output directory " + out_dir.string());
    }
    std::ostringstream csv;
    write_trajectory_csv(csv, tr);
    const std::size_t n = tr.states.front().followers();
    const std::string header = detail::script_header(report, n);

    const std::vector<std::pair<std::string, std::string>> files{
        {"trajectory.csv", csv.str()},
        {"plot_estimates.py", header + detail::script_estimates()},
        {"plot_observer_errors.py", header + detail::script_observer_errors()},
        {"plot_tracking_errors.py", header + detail::script_tracking_errors()},
        {"plot_agent_states.py", header + detail::script_agent_states()},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : files) {
        detail::write_file(out_dir / name, content);
        written.push_back(out_dir / name);
    }
    return written;
}

// ---------------------------------------------------------------------------
// Sweeps

/// Copy of `c` with "section.key" set to `value`, round-tripped through the
/// file format so every key the parser accepts can be swept.
inline ScenarioConfig with_parameter(const ScenarioConfig& c, const std::string& key,
                                     const std::string& value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
        throw ConfigError("sweep: parameter must be written section.key, got '" + key + "'");
    }
    std::stringstream text;
    save_scenario(text, c);
    boost::property_tree::ptree root;
    boost::property_tree::ini_parser::read_ini(text, root);
    const std::string section = key.substr(0, dot);
    const std::string name = key.substr(dot + 1);
    if (root.find(section) == root.not_found()) {
        throw ConfigError("sweep: unknown section [" + section + "]");
    }
    auto& child = root.get_child(section);
    if (child.find(name) == child.not_found()) {
        throw ConfigError("sweep: unknown key " + name + " in [" + section + "]");
    }
    child.put(boost::property_tree::ptree::path_type(name, '\0'), value);
    std::stringstream out;
    boost::property_tree::ini_parser::write_ini(out, root);
    return parse_scenario(out);
}

struct SweepPoint {
    std::string value;
    RunReport report;
};

/// Runs one scenario per value, at most hardware_concurrency at a time.
/// Results are in the order of `values`.
inline std::vector<SweepPoint> sweep(const ScenarioConfig& base, const std::string& key,
                                     const std::vector<std::string>& values) {
    std::vector<ScenarioConfig> configs;
    std::vector<Scenario> scenarios;
    for (const auto& v : values) {
        configs.push_back(with_parameter(base, key, v));
        scenarios.push_back(build_scenario(configs.back()));
    }
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SweepPoint> out(values.size());
    for (std::size_t start = 0; start < values.size(); start += width) {
        std::vector<std::future<RunResult>> batch;
        const std::size_t stop = std::min(values.size(), start + width);
        for (std::size_t k = start; k < stop; ++k) {
            batch.push_back(std::async(std::launch::async,
                                       [&scenarios, k] { return run_scenario(scenarios[k]); }));
        }
        for (std::size_t k = start; k < stop; ++k) {
            const RunResult r = batch[k - start].get();
            out[k].value = values[k];
            out[k].report = make_run_report(configs[k].name, scenarios[k], r);
        }
    }
    return out;
}

inline void write_sweep_csv(std::ostream& os, const std::string& key,
                            const std::vector<SweepPoint>& points) {
    os << key << ",t1,t2,t3,ubst_velocity,ubst_observer,ubst_tracking,slack_v,slack_x,slack_e,"
                 "aborted\n";
    os << std::setprecision(17);
    const auto opt = [&os](const std::optional<double>& v) {
        if (v) {
            os << *v;
        }
    };
    for (const auto& p : points) {
        const RunReport& r = p.report;
        os << p.value << ',';
        opt(r.t1);
        os << ',';
        opt(r.t2);
        os << ',';
        opt(r.t3);
        os << ',' << r.ubst.velocity << ',' << r.ubst.observer << ',' << r.ubst.tracking << ',';
        opt(r.slack.velocity);
        os << ',';
        opt(r.slack.observer);
        os << ',';
        opt(r.slack.tracking);
        os << ',' << (r.abort ? 1 : 0) << '\n';
    }
}

}  // namespace ftcons
