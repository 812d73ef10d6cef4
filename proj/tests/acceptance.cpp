// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ftcons/ftcons.hpp"

using namespace ftcons;

namespace {

using Clock = std::chrono::steady_clock;

std::string config_path(const std::string& name) {
    return std::string(FTCONS_CONFIG_DIR) + "/" + name;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Same parameter family as the unit tests: k p < 1 < k q away from the boundary.
FixedTimeParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> log_gain(std::log(0.5), std::log(4.0));
    std::uniform_real_distribution<double> kd(0.3, 1.5);
    std::uniform_real_distribution<double> frac(0.1, 0.9);
    std::uniform_real_distribution<double> over(1.2, 3.0);
    FixedTimeParams rho;
    rho.alpha = std::exp(log_gain(rng));
    rho.beta = std::exp(log_gain(rng));
    rho.k = kd(rng);
    rho.p = frac(rng) / rho.k;
    rho.q = over(rng) / rho.k;
    return rho;
}

std::string fmt(const std::optional<double>& v) {
    if (!v) {
        return "none";
    }
    std::ostringstream os;
    os.precision(6);
    os << *v;
    return os.str();
}

bool le(const std::optional<double>& t, double bound) { return t && *t <= bound; }

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << title
              << "): " << o.detail << std::endl;
    if (!o.pass) {
        ++failures;
    }
}

struct AutoRun {
    Scenario scenario;
    RunResult result;
    double seconds = 0.0;
};

AutoRun run_config(const std::string& name) {
    AutoRun r;
    r.scenario = build_scenario(load_scenario(config_path(name)));
    const auto start = Clock::now();
    r.result = run_scenario(r.scenario);
    r.seconds = seconds_since(start);
    return r;
}

Outcome scalar_bound() {
    std::mt19937_64 rng(20240611);
    const auto start = Clock::now();
    int cases = 0;
    int within = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const FixedTimeParams rho = random_params(rng);
        const double bound = settling_bound(rho);
        for (double x0 : {1e-3, -1e-3, 1.0, -1.0, 1e6, -1e6}) {
            ++cases;
            const ScalarRunResult r = simulate_scalar_fixed_time(rho, x0);
            if (r.settling_time && *r.settling_time <= bound * (1.0 + 1e-3)) {
                ++within;
                worst = std::max(worst, *r.settling_time / bound);
            }
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream os;
    os.precision(7);
    os << within << "/" << cases << " runs within the bound, max T/bound = " << worst
       << ", " << elapsed << " s";
    return {within == cases && elapsed < 30.0, os.str()};
}

Outcome gamma_golden() {
    const double g = settling_bound({1.0, 2.0, 1.5, 3.0, 0.5});
    const double oracle = 4.996808960935077743;
    const double pi_case = settling_bound({1.0, 1.0, 0.5, 1.5, 1.0});
    const double rel = std::abs(g - oracle) / oracle;
    const double err_pi = std::abs(pi_case - M_PI);
    std::ostringstream os;
    os.precision(3);
    os << "relative error " << rel << ", pi case error " << err_pi;
    return {rel <= 1e-9 && err_pi <= 1e-10, os.str()};
}

Outcome autonomous_observer(const AutoRun& a) {
    const Ubsts u = ubsts(a.scenario);
    const auto& st = a.result.settling;
    const bool compliant = validate_observer_gains(a.scenario.observer, a.scenario.topo,
                                                   a.scenario.leader)
                               .ok();
    std::ostringstream os;
    os << "T1 = " << fmt(st.v_tilde) << " <= " << u.velocity << ", T2 = " << fmt(st.x_tilde)
       << " <= " << u.observer << ", gains compliant: " << (compliant ? "yes" : "no") << ", "
       << fmt(a.seconds) << " s";
    return {compliant && !a.result.abort && le(st.v_tilde, u.velocity) &&
                le(st.x_tilde, u.observer) && a.seconds < 120.0,
            os.str()};
}

Outcome autonomous_controller(const AutoRun& a) {
    const Ubsts u = ubsts(a.scenario);
    const auto& st = a.result.settling;
    const auto& zeta = a.scenario.controller.zeta();
    const double zeta_min = *std::min_element(zeta.begin(), zeta.end());
    const bool zeta_ok = zeta_min >= 5.0;
    const bool loose = st.tracking && std::abs(*st.tracking - 1.228) <= 0.5;
    std::ostringstream os;
    os << "T3 = " << fmt(st.tracking) << " <= " << u.tracking << ", |T3 - 1.228| "
       << (loose ? "<=" : ">") << " 0.5, min zeta = " << zeta_min;
    return {zeta_ok && !a.result.abort && le(st.tracking, u.tracking) && loose, os.str()};
}

Outcome nonautonomous_bounds(const AutoRun& n) {
    const Ubsts u = ubsts(n.scenario);
    const auto& st = n.result.settling;
    std::ostringstream os;
    os.precision(6);
    os << "T1 = " << fmt(st.v_tilde) << " <= " << u.velocity << ": "
       << (le(st.v_tilde, u.velocity) ? "yes" : "no") << ", T2 = " << fmt(st.x_tilde)
       << " <= " << u.observer << ": " << (le(st.x_tilde, u.observer) ? "yes" : "no")
       << ", T3 = " << fmt(st.tracking) << " <= " << u.tracking << ": "
       << (le(st.tracking, u.tracking) ? "yes" : "no");
    return {!n.result.abort && le(st.v_tilde, u.velocity) && le(st.x_tilde, u.observer) &&
                le(st.tracking, u.tracking),
            os.str()};
}

Outcome slack_reduction() {
    const Comparison c = compare(load_scenario(config_path("five_agent_autonomous.ini")),
                                 load_scenario(config_path("five_agent_nonautonomous.ini")));
    const bool ordered = c.table.strictly_smaller(1, 0);
    const SlackColumn& na = c.table.columns[1];
    const bool small = na.velocity && na.observer && *na.velocity < 0.02 && *na.observer < 0.02;
    std::ostringstream os;
    os << "slacks autonomous (" << fmt(c.table.columns[0].velocity) << ", "
       << fmt(c.table.columns[0].observer) << ", " << fmt(c.table.columns[0].tracking)
       << "), time-varying (" << fmt(na.velocity) << ", " << fmt(na.observer) << ", "
       << fmt(na.tracking) << "); row-wise smaller: " << (ordered ? "yes" : "no")
       << ", observer slacks < 0.02: " << (small ? "yes" : "no");
    return {ordered && small, os.str()};
}

std::vector<GainSchedule> schedules(const Scenario& n) {
    std::vector<GainSchedule> out{n.nonauto->velocity, n.nonauto->position, n.nonauto->tracking};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_rate(std::log(0.5), std::log(300.0));
    std::uniform_real_distribution<double> tc(0.05, 3.0);
    std::uniform_real_distribution<double> rate_shape(0.05, 12.0);
    std::uniform_real_distribution<double> t0(0.0, 2.0);
    for (int i = 0; i < 17; ++i) {
        const double rate = std::exp(log_rate(rng));
        out.emplace_back(ExponentialProfile{rate}, t0(rng), tc(rng), rate_shape(rng) / rate);
    }
    return out;
}

Outcome gain_boundedness(const std::vector<GainSchedule>& all) {
    double worst = 0.0;
    bool outside_one = true;
    for (const GainSchedule& s : all) {
        const double span = s.window_end() - s.t0();
        double peak = 0.0;
        constexpr int kGrid = 200000;
        for (int i = 0; i < kGrid; ++i) {
            peak = std::max(peak, s.kappa(s.t0() + span * i / kGrid));
        }
        for (int e = 3; e <= 15; ++e) {
            peak = std::max(peak, s.kappa(s.window_end() - span * std::pow(10.0, -e)));
        }
        worst = std::max(worst, std::abs(peak - s.kappa_supremum()) / s.kappa_supremum());
        for (int i = 0; i <= 1000; ++i) {
            const double after = s.window_end() + 2.0 * i / 1000.0;
            const double before = s.t0() - 1.0 - 1.0 * i / 1000.0;
            outside_one = outside_one && s.kappa(after) == 1.0 && s.kappa(before) == 1.0 &&
                          s.kappa_dot(after) == 0.0;
        }
    }
    std::ostringstream os;
    os.precision(3);
    os << all.size() << " schedules, max relative gap to the supremum " << worst
       << ", gain outside windows exactly 1: " << (outside_one ? "yes" : "no");
    return {worst <= 1e-6 && outside_one, os.str()};
}

Outcome appendix_lemmas() {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> len(1, 16);
    std::uniform_real_distribution<double> loga(-6.0, 6.0);
    std::uniform_real_distribution<double> signed_u(-1.0, 1.0);
    std::uniform_real_distribution<double> expo(0.05, 8.0);
    int mean_ok = 0;
    int norm_ok = 0;
    for (int i = 0; i < 10000; ++i) {
        const FixedTimeParams rho = random_params(rng);
        std::vector<double> a(static_cast<std::size_t>(len(rng)));
        for (double& ai : a) {
            ai = std::pow(10.0, loga(rng));
        }
        mean_ok += check_power_mean_inequality(a, rho) ? 1 : 0;

        std::vector<double> z(static_cast<std::size_t>(len(rng)));
        for (double& zi : z) {
            zi = signed_u(rng) * std::pow(10.0, loga(rng));
        }
        double r = expo(rng);
        double l = expo(rng);
        if (l == r) {
            l += 1.0;
        }
        if (l < r) {
            std::swap(l, r);
        }
        norm_ok += check_norm_monotonicity(z, l, r) ? 1 : 0;
    }
    std::ostringstream os;
    os << "power mean " << mean_ok << "/10000, norm monotonicity " << norm_ok << "/10000";
    return {mean_ok == 10000 && norm_ok == 10000, os.str()};
}

Outcome lyapunov_monotone(const AutoRun& a) {
    const Trajectory& tr = a.result.trajectory;
    const auto& t1 = a.result.settling.v_tilde;
    if (!t1) {
        return {false, "velocity estimate never settled"};
    }
    const std::vector<double> v = lyapunov_v(tr.v_tilde, a.scenario.topo);
    int increases = 0;
    int checked = 0;
    double worst = 0.0;
    for (std::size_t k = 1; k < v.size() && tr.times[k] <= *t1; ++k) {
        ++checked;
        const double rise = v[k] - v[k - 1];
        worst = std::max(worst, rise / (1.0 + v[k - 1]));
        if (rise > 1e-6 * (1.0 + v[k - 1])) {
            ++increases;
        }
    }
    std::ostringstream os;
    os.precision(3);
    os << checked << " consecutive pairs up to T1 = " << *t1 << ", " << increases
       << " increases beyond tolerance, largest relative rise " << worst;
    return {checked > 0 && increases == 0, os.str()};
}

Outcome equivalence(const Scenario& a, const Scenario& n, const std::vector<GainSchedule>& all) {
    double coord_gap = 0.0;
    for (const Scenario* s : {&a, &n}) {
        const ObserverTrace abs = simulate_observer(*s, ObserverCoordinates::Absolute, s->sim.horizon);
        const ObserverTrace err = simulate_observer(*s, ObserverCoordinates::Error, s->sim.horizon);
        for (std::size_t k = 0; k < abs.times.size(); ++k) {
            coord_gap = std::max({coord_gap, (abs.x_tilde[k] - err.x_tilde[k]).cwiseAbs().maxCoeff(),
                                  (abs.v_tilde[k] - err.v_tilde[k]).cwiseAbs().maxCoeff()});
        }
    }
    double fd_gap = 0.0;
    for (const GainSchedule& s : all) {
        const double span = s.window_end() - s.t0();
        for (int i = 1; i < 1000; ++i) {
            const double t = s.t0() + span * i / 1000.0;
            const double h = 1e-6 * std::min(span * 1e-3, s.window_end() - t);
            const double fd = (s.kappa(t + h) - s.kappa(t - h)) / (2.0 * h);
            const double exact = kappa_hat_dot(t, s);
            fd_gap = std::max(fd_gap, std::abs(fd - exact) / std::abs(exact));
        }
    }
    std::ostringstream os;
    os.precision(3);
    os << "coordinate systems differ by " << coord_gap << ", finite-difference relative gap "
       << fd_gap;
    return {coord_gap <= 1e-9 && fd_gap <= 1e-5, os.str()};
}

}  // namespace

int main() {
    try {
        report(1, "scalar settling bound", scalar_bound());
        report(2, "gamma golden value", gamma_golden());
        const AutoRun autonomous = run_config("five_agent_autonomous.ini");
        report(3, "observer settling, constant gains", autonomous_observer(autonomous));
        report(4, "tracking settling, constant gains", autonomous_controller(autonomous));
        const AutoRun nonauto = run_config("five_agent_nonautonomous.ini");
        report(5, "settling with time-varying gains", nonautonomous_bounds(nonauto));
        report(6, "slack reduction", slack_reduction());
        const auto all = schedules(nonauto.scenario);
        report(7, "gain boundedness", gain_boundedness(all));
        report(8, "auxiliary inequalities", appendix_lemmas());
        report(9, "Lyapunov monotonicity", lyapunov_monotone(autonomous));
        report(10, "equivalence oracles", equivalence(autonomous.scenario, nonauto.scenario, all));
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance aborted: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
