#pragma once

// Explicit fixed-step integrators. F is any callable (t, y) -> dy/dt.

namespace ftcons {

enum class Integrator { RK4, Euler };

template <class State, class F>
State euler_step(F&& f, double t, const State& y, double h) {
    return y + h * f(t, y);
}

/// Classical RK4; f is evaluated at the stage times t, t + h/2, t + h.
template <class State, class F>
State rk4_step(F&& f, double t, const State& y, double h) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = f(t + h, State(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State, class F>
State integrate_step(Integrator method, F&& f, double t, const State& y, double h) {
    return method == Integrator::RK4 ? rk4_step(f, t, y, h) : euler_step(f, t, y, h);
}

}  // namespace ftcons
