#include "strokeplan/force_control.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace strokeplan {

double SensorFilter::step(double raw) {
    const double unbiased = raw - bias;
    y_prev = alpha * unbiased + (1.0 - alpha) * y_prev;
    return y_prev;
}

void SensorFilter::estimate_bias(const std::vector<double>& stationary_window) {
    if (stationary_window.empty()) throw std::invalid_argument("estimate_bias: empty window");
    double s = 0.0;
    for (double v : stationary_window) s += v;
    bias = s / static_cast<double>(stationary_window.size());
}

ForceLoopState admittance_step(const ForceLoopState& state, double f_star, double f_meas) {
    ForceLoopState next = state;
    next.e_bar = state.lambda * state.e_bar + (1.0 - state.lambda) * (f_star - f_meas);
    next.f_ff = state.f_ff + state.k_f * next.e_bar * state.dt;
    return next;
}

double ContactModel::measured_force() const {
    return std::max(0.0, stiffness * depth + damping * depth_rate);
}

void ContactModel::step(double applied_force, double dt) {
    const double accel = (applied_force - measured_force()) / mass;
    depth_rate += dt * accel;
    depth += dt * depth_rate;
}

ContactModel ContactModel::at_equilibrium(double f) {
    ContactModel m;
    m.depth = f / m.stiffness;
    m.depth_rate = 0.0;
    return m;
}

PressResult simulate_press(double f_star, ForceLoopState state, ContactModel contact,
                           int max_steps, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("simulate_press: tol must be positive");
    PressResult res;
    res.trace.reserve(max_steps);
    int in_tol = 0;
    for (int k = 1; k <= max_steps; ++k) {
        const double f_meas = contact.measured_force();
        res.trace.push_back(f_meas);
        in_tol = std::abs(f_meas - f_star) < tol ? in_tol + 1 : 0;
        if (in_tol >= 10) {
            res.converged = true;
            res.steps = k;
            return res;
        }
        state = admittance_step(state, f_star, f_meas);
        contact.step(state.f_ff, state.dt);
    }
    res.converged = false;
    res.steps = max_steps;
    return res;
}

void write_force_trace(const std::string& path, const PressResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file: " + path);
    for (size_t i = 0; i < result.trace.size(); ++i) {
        out << i << " " << result.trace[i] << "\n";
    }
}

}  // namespace strokeplan
