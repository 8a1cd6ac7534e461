#pragma once

#include <string>
#include <vector>

namespace strokeplan {

/// Bias-removal + exponential smoothing of a raw force reading.
struct SensorFilter {
    double bias = 0.0;    // estimated static offset
    double alpha = 0.2;   // EMA coefficient in (0,1]
    double y_prev = 0.0;  // previous smoothed value

    /// x~ = raw - bias; y = alpha*x~ + (1-alpha)*y_prev. Updates state,
    /// returns the smoothed value.
    double step(double raw);

    /// Mean of a stationary window becomes the bias estimate.
    void estimate_bias(const std::vector<double>& stationary_window);
};

/// Outer normal-force admittance loop state: accumulates a smoothed
/// feedforward force from the filtered tracking error.
struct ForceLoopState {
    double f_ff = 0.0;    // accumulated feedforward force (N)
    double e_bar = 0.0;   // filtered force error (N)
    double k_f = 4.0;     // admittance gain (1/s)
    double lambda = 0.8;  // error EMA coefficient in [0,1)
    double dt = 0.005;    // control period (s)
};

/// e_bar <- lambda*e_bar + (1-lambda)*(F* - F_meas);
/// F_ff <- F_ff + k_f*e_bar*dt.
ForceLoopState admittance_step(const ForceLoopState& state, double f_star, double f_meas);

/// 1-D normal-axis contact: a probe of mass m pressed by the feedforward
/// force against a spring-damper surface. Measured force is the contact
/// reaction max(0, stiffness*depth + damping*depth_rate).
struct ContactModel {
    double stiffness = 50.0;  // N per unit depth
    double damping = 3.0;     // N*s per unit depth
    double mass = 0.05;       // probe mass
    double depth = 0.0;       // current penetration
    double depth_rate = 0.0;

    double measured_force() const;
    void step(double applied_force, double dt);

    /// Preload the contact so the measured force equals f at rest.
    static ContactModel at_equilibrium(double f);
};

struct PressResult {
    bool converged = false;
    int steps = 0;                 // first step of the 10-in-a-row tolerance window
    std::vector<double> trace;     // measured force per step
};

/// Drive the contact with the admittance loop until |F_meas - F*| < tol has
/// held for 10 consecutive steps. Non-convergence within max_steps is a
/// reported outcome, not an error.
PressResult simulate_press(double f_star, ForceLoopState state, ContactModel contact,
                           int max_steps, double tol);

/// Write a (step, F_meas) two-column text trace.
void write_force_trace(const std::string& path, const PressResult& result);

}  // namespace strokeplan
