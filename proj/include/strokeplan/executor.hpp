#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "strokeplan/image.hpp"
#include "strokeplan/raster.hpp"
#include "strokeplan/stroke.hpp"

namespace strokeplan {

/// Noise model of the stand-in "real world": multiplicative width and
/// opacity jitter, additive per-stamp center perturbation, and optional
/// force realization through the contact-press simulation.
struct ExecutorConfig {
    double width_jitter_sd = 0.05;    // relative sd of the realized radius
    double edge_noise_sd = 0.35;      // per-stamp center perturbation (px)
    double opacity_jitter_sd = 0.03;  // relative sd of the realized opacity
    bool force_realization = false;   // map commanded F through simulate_press
    uint64_t seed = 0;

    static ExecutorConfig noiseless(uint64_t seed = 0) {
        return ExecutorConfig{0.0, 0.0, 0.0, false, seed};
    }
};

/// One self-play sample: canvas observation before/after a stroke.
struct Triple {
    GrayImage before;  // 100x100
    StrokeAction action;
    GrayImage after;   // 100x100
    StrokeColor color; // ground-truth color label
};

/// Executes stroke actions onto a canvas with execution noise. Draws are
/// keyed by (seed, call counter), so a fresh executor replays the same
/// sequence bit-for-bit.
class StrokeExecutor {
public:
    StrokeExecutor(ExecutorConfig cfg, WidthLaw law) : cfg_(cfg), law_(law) {}

    GrayImage execute(const GrayImage& canvas, const StrokeAction& u, const StrokeColor& color) {
        return execute_stream(canvas, u, color, counter_++);
    }

    /// Same draw sequence for a given stream id regardless of call order;
    /// parallel collection keys streams by triple index.
    GrayImage execute_stream(const GrayImage& canvas, const StrokeAction& u,
                             const StrokeColor& color, uint64_t stream) const;

    /// Footprint of the realized stroke for the same stream id.
    RasterResult realize_stream(int width, int height, const StrokeAction& u,
                                const StrokeColor& color, uint64_t stream) const;

    double realized_force(double commanded) const;

    const ExecutorConfig& config() const { return cfg_; }
    const WidthLaw& law() const { return law_; }
    void reset_counter(uint64_t value = 0) { counter_ = value; }

private:
    ExecutorConfig cfg_;
    WidthLaw law_;
    uint64_t counter_ = 0;
};

struct SelfplayOptions {
    int n = 0;
    ActionBounds bounds;
    std::vector<StrokeColor> colors;
    ExecutorConfig executor;
    WidthLaw law;
    int strokes_per_canvas = 8;
    int canvas_size = 100;
    float blank_value = 1.0f;
};

/// Eight evenly spaced opaque grays; spacing exceeds the change-mask
/// threshold so every stroke is detectable on any background.
std::vector<StrokeColor> default_palette();

/// Uniformly random actions inside the bounds, colors cycled round-robin,
/// canvases reset every strokes_per_canvas strokes. Observations are
/// snapped to the 8-bit grid. Parallel across canvases; triple i draws
/// from generator stream i, so results are scheduling-invariant.
std::vector<Triple> selfplay_collect(const SelfplayOptions& opt);

struct DatasetErrors {
    struct MissingFile : std::runtime_error {
        using std::runtime_error::runtime_error;
    };
    struct MalformedRecord : std::runtime_error {
        using std::runtime_error::runtime_error;
    };
    struct ManifestMismatch : std::runtime_error {
        using std::runtime_error::runtime_error;
    };
};

/// Directory layout: manifest.json plus one triple_NNNNN/ directory with
/// before.png, after.png, action.json per sample.
void save_dataset(const std::string& dir, const std::vector<Triple>& triples,
                  const SelfplayOptions& opt);
std::vector<Triple> load_dataset(const std::string& dir);

std::string action_to_json_line(const StrokeAction& u, const StrokeColor& color);
std::pair<StrokeAction, StrokeColor> action_from_json_line(const std::string& line);

}  // namespace strokeplan
