#pragma once

#include <memory>
#include <string>
#include <vector>

#include "strokeplan/executor.hpp"
#include "strokeplan/image.hpp"
#include "strokeplan/raster.hpp"
#include "strokeplan/stroke.hpp"

namespace strokeplan {

/// Forward stroke-dynamics model: predicts the next canvas from the current
/// canvas and an action. Predictions are deterministic and leave pixels
/// outside the stroke footprint untouched.
class DynamicsModel {
public:
    virtual ~DynamicsModel() = default;
    virtual GrayImage predict(const GrayImage& canvas, const StrokeAction& u,
                              const StrokeColor& color) const = 0;
    virtual RasterResult render(int width, int height, const StrokeAction& u,
                                const StrokeColor& color) const = 0;
    virtual std::string name() const = 0;
};

/// Disk-stamped renderer with a force-to-width power law. Sharing the
/// executor's law makes this an exact oracle on noiseless data.
class AnalyticModel : public DynamicsModel {
public:
    explicit AnalyticModel(WidthLaw law,
                           double straight_bend_threshold = kStraightBendThreshold)
        : law_(law), bend_threshold_(straight_bend_threshold) {}

    GrayImage predict(const GrayImage& canvas, const StrokeAction& u,
                      const StrokeColor& color) const override;
    RasterResult render(int width, int height, const StrokeAction& u,
                        const StrokeColor& color) const override;
    std::string name() const override { return "analytic"; }

    const WidthLaw& law() const { return law_; }

private:
    WidthLaw law_;
    double bend_threshold_;
};

/// Constant-thickness surrogate: force maps to a global stroke thickness
/// tau(F) = softplus(a*F + beta) + eps, rasterized with radius tau/2.
class LRSurrogate : public DynamicsModel {
public:
    LRSurrogate(double a, double beta, double eps = 0.25) : a_(a), beta_(beta), eps_(eps) {}

    GrayImage predict(const GrayImage& canvas, const StrokeAction& u,
                      const StrokeColor& color) const override;
    RasterResult render(int width, int height, const StrokeAction& u,
                        const StrokeColor& color) const override;
    std::string name() const override { return "lr"; }

    double thickness(double force) const;
    double a() const { return a_; }
    double beta() const { return beta_; }
    double eps() const { return eps_; }

    void save(const std::string& path) const;
    static LRSurrogate load(const std::string& path);

private:
    double a_;
    double beta_;
    double eps_;
};

/// Overflow-safe softplus ln(1 + e^x).
double softplus(double x);

struct FitResult {
    LRSurrogate model;
    double loss = 0.0;       // mean weighted l1 at the optimum
    double init_loss = 0.0;  // objective at the initial point
};

/// Fit (a, beta) by coarse-to-fine grid search (2 levels, 21x21) followed
/// by coordinate descent until relative improvement < 1e-4. The returned
/// loss never exceeds the initial loss; a flat objective returns init.
FitResult fit_lr(const std::vector<Triple>& dataset, const LRSurrogate& init);

/// Monotone piecewise-linear force-to-width map.
struct CalibrationCurve {
    std::vector<double> forces;  // knot positions, increasing
    std::vector<double> widths;  // non-decreasing

    double width_at(double force) const;
    void save(const std::string& path) const;
    static CalibrationCurve load(const std::string& path);
};

/// Per-bin median footprint width (endcap-corrected area / arc length),
/// made monotone by pool-adjacent-violators. Needs >= 3 populated bins.
CalibrationCurve fit_width_calibration(const std::vector<Triple>& dataset, int force_bins);

struct ModelEval {
    double mean_l1 = 0.0;           // unweighted
    double mean_weighted_l1 = 0.0;  // weights from each triple's change mask
};

ModelEval eval_model(const DynamicsModel& model, const std::vector<Triple>& dataset);

/// Defaults used to derive loss weights from a triple.
constexpr float kChangeThreshold = 0.08f;
constexpr int kChangeDilationRadius = 3;
constexpr float kWeightDecay = 0.1f;
constexpr float kWeightFloor = 0.05f;

WeightMap triple_weights(const Triple& t);

}  // namespace strokeplan
