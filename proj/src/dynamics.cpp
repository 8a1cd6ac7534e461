#include "strokeplan/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "strokeplan/kernels.hpp"

using json = nlohmann::json;

namespace strokeplan {

WeightMap triple_weights(const Triple& t) {
    const BinaryMask mask =
        change_mask(t.before, t.after, kChangeThreshold, kChangeDilationRadius);
    return stroke_weights(mask, kWeightDecay, kWeightFloor);
}

GrayImage AnalyticModel::predict(const GrayImage& canvas, const StrokeAction& u,
                                 const StrokeColor& color) const {
    const RasterResult r = render(canvas.width, canvas.height, u, color);
    return composite(canvas, r.alpha, color);
}

RasterResult AnalyticModel::render(int width, int height, const StrokeAction& u,
                                   const StrokeColor& color) const {
    return rasterize_stroke(u, color, width, height, law_, 0, bend_threshold_);
}

double softplus(double x) {
    if (x > 30.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double LRSurrogate::thickness(double force) const { return softplus(a_ * force + beta_) + eps_; }

GrayImage LRSurrogate::predict(const GrayImage& canvas, const StrokeAction& u,
                               const StrokeColor& color) const {
    const RasterResult r = render(canvas.width, canvas.height, u, color);
    return composite(canvas, r.alpha, color);
}

RasterResult LRSurrogate::render(int width, int height, const StrokeAction& u,
                                 const StrokeColor& color) const {
    const auto centers = stamp_centers(u, default_stamp_count(u, kStraightBendThreshold),
                                       kStraightBendThreshold);
    return stamp_disks(width, height, centers, {thickness(u.force) / 2.0}, color.a);
}

void LRSurrogate::save(const std::string& path) const {
    json j{{"format_version", 1}, {"type", "lr"}, {"a", a_}, {"beta", beta_}, {"eps", eps_}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump(2) << "\n";
}

LRSurrogate LRSurrogate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read model file: " + path);
    json j;
    in >> j;
    if (j.at("type").get<std::string>() != "lr") {
        throw std::runtime_error("not an lr model file: " + path);
    }
    return LRSurrogate(j.at("a").get<double>(), j.at("beta").get<double>(),
                       j.at("eps").get<double>());
}

namespace {

// Per-triple context reused across objective evaluations: the min squared
// distance to the stroke's stamp centers reproduces disk stamping exactly
// for any radius, so each (a, beta) trial is a thresholding pass.
struct FitTriple {
    std::vector<double> sqdist;
    WeightMap weights;
    const Triple* t = nullptr;
    double weight_sum = 0.0;
};

std::vector<FitTriple> prepare_fit_triples(const std::vector<Triple>& dataset) {
    std::vector<FitTriple> ctx(dataset.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < dataset.size(); ++i) {
        const Triple& t = dataset[i];
        const auto centers =
            stamp_centers(t.action, default_stamp_count(t.action, kStraightBendThreshold),
                          kStraightBendThreshold);
        std::vector<double> field(static_cast<size_t>(t.before.width) * t.before.height);
        for (int y = 0; y < t.before.height; ++y) {
            for (int x = 0; x < t.before.width; ++x) {
                double best = std::numeric_limits<double>::infinity();
                for (const Vec2& c : centers) {
                    const double dx = x - c.x, dy = y - c.y;
                    const double dd = dx * dx + dy * dy;
                    if (dd < best) best = dd;
                }
                field[static_cast<size_t>(y) * t.before.width + x] = best;
            }
        }
        ctx[i].sqdist = std::move(field);
        ctx[i].weights = triple_weights(t);
        ctx[i].t = &t;
        double ws = 0.0;
        for (float w : ctx[i].weights.weights) ws += w;
        ctx[i].weight_sum = ws;
    }
    return ctx;
}

double triple_loss(const FitTriple& ft, double radius) {
    const Triple& t = *ft.t;
    const double rr = radius * radius;
    const float a = static_cast<float>(std::clamp(t.color.a, 0.0, 1.0));
    const float c = static_cast<float>(t.color.c);
    double num = 0.0;
    for (size_t i = 0; i < t.before.size(); ++i) {
        const float base = t.before.data[i];
        const float pred = ft.sqdist[i] <= rr ? base + a * (c - base) : base;
        num += static_cast<double>(ft.weights.weights[i]) *
               std::abs(static_cast<double>(pred) - t.after.data[i]);
    }
    return num / ft.weight_sum;
}

double objective(const std::vector<FitTriple>& ctx, double a, double beta, double eps) {
    std::vector<double> losses(ctx.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < ctx.size(); ++i) {
        const double tau = softplus(a * ctx[i].t->action.force + beta) + eps;
        losses[i] = triple_loss(ctx[i], tau / 2.0);
    }
    double s = 0.0;
    for (double l : losses) s += l;
    return s / static_cast<double>(ctx.size());
}

}  // namespace

FitResult fit_lr(const std::vector<Triple>& dataset, const LRSurrogate& init) {
    if (dataset.empty()) throw std::invalid_argument("fit_lr: empty dataset");
    const auto ctx = prepare_fit_triples(dataset);
    const double eps = init.eps();

    double best_a = init.a(), best_beta = init.beta();
    const double init_loss = objective(ctx, best_a, best_beta, eps);
    double best_loss = init_loss;

    auto consider = [&](double a, double beta) {
        const double l = objective(ctx, a, beta, eps);
        if (l < best_loss) {
            best_loss = l;
            best_a = a;
            best_beta = beta;
        }
    };

    // Two grid levels: a coarse box, then a 21x21 refinement around the
    // incumbent with one coarse cell in each direction.
    const int n = 21;
    double a_lo = -2.0, a_hi = 10.0, b_lo = -10.0, b_hi = 20.0;
    for (int level = 0; level < 2; ++level) {
        const double a_step = (a_hi - a_lo) / (n - 1);
        const double b_step = (b_hi - b_lo) / (n - 1);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                consider(a_lo + i * a_step, b_lo + j * b_step);
            }
        }
        if (level == 0) {
            a_lo = best_a - a_step;
            a_hi = best_a + a_step;
            b_lo = best_beta - b_step;
            b_hi = best_beta + b_step;
        }
    }

    // Coordinate descent with shrinking steps.
    double step_a = (a_hi - a_lo) / (n - 1);
    double step_b = (b_hi - b_lo) / (n - 1);
    for (int iter = 0; iter < 100; ++iter) {
        const double before = best_loss;
        for (int dir : {+1, -1}) {
            while (true) {
                const double l = objective(ctx, best_a + dir * step_a, best_beta, eps);
                if (l < best_loss) {
                    best_loss = l;
                    best_a += dir * step_a;
                } else {
                    break;
                }
            }
            while (true) {
                const double l = objective(ctx, best_a, best_beta + dir * step_b, eps);
                if (l < best_loss) {
                    best_loss = l;
                    best_beta += dir * step_b;
                } else {
                    break;
                }
            }
        }
        const double improvement = before - best_loss;
        if (improvement < 1e-4 * std::max(before, 1e-12)) {
            step_a *= 0.5;
            step_b *= 0.5;
            if (step_a < 1e-4 && step_b < 1e-4) break;
        }
    }

    return FitResult{LRSurrogate(best_a, best_beta, eps), best_loss, init_loss};
}

double CalibrationCurve::width_at(double force) const {
    if (forces.empty()) throw std::runtime_error("CalibrationCurve: empty");
    if (force <= forces.front()) return widths.front();
    if (force >= forces.back()) return widths.back();
    for (size_t i = 1; i < forces.size(); ++i) {
        if (force <= forces[i]) {
            const double f = (force - forces[i - 1]) / (forces[i] - forces[i - 1]);
            return widths[i - 1] + f * (widths[i] - widths[i - 1]);
        }
    }
    return widths.back();
}

void CalibrationCurve::save(const std::string& path) const {
    json j{{"format_version", 1},
           {"type", "width_calibration"},
           {"forces", forces},
           {"widths", widths}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write calibration file: " + path);
    out << j.dump(2) << "\n";
}

CalibrationCurve CalibrationCurve::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read calibration file: " + path);
    json j;
    in >> j;
    CalibrationCurve c;
    c.forces = j.at("forces").get<std::vector<double>>();
    c.widths = j.at("widths").get<std::vector<double>>();
    return c;
}

CalibrationCurve fit_width_calibration(const std::vector<Triple>& dataset, int force_bins) {
    if (force_bins < 3) throw std::invalid_argument("fit_width_calibration: need >= 3 bins");
    if (dataset.empty()) throw std::invalid_argument("fit_width_calibration: empty dataset");

    double f_lo = dataset[0].action.force, f_hi = f_lo;
    for (const Triple& t : dataset) {
        f_lo = std::min(f_lo, t.action.force);
        f_hi = std::max(f_hi, t.action.force);
    }
    if (f_hi <= f_lo) f_hi = f_lo + 1e-9;

    std::vector<std::vector<double>> bins(force_bins);
    for (const Triple& t : dataset) {
        const BinaryMask mask = change_mask(t.before, t.after, kChangeThreshold, 0);
        const double area = static_cast<double>(mask.count());
        if (area <= 0.0) continue;
        const double len = arc_length(t.action, kStraightBendThreshold);

        // Width from area and length, correcting for the round endcaps:
        // a capsule satisfies area = w*(len + pi*w/4), so the fixed point
        // recovers w exactly on ideal footprints.
        double w = len > 1e-6 ? area / len : 2.0 * std::sqrt(area / 3.14159265358979323846);
        for (int it = 0; it < 20; ++it) {
            w = area / (len + 0.25 * 3.14159265358979323846 * w);
        }

        int bin = static_cast<int>((t.action.force - f_lo) / (f_hi - f_lo) * force_bins);
        bin = std::clamp(bin, 0, force_bins - 1);
        bins[bin].push_back(w);
    }

    CalibrationCurve curve;
    std::vector<double> counts;
    for (int b = 0; b < force_bins; ++b) {
        if (bins[b].empty()) continue;
        std::sort(bins[b].begin(), bins[b].end());
        const size_t m = bins[b].size();
        const double median =
            m % 2 == 1 ? bins[b][m / 2] : 0.5 * (bins[b][m / 2 - 1] + bins[b][m / 2]);
        curve.forces.push_back(f_lo + (b + 0.5) * (f_hi - f_lo) / force_bins);
        curve.widths.push_back(median);
        counts.push_back(static_cast<double>(m));
    }
    if (curve.forces.size() < 3) {
        throw std::runtime_error("fit_width_calibration: fewer than 3 populated bins");
    }

    // Pool adjacent violators for a non-decreasing width sequence.
    std::vector<double> vals = curve.widths, wts = counts;
    std::vector<size_t> sizes(vals.size(), 1);
    size_t k = 0;
    for (size_t i = 1; i < vals.size(); ++i) {
        ++k;
        vals[k] = vals[i];
        wts[k] = wts[i];
        sizes[k] = 1;
        while (k > 0 && vals[k - 1] > vals[k]) {
            const double tot = wts[k - 1] + wts[k];
            vals[k - 1] = (vals[k - 1] * wts[k - 1] + vals[k] * wts[k]) / tot;
            wts[k - 1] = tot;
            sizes[k - 1] += sizes[k];
            --k;
        }
    }
    std::vector<double> iso;
    for (size_t i = 0; i <= k; ++i) {
        for (size_t j = 0; j < sizes[i]; ++j) iso.push_back(vals[i]);
    }
    curve.widths = iso;
    return curve;
}

ModelEval eval_model(const DynamicsModel& model, const std::vector<Triple>& dataset) {
    if (dataset.empty()) throw std::invalid_argument("eval_model: empty dataset");
    std::vector<double> l1(dataset.size()), wl1(dataset.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < dataset.size(); ++i) {
        const Triple& t = dataset[i];
        const GrayImage pred = model.predict(t.before, t.action, t.color);
        l1[i] = serial::mean_l1(pred, t.after);
        wl1[i] = serial::weighted_l1(pred, t.after, triple_weights(t));
    }
    ModelEval ev;
    for (size_t i = 0; i < dataset.size(); ++i) {
        ev.mean_l1 += l1[i];
        ev.mean_weighted_l1 += wl1[i];
    }
    ev.mean_l1 /= static_cast<double>(dataset.size());
    ev.mean_weighted_l1 /= static_cast<double>(dataset.size());
    return ev;
}

}  // namespace strokeplan
