#include "strokeplan/executor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "strokeplan/force_control.hpp"
#include "strokeplan/png_io.hpp"
#include "strokeplan/rng.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace strokeplan {

namespace {
constexpr uint64_t kExecStream = 0xE0;
constexpr uint64_t kActionStream = 0xA0;

std::string triple_dir_name(size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "triple_%05zu", i);
    return buf;
}
}  // namespace

double StrokeExecutor::realized_force(double commanded) const {
    if (!cfg_.force_realization) return commanded;
    ForceLoopState state;
    ContactModel contact;
    const PressResult press = simulate_press(commanded, state, contact, 2000, 0.01);
    if (!press.converged || press.trace.size() < 10) return commanded;
    double s = 0.0;
    for (size_t i = press.trace.size() - 10; i < press.trace.size(); ++i) s += press.trace[i];
    return s / 10.0;
}

RasterResult StrokeExecutor::realize_stream(int width, int height, const StrokeAction& u,
                                            const StrokeColor& color, uint64_t stream) const {
    Rng rng = Rng::split(cfg_.seed, kExecStream, stream);

    double radius = force_to_radius(realized_force(u.force), law_);
    if (cfg_.width_jitter_sd > 0.0) {
        radius *= std::max(0.0, 1.0 + cfg_.width_jitter_sd * rng.normal());
    }
    double opacity = color.a;
    if (cfg_.opacity_jitter_sd > 0.0) {
        opacity = std::clamp(color.a * (1.0 + cfg_.opacity_jitter_sd * rng.normal()), 0.0, 1.0);
    }

    auto centers = stamp_centers(u, default_stamp_count(u, kStraightBendThreshold),
                                 kStraightBendThreshold);
    if (cfg_.edge_noise_sd > 0.0) {
        for (Vec2& c : centers) {
            c.x += cfg_.edge_noise_sd * rng.normal();
            c.y += cfg_.edge_noise_sd * rng.normal();
        }
    }
    return stamp_disks(width, height, centers, {radius}, opacity);
}

GrayImage StrokeExecutor::execute_stream(const GrayImage& canvas, const StrokeAction& u,
                                         const StrokeColor& color, uint64_t stream) const {
    const RasterResult r = realize_stream(canvas.width, canvas.height, u, color, stream);
    return composite(canvas, r.alpha, color);
}

std::vector<StrokeColor> default_palette() {
    std::vector<StrokeColor> palette;
    for (int i = 0; i < 8; ++i) {
        const double c = 0.125 * i;
        palette.push_back(StrokeColor{c, 1.0, {c, c, c, 1.0}});
    }
    return palette;
}

std::vector<Triple> selfplay_collect(const SelfplayOptions& opt) {
    if (opt.n < 1) throw std::invalid_argument("selfplay_collect: n must be >= 1");
    if (opt.colors.empty()) throw std::invalid_argument("selfplay_collect: empty color set");
    if (opt.strokes_per_canvas < 1) {
        throw std::invalid_argument("selfplay_collect: strokes_per_canvas must be >= 1");
    }

    const StrokeExecutor exec(opt.executor, opt.law);
    const int spc = opt.strokes_per_canvas;
    const int n_canvases = (opt.n + spc - 1) / spc;
    std::vector<Triple> triples(opt.n);

#pragma omp parallel for schedule(dynamic)
    for (int canvas_idx = 0; canvas_idx < n_canvases; ++canvas_idx) {
        GrayImage canvas(opt.canvas_size, opt.canvas_size, opt.blank_value);
        for (int step = 0; step < spc; ++step) {
            const int i = canvas_idx * spc + step;
            if (i >= opt.n) break;

            Rng rng = Rng::split(opt.executor.seed, kActionStream, static_cast<uint64_t>(i));
            StrokeAction u;
            u.x0 = rng.uniform(opt.bounds.lo[0], opt.bounds.hi[0]);
            u.y0 = rng.uniform(opt.bounds.lo[1], opt.bounds.hi[1]);
            u.length = rng.uniform(opt.bounds.lo[2], opt.bounds.hi[2]);
            u.bend = rng.uniform(opt.bounds.lo[3], opt.bounds.hi[3]);
            u.alpha_deg = rng.uniform(opt.bounds.lo[4], opt.bounds.hi[4]);
            u.force = rng.uniform(opt.bounds.lo[5], opt.bounds.hi[5]);
            const StrokeColor color = opt.colors[i % opt.colors.size()];

            Triple& t = triples[i];
            t.before = quantize8(canvas);
            t.action = u;
            t.color = color;
            canvas = exec.execute_stream(canvas, u, color, static_cast<uint64_t>(i));
            t.after = quantize8(canvas);
        }
    }
    return triples;
}

std::string action_to_json_line(const StrokeAction& u, const StrokeColor& color) {
    json j;
    j["x0"] = u.x0;
    j["y0"] = u.y0;
    j["l"] = u.length;
    j["b"] = u.bend;
    j["alpha_deg"] = u.alpha_deg;
    j["F"] = u.force;
    j["c"] = color.c;
    j["a"] = color.a;
    return j.dump();
}

std::pair<StrokeAction, StrokeColor> action_from_json_line(const std::string& line) {
    const json j = json::parse(line);
    StrokeAction u;
    u.x0 = j.at("x0").get<double>();
    u.y0 = j.at("y0").get<double>();
    u.length = j.at("l").get<double>();
    u.bend = j.at("b").get<double>();
    u.alpha_deg = j.at("alpha_deg").get<double>();
    u.force = j.at("F").get<double>();
    StrokeColor color;
    color.c = j.at("c").get<double>();
    color.a = j.at("a").get<double>();
    color.rgba = {color.c, color.c, color.c, color.a};
    return {u, color};
}

void save_dataset(const std::string& dir, const std::vector<Triple>& triples,
                  const SelfplayOptions& opt) {
    fs::create_directories(dir);
    json manifest;
    manifest["format_version"] = 1;
    manifest["n"] = triples.size();
    manifest["seed"] = opt.executor.seed;
    manifest["strokes_per_canvas"] = opt.strokes_per_canvas;
    manifest["canvas_size"] = opt.canvas_size;
    manifest["blank_value"] = opt.blank_value;
    manifest["bounds"] = {{"lo", opt.bounds.lo}, {"hi", opt.bounds.hi}};
    manifest["executor"] = {{"width_jitter_sd", opt.executor.width_jitter_sd},
                            {"edge_noise_sd", opt.executor.edge_noise_sd},
                            {"opacity_jitter_sd", opt.executor.opacity_jitter_sd},
                            {"force_realization", opt.executor.force_realization}};
    manifest["width_law"] = {{"r_min", opt.law.r_min}, {"k", opt.law.k}, {"gamma", opt.law.gamma}};
    json names = json::array();

    for (size_t i = 0; i < triples.size(); ++i) {
        const std::string name = triple_dir_name(i);
        names.push_back(name);
        const fs::path tdir = fs::path(dir) / name;
        fs::create_directories(tdir);
        write_png((tdir / "before.png").string(), triples[i].before);
        write_png((tdir / "after.png").string(), triples[i].after);
        std::ofstream rec(tdir / "action.json");
        rec << action_to_json_line(triples[i].action, triples[i].color) << "\n";
    }
    manifest["triples"] = names;
    std::ofstream mf(fs::path(dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";
}

std::vector<Triple> load_dataset(const std::string& dir) {
    const fs::path root(dir);
    std::ifstream mf(root / "manifest.json");
    if (!mf) throw DatasetErrors::MissingFile("missing manifest: " + (root / "manifest.json").string());
    json manifest;
    try {
        mf >> manifest;
    } catch (const json::exception& e) {
        throw DatasetErrors::MalformedRecord(std::string("malformed manifest: ") + e.what());
    }

    const auto names = manifest.at("triples").get<std::vector<std::string>>();
    const size_t declared = manifest.at("n").get<size_t>();
    if (declared != names.size()) {
        throw DatasetErrors::ManifestMismatch("manifest n=" + std::to_string(declared) +
                                              " but lists " + std::to_string(names.size()) +
                                              " triples");
    }
    size_t present = 0;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && entry.path().filename().string().rfind("triple_", 0) == 0) {
            ++present;
        }
    }
    if (present != names.size()) {
        throw DatasetErrors::ManifestMismatch(
            "manifest lists " + std::to_string(names.size()) + " triples but " +
            std::to_string(present) + " triple directories are present");
    }

    std::vector<Triple> triples(names.size());
    for (size_t i = 0; i < names.size(); ++i) {
        const fs::path tdir = root / names[i];
        for (const char* f : {"before.png", "after.png", "action.json"}) {
            if (!fs::exists(tdir / f)) {
                throw DatasetErrors::MissingFile("triple " + std::to_string(i) + ": missing " +
                                                 (tdir / f).string());
            }
        }
        triples[i].before = read_png_gray((tdir / "before.png").string());
        triples[i].after = read_png_gray((tdir / "after.png").string());
        std::ifstream rec(tdir / "action.json");
        std::string line;
        std::getline(rec, line);
        try {
            auto [u, color] = action_from_json_line(line);
            triples[i].action = u;
            triples[i].color = color;
        } catch (const json::exception& e) {
            throw DatasetErrors::MalformedRecord("triple " + std::to_string(i) +
                                                 ": malformed action record: " + e.what());
        }
    }
    return triples;
}

}  // namespace strokeplan
