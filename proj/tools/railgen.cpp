// railgen: detect rail track geometry in forward-facing frames and inject
// labeled track anomalies (vegetation, sun kink, missing/broken rail) to
// build balanced synthetic datasets.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "railgen/dataset.hpp"
#include "railgen/image_io.hpp"
#include "railgen/json_io.hpp"
#include "railgen/track.hpp"
#include "railgen/vegetation.hpp"
#include "railgen/version.hpp"

namespace {

using namespace railgen;

void log_line(const char* level, const std::string& payload) {
    std::cerr << level << " " << payload << "\n";
}

Rect parse_rect_flag(const std::string& text) {
    Rect r;
    char c1, c2, c3;
    std::istringstream in(text);
    if (!(in >> r.x >> c1 >> r.y >> c2 >> r.w >> c3 >> r.h) || c1 != ',' || c2 != ',' ||
        c3 != ',')
        throw ConfigError("expected x,y,w,h but got '" + text + "'");
    return r;
}

/// Clips the normal-form line x cos(theta) + y sin(theta) = rho to the frame.
std::optional<LineSegment> clip_line_to_frame(const HoughLine& line, int w, int h) {
    const double c = std::cos(line.theta);
    const double s = std::sin(line.theta);
    const Vec2 foot{line.rho * c, line.rho * s};
    const Vec2 dir{-s, c};
    double tmin = -1e18, tmax = 1e18;
    const double lo[2] = {0.0, 0.0};
    const double hi[2] = {static_cast<double>(w - 1), static_cast<double>(h - 1)};
    const double p[2] = {foot.x, foot.y};
    const double d[2] = {dir.x, dir.y};
    for (int axis = 0; axis < 2; ++axis) {
        if (std::abs(d[axis]) < 1e-12) {
            if (p[axis] < lo[axis] || p[axis] > hi[axis]) return std::nullopt;
        } else {
            double t1 = (lo[axis] - p[axis]) / d[axis];
            double t2 = (hi[axis] - p[axis]) / d[axis];
            if (t1 > t2) std::swap(t1, t2);
            tmin = std::max(tmin, t1);
            tmax = std::min(tmax, t2);
        }
    }
    if (tmin >= tmax) return std::nullopt;
    return LineSegment{foot + dir * tmin, foot + dir * tmax};
}

RgbImage draw_segment(const RgbImage& img, const LineSegment& seg, Rgb color, int thickness) {
    const ParametricCurve line({0.0, 1.0}, {seg.p0, seg.p1});
    return draw_curve(img, line, color, thickness);
}

void dump_detect_debug(const std::string& dir, const RgbImage& frame, const DetectConfig& cfg,
                       const TrackGeometry& geometry) {
    const GrayImage gray = to_grayscale(frame);
    CannyParams params{cfg.canny_low, cfg.canny_high, cfg.blur_sigma, cfg.blur_radius};
    GrayImage magnitude;
    const EdgeMap edges = canny(gray, params, &magnitude);

    GrayImage edge_img(edges.width(), edges.height());
    for (int y = 0; y < edges.height(); ++y)
        for (int x = 0; x < edges.width(); ++x)
            if (edges.at(x, y)) edge_img.set(x, y, 255.0);
    write_image(to_rgb(edge_img), dir + "/edges.png");
    write_image(to_rgb(magnitude), dir + "/magnitude.png");

    const double theta_res = cfg.hough_theta_res_deg * 3.14159265358979323846 / 180.0;
    const auto lines = hough_lines(edges, cfg.hough_rho_res, theta_res, cfg.hough_votes);
    RgbImage overlay = frame;
    const std::size_t shown = std::min<std::size_t>(lines.size(), 20);
    for (std::size_t i = 0; i < shown; ++i)
        if (auto seg = clip_line_to_frame(lines[i], frame.width(), frame.height()))
            overlay = draw_segment(overlay, *seg, Rgb{220, 40, 40}, 1);
    overlay = draw_segment(overlay, geometry.left_rail, Rgb{40, 220, 40}, 2);
    overlay = draw_segment(overlay, geometry.right_rail, Rgb{40, 220, 40}, 2);
    const Rect& roi = geometry.roi;
    const Vec2 tl{static_cast<double>(roi.x), static_cast<double>(roi.y)};
    const Vec2 tr{static_cast<double>(roi.x + roi.w - 1), static_cast<double>(roi.y)};
    const Vec2 bl{static_cast<double>(roi.x), static_cast<double>(roi.y + roi.h - 1)};
    const Vec2 br{static_cast<double>(roi.x + roi.w - 1),
                  static_cast<double>(roi.y + roi.h - 1)};
    for (const auto& [a, b] :
         {std::pair{tl, tr}, std::pair{tr, br}, std::pair{br, bl}, std::pair{bl, tl}})
        overlay = draw_segment(overlay, LineSegment{a, b}, Rgb{60, 120, 240}, 1);
    write_image(overlay, dir + "/hough_overlay.png");
    log_line("info", "event=debug_dump dir=" + dir + " lines=" + std::to_string(lines.size()));
}

int run_detect(const std::string& config_path, const std::string& input,
               const std::string& out_geometry, const std::string& debug_dir,
               const std::string& prior_roi_text) {
    DetectConfig cfg;
    if (!config_path.empty()) cfg = detect_config_from_json(read_text_file(config_path));
    std::optional<Rect> prior;
    if (!prior_roi_text.empty()) prior = parse_rect_flag(prior_roi_text);

    const RgbImage frame = read_image(input);
    const TrackGeometry geometry = detect_track(frame, cfg, prior);
    log_line("info", "event=detected input=" + input +
                         " vanishing_x=" + std::to_string(geometry.vanishing_point.x) +
                         " vanishing_y=" + std::to_string(geometry.vanishing_point.y));

    if (!debug_dir.empty()) dump_detect_debug(debug_dir, frame, cfg, geometry);

    const std::string text = to_json(geometry);
    if (out_geometry.empty())
        std::cout << text << "\n";
    else
        write_text_file(out_geometry, text);
    return 0;
}

int run_simulate_vegetation(const std::string& config_path, const std::string& geometry_path,
                            const std::string& input, std::uint64_t seed,
                            const std::string& out, const std::string& out_spec) {
    VegetationConfig cfg;
    if (!config_path.empty()) cfg = vegetation_config_from_json(read_text_file(config_path));
    const TrackGeometry geometry = geometry_from_json(read_text_file(geometry_path));
    const RgbImage frame = read_image(input);

    auto [result, blobs] = simulate_vegetation(frame, geometry, cfg, seed);
    write_image(result, out);
    log_line("info", "event=vegetation_done out=" + out +
                         " blobs=" + std::to_string(blobs.size()) +
                         " seed=" + std::to_string(seed));
    if (!out_spec.empty()) write_text_file(out_spec, to_json(blobs));
    return 0;
}

int run_simulate_kink(const std::string& variant, const std::string& style_path,
                      const std::string& spec_path, const std::string& geometry_path,
                      const std::string& input, std::uint64_t seed, const std::string& out,
                      const std::string& out_spec) {
    KinkStyle style;
    if (!style_path.empty()) style = kink_style_from_json(read_text_file(style_path));
    const TrackGeometry geometry = geometry_from_json(read_text_file(geometry_path));
    const RgbImage frame = read_image(input);

    RgbImage result;
    std::string spec_json;
    if (variant == "kink") {
        std::optional<KinkSpec> spec;
        if (!spec_path.empty()) spec = kink_spec_from_json(read_text_file(spec_path));
        auto [img, applied] = simulate_sun_kink(frame, geometry, spec, style, seed);
        result = std::move(img);
        spec_json = to_json(applied);
    } else if (variant == "missing") {
        Rng rng(seed);
        const RailSide side = rng.uniform_int(0, 1) == 0 ? RailSide::left : RailSide::right;
        result = simulate_missing_rail(frame, geometry, side, style);
        spec_json = std::string("{\"rail\":\"") +
                    (side == RailSide::left ? "left_rail" : "right_rail") + "\"}";
    } else if (variant == "broken") {
        BreakSpec spec;
        if (!spec_path.empty()) {
            spec = break_spec_from_json(read_text_file(spec_path));
        } else {
            Rng rng(seed);
            spec = draw_break_spec(rng, style);
        }
        result = simulate_broken_rail(frame, geometry, spec, style);
        spec_json = to_json(spec);
    } else {
        throw ConfigError("unknown variant: " + variant);
    }

    write_image(result, out);
    log_line("info", "event=kink_done variant=" + variant + " out=" + out +
                         " seed=" + std::to_string(seed));
    if (!out_spec.empty()) write_text_file(out_spec, spec_json);
    return 0;
}

int run_build_dataset(const std::string& config_path, bool emit_roi_crops, int jobs) {
    BuildConfig cfg = build_config_from_json(read_text_file(config_path));
    if (emit_roi_crops) cfg.emit_roi_crops = true;
    if (jobs > 0) cfg.jobs = jobs;
    const BuildResult result =
        build_dataset(cfg, [](const std::string& event) { log_line("info", event); });
    log_line("info", "event=done records=" + std::to_string(result.manifest.records.size()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"railgen: track geometry detection and synthetic track-anomaly datasets"};
    app.set_version_flag("--version", railgen::kVersion);
    app.require_subcommand(1);

    auto* detect_cmd = app.add_subcommand("detect", "Detect rail geometry in a frame");
    std::string det_config, det_input, det_out, det_debug, det_prior;
    detect_cmd->add_option("--config", det_config, "DetectConfig JSON file");
    detect_cmd->add_option("--input", det_input, "input frame (png/ppm)")->required();
    detect_cmd->add_option("--out-geometry", det_out,
                           "output TrackGeometry JSON (stdout when omitted)");
    detect_cmd->add_option("--debug-dir", det_debug,
                           "directory for edge map / Hough overlay dumps");
    detect_cmd->add_option("--prior-roi", det_prior,
                           "detect only inside this x,y,w,h sub-rectangle");

    auto* veg_cmd =
        app.add_subcommand("simulate-vegetation", "Inject vegetation overgrowth into the ROI");
    std::string veg_config, veg_geometry, veg_input, veg_out, veg_out_spec;
    std::uint64_t veg_seed = 0;
    veg_cmd->add_option("--config", veg_config, "VegetationConfig JSON file");
    veg_cmd->add_option("--geometry", veg_geometry, "TrackGeometry JSON file")->required();
    veg_cmd->add_option("--input", veg_input, "input frame")->required();
    veg_cmd->add_option("--seed", veg_seed, "random seed")->required();
    veg_cmd->add_option("--out", veg_out, "output image")->required();
    veg_cmd->add_option("--out-spec", veg_out_spec, "write the blob specs as JSON");

    auto* kink_cmd =
        app.add_subcommand("simulate-kink", "Inject a sun kink / missing rail / broken rail");
    std::string kink_variant, kink_style, kink_spec, kink_geometry, kink_input, kink_out,
        kink_out_spec;
    std::uint64_t kink_seed = 0;
    kink_cmd->add_option("--variant", kink_variant, "kink | missing | broken")
        ->required()
        ->check(CLI::IsMember({"kink", "missing", "broken"}));
    kink_cmd->add_option("--style", kink_style, "KinkStyle JSON file");
    kink_cmd->add_option("--spec", kink_spec,
                         "explicit KinkSpec/BreakSpec JSON file (otherwise drawn from --seed)");
    kink_cmd->add_option("--geometry", kink_geometry, "TrackGeometry JSON file")->required();
    kink_cmd->add_option("--input", kink_input, "input frame")->required();
    kink_cmd->add_option("--seed", kink_seed, "random seed")->required();
    kink_cmd->add_option("--out", kink_out, "output image")->required();
    kink_cmd->add_option("--out-spec", kink_out_spec, "write the applied spec as JSON");

    auto* build_cmd = app.add_subcommand("build-dataset", "Build a balanced labeled dataset");
    std::string build_config;
    bool emit_roi_crops = false;
    int jobs = 0;
    build_cmd->add_option("--config", build_config, "BuildConfig JSON file")->required();
    build_cmd->add_flag("--emit-roi-crops", emit_roi_crops,
                        "write ROI crops instead of full frames");
    build_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        std::cout << railgen::kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (app.got_subcommand(detect_cmd))
            return run_detect(det_config, det_input, det_out, det_debug, det_prior);
        if (app.got_subcommand(veg_cmd))
            return run_simulate_vegetation(veg_config, veg_geometry, veg_input, veg_seed,
                                           veg_out, veg_out_spec);
        if (app.got_subcommand(kink_cmd))
            return run_simulate_kink(kink_variant, kink_style, kink_spec, kink_geometry,
                                     kink_input, kink_seed, kink_out, kink_out_spec);
        if (app.got_subcommand(build_cmd))
            return run_build_dataset(build_config, emit_roi_crops, jobs);
    } catch (const railgen::NoInputError& e) {
        log_line("error", std::string("event=no_usable_inputs msg=\"") + e.what() + "\"");
        return 3;
    } catch (const railgen::DetectError& e) {
        // A frame with no detectable track is unusable input, not a bug.
        log_line("error", std::string("event=detect_failed msg=\"") + e.what() + "\"");
        return 3;
    } catch (const railgen::IoError& e) {
        log_line("error", std::string("event=io_error msg=\"") + e.what() + "\"");
        return 2;
    } catch (const railgen::ConfigError& e) {
        log_line("error", std::string("event=config_error msg=\"") + e.what() + "\"");
        return 1;
    } catch (const std::exception& e) {
        log_line("error", std::string("event=internal_error msg=\"") + e.what() + "\"");
        return 1;
    }
    return 1;
}
