#include "railgen/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace railgen {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("invalid JSON");
    return j;
}

void expect_keys(const json& j, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError("expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) {
                known = true;
                break;
            }
        if (!known) throw ConfigError("unknown config key: " + key);
    }
}

template <typename T>
void get_if_present(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

json vec2_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec2_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json rect_json(const Rect& r) { return json{{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

Rect rect_from(const json& j) {
    expect_keys(j, {"x", "y", "w", "h"});
    return Rect{j.at("x").get<int>(), j.at("y").get<int>(), j.at("w").get<int>(),
                j.at("h").get<int>()};
}

json segment_json(const LineSegment& s) {
    return json{{"p0", vec2_json(s.p0)}, {"p1", vec2_json(s.p1)}};
}

LineSegment segment_from(const json& j) {
    expect_keys(j, {"p0", "p1"});
    return LineSegment{vec2_from(j.at("p0")), vec2_from(j.at("p1"))};
}

std::pair<std::uint8_t, std::uint8_t> u8_range_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("expected [min, max]");
    const int lo = j[0].get<int>();
    const int hi = j[1].get<int>();
    if (lo < 0 || hi > 255) throw ConfigError("channel range must lie in [0, 255]");
    return {static_cast<std::uint8_t>(lo), static_cast<std::uint8_t>(hi)};
}

const char* rail_name(RailSide side) {
    return side == RailSide::left ? "left_rail" : "right_rail";
}

RailSide rail_from_name(const std::string& name) {
    if (name == "left_rail" || name == "left") return RailSide::left;
    if (name == "right_rail" || name == "right") return RailSide::right;
    throw ConfigError("unknown rail selector: " + name);
}

json rgb_json(const Rgb& c) { return json::array({c.r, c.g, c.b}); }

Rgb rgb_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("expected [r, g, b]");
    const int r = j[0].get<int>(), g = j[1].get<int>(), b = j[2].get<int>();
    if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255)
        throw ConfigError("color channels must lie in [0, 255]");
    return Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
               static_cast<std::uint8_t>(b)};
}

json blob_json(const BlobSpec& b) {
    return json{{"center", json::array({b.center_x, b.center_y})},
                {"sigma_x", b.sigma_x},
                {"sigma_y", b.sigma_y},
                {"n_pixels", b.n_pixels},
                {"hue_seed", b.hue_seed}};
}

BlobSpec blob_from(const json& j) {
    expect_keys(j, {"center", "sigma_x", "sigma_y", "n_pixels", "hue_seed"});
    BlobSpec b;
    const Vec2 c = vec2_from(j.at("center"));
    b.center_x = c.x;
    b.center_y = c.y;
    b.sigma_x = j.at("sigma_x").get<double>();
    b.sigma_y = j.at("sigma_y").get<double>();
    b.n_pixels = j.at("n_pixels").get<std::uint32_t>();
    b.hue_seed = j.at("hue_seed").get<std::uint64_t>();
    return b;
}

} // namespace

std::string to_json(const DetectConfig& cfg) {
    return json{{"blur_sigma", cfg.blur_sigma},
                {"blur_radius", cfg.blur_radius},
                {"canny_low", cfg.canny_low},
                {"canny_high", cfg.canny_high},
                {"hough_rho_res", cfg.hough_rho_res},
                {"hough_theta_res_deg", cfg.hough_theta_res_deg},
                {"hough_votes", cfg.hough_votes},
                {"horizontal_tolerance_deg", cfg.horizontal_tolerance_deg},
                {"roi_w", cfg.roi_w},
                {"roi_h", cfg.roi_h}}
        .dump(2);
}

DetectConfig detect_config_from_json(const std::string& text) {
    const json j = parse(text);
    expect_keys(j, {"blur_sigma", "blur_radius", "canny_low", "canny_high", "hough_rho_res",
                    "hough_theta_res_deg", "hough_votes", "horizontal_tolerance_deg", "roi_w",
                    "roi_h"});
    DetectConfig cfg;
    get_if_present(j, "blur_sigma", cfg.blur_sigma);
    get_if_present(j, "blur_radius", cfg.blur_radius);
    get_if_present(j, "canny_low", cfg.canny_low);
    get_if_present(j, "canny_high", cfg.canny_high);
    get_if_present(j, "hough_rho_res", cfg.hough_rho_res);
    get_if_present(j, "hough_theta_res_deg", cfg.hough_theta_res_deg);
    get_if_present(j, "hough_votes", cfg.hough_votes);
    get_if_present(j, "horizontal_tolerance_deg", cfg.horizontal_tolerance_deg);
    get_if_present(j, "roi_w", cfg.roi_w);
    get_if_present(j, "roi_h", cfg.roi_h);
    if (cfg.blur_radius < 1 || !(cfg.blur_sigma > 0.0))
        throw ConfigError("blur requires sigma > 0 and radius >= 1");
    if (!(cfg.canny_low > 0.0) || !(cfg.canny_low < cfg.canny_high))
        throw ConfigError("canny thresholds require 0 < low < high");
    if (cfg.roi_w <= 0 || cfg.roi_h <= 0) throw ConfigError("roi dimensions must be positive");
    return cfg;
}

std::string to_json(const TrackGeometry& geometry) {
    return json{{"left_rail", segment_json(geometry.left_rail)},
                {"right_rail", segment_json(geometry.right_rail)},
                {"roi", rect_json(geometry.roi)},
                {"vanishing_point", vec2_json(geometry.vanishing_point)}}
        .dump(2);
}

TrackGeometry geometry_from_json(const std::string& text) {
    const json j = parse(text);
    expect_keys(j, {"left_rail", "right_rail", "roi", "vanishing_point"});
    TrackGeometry g;
    g.left_rail = segment_from(j.at("left_rail"));
    g.right_rail = segment_from(j.at("right_rail"));
    g.roi = rect_from(j.at("roi"));
    g.vanishing_point = vec2_from(j.at("vanishing_point"));
    return g;
}

std::string to_json(const VegetationConfig& cfg) {
    const char* level = cfg.level == VegetationLevel::sparse ? "sparse"
                        : cfg.level == VegetationLevel::medium ? "medium"
                                                               : "high";
    return json{{"level", level},
                {"blob_count_ranges",
                 {{"sparse", json::array({cfg.sparse_blobs.min, cfg.sparse_blobs.max})},
                  {"medium", json::array({cfg.medium_blobs.min, cfg.medium_blobs.max})},
                  {"high", json::array({cfg.high_blobs.min, cfg.high_blobs.max})}}},
                {"sigma_range", json::array({cfg.sigma_min, cfg.sigma_max})},
                {"pixels_per_blob_range",
                 json::array({cfg.pixels_per_blob_min, cfg.pixels_per_blob_max})},
                {"green_ranges",
                 {{"r", json::array({cfg.r_min, cfg.r_max})},
                  {"g", json::array({cfg.g_min, cfg.g_max})},
                  {"b", json::array({cfg.b_min, cfg.b_max})}}},
                {"distribution", "normal"}}
        .dump(2);
}

VegetationConfig vegetation_config_from_json(const std::string& text) {
    const json j = parse(text);
    expect_keys(j, {"level", "blob_count_ranges", "sigma_range", "pixels_per_blob_range",
                    "green_ranges", "distribution"});
    VegetationConfig cfg;
    if (auto it = j.find("level"); it != j.end()) {
        const std::string level = it->get<std::string>();
        if (level == "sparse") cfg.level = VegetationLevel::sparse;
        else if (level == "medium") cfg.level = VegetationLevel::medium;
        else if (level == "high") cfg.level = VegetationLevel::high;
        else throw ConfigError("unknown vegetation level: " + level);
    }
    if (auto it = j.find("blob_count_ranges"); it != j.end()) {
        expect_keys(*it, {"sparse", "medium", "high"});
        auto range = [](const json& r) {
            if (!r.is_array() || r.size() != 2) throw ConfigError("expected [min, max]");
            return CountRange{r[0].get<std::uint32_t>(), r[1].get<std::uint32_t>()};
        };
        if (it->contains("sparse")) cfg.sparse_blobs = range(it->at("sparse"));
        if (it->contains("medium")) cfg.medium_blobs = range(it->at("medium"));
        if (it->contains("high")) cfg.high_blobs = range(it->at("high"));
    }
    if (auto it = j.find("sigma_range"); it != j.end()) {
        cfg.sigma_min = (*it)[0].get<double>();
        cfg.sigma_max = (*it)[1].get<double>();
    }
    if (auto it = j.find("pixels_per_blob_range"); it != j.end()) {
        cfg.pixels_per_blob_min = (*it)[0].get<std::uint32_t>();
        cfg.pixels_per_blob_max = (*it)[1].get<std::uint32_t>();
    }
    if (auto it = j.find("green_ranges"); it != j.end()) {
        expect_keys(*it, {"r", "g", "b"});
        if (it->contains("r")) std::tie(cfg.r_min, cfg.r_max) = u8_range_from(it->at("r"));
        if (it->contains("g")) std::tie(cfg.g_min, cfg.g_max) = u8_range_from(it->at("g"));
        if (it->contains("b")) std::tie(cfg.b_min, cfg.b_max) = u8_range_from(it->at("b"));
    }
    if (auto it = j.find("distribution"); it != j.end()) {
        if (it->get<std::string>() != "normal")
            throw ConfigError("only the \"normal\" distribution is implemented");
    }
    cfg.validate();
    return cfg;
}

std::string to_json(const std::vector<BlobSpec>& blobs) {
    json arr = json::array();
    for (const BlobSpec& b : blobs) arr.push_back(blob_json(b));
    return arr.dump();
}

std::vector<BlobSpec> blob_specs_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_array()) throw ConfigError("expected a JSON array of blobs");
    std::vector<BlobSpec> blobs;
    for (const json& item : j) blobs.push_back(blob_from(item));
    return blobs;
}

std::string to_json(const KinkSpec& spec) {
    return json{{"t0", spec.t0},
                {"t1", spec.t1},
                {"amplitude", spec.amplitude},
                {"direction", spec.direction == KinkDirection::left ? "left" : "right"},
                {"rail", rail_name(spec.rail)}}
        .dump();
}

KinkSpec kink_spec_from_json(const std::string& text) {
    const json j = parse(text);
    expect_keys(j, {"t0", "t1", "amplitude", "direction", "rail"});
    KinkSpec spec;
    get_if_present(j, "t0", spec.t0);
    get_if_present(j, "t1", spec.t1);
    get_if_present(j, "amplitude", spec.amplitude);
    if (auto it = j.find("direction"); it != j.end()) {
        const std::string d = it->get<std::string>();
        if (d == "left") spec.direction = KinkDirection::left;
        else if (d == "right") spec.direction = KinkDirection::right;
        else throw ConfigError("unknown kink direction: " + d);
    }
    if (auto it = j.find("rail"); it != j.end())
        spec.rail = rail_from_name(it->get<std::string>());
    spec.validate();
    return spec;
}

std::string to_json(const BreakSpec& spec) {
    return json{{"t0", spec.t0},
                {"t1", spec.t1},
                {"rail", rail_name(spec.rail)},
                {"dark_color", rgb_json(spec.dark_color)}}
        .dump();
}

BreakSpec break_spec_from_json(const std::string& text) {
    const json j = parse(text);
    expect_keys(j, {"t0", "t1", "rail", "dark_color"});
    BreakSpec spec;
    get_if_present(j, "t0", spec.t0);
    get_if_present(j, "t1", spec.t1);
    if (auto it = j.find("rail"); it != j.end())
        spec.rail = rail_from_name(it->get<std::string>());
    if (auto it = j.find("dark_color"); it != j.end()) spec.dark_color = rgb_from(*it);
    spec.validate();
    return spec;
}

std::string to_json(const KinkStyle& style) {
    json j{{"thickness", style.thickness},
           {"band_halfwidth", style.band_halfwidth},
           {"shift", style.shift},
           {"amplitude_range", json::array({style.amplitude_min, style.amplitude_max})},
           {"t0_range", json::array({style.t0_min, style.t0_max})},
           {"extent_range", json::array({style.extent_min, style.extent_max})}};
    j["rail_color"] = style.rail_color ? rgb_json(*style.rail_color) : json(nullptr);
    return j.dump(2);
}

KinkStyle kink_style_from_json(const std::string& text) {
    const json j = parse(text);
    expect_keys(j, {"rail_color", "thickness", "band_halfwidth", "shift", "amplitude_range",
                    "t0_range", "extent_range"});
    KinkStyle style;
    if (auto it = j.find("rail_color"); it != j.end() && !it->is_null())
        style.rail_color = rgb_from(*it);
    get_if_present(j, "thickness", style.thickness);
    get_if_present(j, "band_halfwidth", style.band_halfwidth);
    get_if_present(j, "shift", style.shift);
    if (auto it = j.find("amplitude_range"); it != j.end()) {
        style.amplitude_min = (*it)[0].get<double>();
        style.amplitude_max = (*it)[1].get<double>();
    }
    if (auto it = j.find("t0_range"); it != j.end()) {
        style.t0_min = (*it)[0].get<double>();
        style.t0_max = (*it)[1].get<double>();
    }
    if (auto it = j.find("extent_range"); it != j.end()) {
        style.extent_min = (*it)[0].get<double>();
        style.extent_max = (*it)[1].get<double>();
    }
    style.validate();
    return style;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileAccessError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileAccessError("cannot open file for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace railgen
