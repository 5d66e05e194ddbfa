#include "railgen/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "railgen/image_io.hpp"
#include "railgen/json_io.hpp"
#include "railgen/rng.hpp"

namespace railgen {

namespace fs = std::filesystem;

std::string anomaly_type_name(AnomalyType type) {
    switch (type) {
        case AnomalyType::none: return "none";
        case AnomalyType::vegetation: return "vegetation";
        case AnomalyType::sun_kink: return "sun_kink";
        case AnomalyType::missing_rail: return "missing_rail";
        default: return "broken_rail";
    }
}

AnomalyType anomaly_type_from_name(const std::string& name) {
    if (name == "none") return AnomalyType::none;
    if (name == "vegetation") return AnomalyType::vegetation;
    if (name == "sun_kink") return AnomalyType::sun_kink;
    if (name == "missing_rail") return AnomalyType::missing_rail;
    if (name == "broken_rail") return AnomalyType::broken_rail;
    throw ConfigError("unknown anomaly type: " + name);
}

// --- manifest CSV ------------------------------------------------------------

namespace {

constexpr const char* kHeader = "file,label,anomaly_type,source_file,seed,augmentations,spec_json";

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

void check_record(const SampleRecord& rec) {
    const bool type_none = rec.anomaly_type == AnomalyType::none;
    const bool spec_empty = rec.spec_json.empty();
    if (rec.healthy != type_none || rec.healthy != spec_empty)
        throw ConfigError("inconsistent record for " + rec.file +
                          ": healthy <=> anomaly_type none <=> empty spec");
}

/// Splits CSV text into rows of fields, RFC-4180 quoting rules.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    const auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw IoError("malformed manifest: unterminated quote");
    if (field_started || !row.empty()) end_row();
    return rows;
}

} // namespace

void write_manifest(const Manifest& manifest, const std::string& path) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const SampleRecord& rec : manifest.records) {
        check_record(rec);
        out << csv_escape(rec.file) << ',' << (rec.healthy ? "healthy" : "anomaly") << ','
            << anomaly_type_name(rec.anomaly_type) << ',' << csv_escape(rec.source_file) << ','
            << rec.seed << ',' << csv_escape(rec.augmentations) << ','
            << csv_escape(rec.spec_json) << "\n";
    }
    write_text_file(path, out.str());
}

Manifest read_manifest(const std::string& path) {
    const std::string text = read_text_file(path);
    const auto rows = parse_csv(text);
    if (rows.empty()) throw IoError("malformed manifest: missing header");

    std::ostringstream header;
    for (std::size_t i = 0; i < rows[0].size(); ++i)
        header << (i ? "," : "") << rows[0][i];
    if (header.str() != kHeader)
        throw IoError("malformed manifest: unexpected header '" + header.str() + "'");

    Manifest manifest;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() == 1 && row[0].empty()) continue; // trailing blank line
        if (row.size() != 7)
            throw IoError("malformed manifest: row " + std::to_string(r) + " has " +
                          std::to_string(row.size()) + " fields");
        SampleRecord rec;
        rec.file = row[0];
        if (row[1] == "healthy") rec.healthy = true;
        else if (row[1] == "anomaly") rec.healthy = false;
        else throw IoError("malformed manifest: unknown label '" + row[1] + "'");
        rec.anomaly_type = anomaly_type_from_name(row[2]);
        rec.source_file = row[3];
        try {
            rec.seed = std::stoull(row[4]);
        } catch (const std::exception&) {
            throw IoError("malformed manifest: bad seed '" + row[4] + "'");
        }
        rec.augmentations = row[5];
        rec.spec_json = row[6];
        manifest.records.push_back(std::move(rec));
    }
    return manifest;
}

// --- build config ------------------------------------------------------------

void BuildConfig::validate() const {
    if (total % 2 != 0) throw ConfigError("total must be even (balanced dataset)");
    if (anomaly_type == AnomalyType::none)
        throw ConfigError("anomaly_type must name a defect, not 'none'");
    if (!(flip_probability >= 0.0 && flip_probability <= 1.0))
        throw ConfigError("flip_probability must lie in [0, 1]");
    if (brightness_min > brightness_max || brightness_min < -255 || brightness_max > 255)
        throw ConfigError("bad brightness range");
    if (input_dir.empty() || output_dir.empty())
        throw ConfigError("input_dir and output_dir are required");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    vegetation.validate();
    kink_style.validate();
}

std::string to_json(const BuildConfig& cfg) {
    nlohmann::json j{{"total", cfg.total},
                     {"anomaly_type", anomaly_type_name(cfg.anomaly_type)},
                     {"input_dir", cfg.input_dir},
                     {"output_dir", cfg.output_dir},
                     {"master_seed", cfg.master_seed},
                     {"brightness_delta_range",
                      nlohmann::json::array({cfg.brightness_min, cfg.brightness_max})},
                     {"flip_probability", cfg.flip_probability},
                     {"detect", nlohmann::json::parse(to_json(cfg.detect))},
                     {"vegetation", nlohmann::json::parse(to_json(cfg.vegetation))},
                     {"kink_style", nlohmann::json::parse(to_json(cfg.kink_style))}};
    return j.dump(2);
}

BuildConfig build_config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("invalid JSON");
    if (!j.is_object()) throw ConfigError("expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        static const char* known[] = {"total",          "anomaly_type",
                                      "input_dir",      "output_dir",
                                      "master_seed",    "brightness_delta_range",
                                      "flip_probability", "detect",
                                      "vegetation",     "kink_style"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ConfigError("unknown config key: " + key);
    }

    BuildConfig cfg;
    if (j.contains("total")) cfg.total = j.at("total").get<std::uint32_t>();
    if (j.contains("anomaly_type"))
        cfg.anomaly_type = anomaly_type_from_name(j.at("anomaly_type").get<std::string>());
    if (j.contains("input_dir")) cfg.input_dir = j.at("input_dir").get<std::string>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("brightness_delta_range")) {
        const auto& r = j.at("brightness_delta_range");
        cfg.brightness_min = r[0].get<int>();
        cfg.brightness_max = r[1].get<int>();
    }
    if (j.contains("flip_probability"))
        cfg.flip_probability = j.at("flip_probability").get<double>();
    if (j.contains("detect")) cfg.detect = detect_config_from_json(j.at("detect").dump());
    if (j.contains("vegetation"))
        cfg.vegetation = vegetation_config_from_json(j.at("vegetation").dump());
    if (j.contains("kink_style"))
        cfg.kink_style = kink_style_from_json(j.at("kink_style").dump());
    cfg.validate();
    return cfg;
}

// --- builder -----------------------------------------------------------------

RgbImage augment(const RgbImage& img, bool flip, int brightness_delta) {
    RgbImage out = flip ? flip_horizontal(img) : img;
    return adjust_brightness(out, brightness_delta);
}

namespace {

struct Source {
    std::string name; // file name relative to input_dir
    RgbImage image;
    TrackGeometry geometry;
};

std::string format_params(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ' ';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

} // namespace

BuildResult build_dataset(const BuildConfig& cfg, const BuildLogger& log) {
    cfg.validate();
    const auto emit = [&](const std::string& event) {
        if (log) log(event);
    };

    BuildResult result;
    if (cfg.total == 0) return result;

    // Collect candidate frames, sorted by name for reproducibility.
    std::vector<std::string> candidates;
    try {
        for (const auto& entry : fs::directory_iterator(cfg.input_dir)) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (ext == ".png" || ext == ".ppm") candidates.push_back(entry.path().filename().string());
        }
    } catch (const fs::filesystem_error& e) {
        throw NoInputError("cannot list input dir " + cfg.input_dir + ": " + e.what());
    }
    std::sort(candidates.begin(), candidates.end());
    if (candidates.empty()) throw NoInputError("no image files in " + cfg.input_dir);

    // Keep only frames that decode and on which detection succeeds; an
    // anomaly injected at a wrong geometry would be mislabeled data.
    std::vector<Source> sources;
    for (const std::string& name : candidates) {
        const std::string path = (fs::path(cfg.input_dir) / name).string();
        try {
            RgbImage img = read_image(path);
            TrackGeometry geom = detect_track(img, cfg.detect);
            sources.push_back({name, std::move(img), geom});
        } catch (const Error& e) {
            result.skipped_inputs.push_back(name);
            emit(format_params({{"event", "input_skipped"}, {"file", name}, {"reason", e.what()}}));
        }
    }
    if (sources.empty()) throw NoInputError("no usable input frames in " + cfg.input_dir);
    emit(format_params({{"event", "inputs_ready"},
                        {"usable", std::to_string(sources.size())},
                        {"skipped", std::to_string(result.skipped_inputs.size())}}));

    const fs::path out_dir(cfg.output_dir);
    try {
        fs::create_directories(out_dir / "images");
    } catch (const fs::filesystem_error& e) {
        throw IoError(std::string("cannot create output dir: ") + e.what());
    }

    result.manifest.records.resize(cfg.total);

    const auto make_sample = [&](std::uint32_t index) {
        const std::uint64_t sample_seed = mix_seed(cfg.master_seed, index);
        const bool healthy = index % 2 == 0;
        const Source& src = sources[(index / 2) % sources.size()];

        Rng rng(sample_seed);
        const bool flip = rng.bernoulli(cfg.flip_probability);
        const int delta =
            static_cast<int>(rng.uniform_int(cfg.brightness_min, cfg.brightness_max));
        const std::uint64_t sim_seed = rng.next_u64();

        SampleRecord rec;
        rec.healthy = healthy;
        rec.anomaly_type = healthy ? AnomalyType::none : cfg.anomaly_type;
        rec.source_file = src.name;
        rec.seed = sample_seed;

        RgbImage img = src.image;
        if (!healthy) {
            switch (cfg.anomaly_type) {
                case AnomalyType::vegetation: {
                    auto [out, blobs] =
                        simulate_vegetation(img, src.geometry, cfg.vegetation, sim_seed);
                    img = std::move(out);
                    rec.spec_json = to_json(blobs);
                    break;
                }
                case AnomalyType::sun_kink: {
                    auto [out, spec] = simulate_sun_kink(img, src.geometry, std::nullopt,
                                                         cfg.kink_style, sim_seed);
                    img = std::move(out);
                    rec.spec_json = to_json(spec);
                    break;
                }
                case AnomalyType::missing_rail: {
                    Rng pick(sim_seed);
                    const RailSide side =
                        pick.uniform_int(0, 1) == 0 ? RailSide::left : RailSide::right;
                    img = simulate_missing_rail(img, src.geometry, side, cfg.kink_style);
                    rec.spec_json = std::string("{\"rail\":\"") +
                                    (side == RailSide::left ? "left_rail" : "right_rail") +
                                    "\"}";
                    break;
                }
                default: {
                    Rng pick(sim_seed);
                    const BreakSpec spec = draw_break_spec(pick, cfg.kink_style);
                    img = simulate_broken_rail(img, src.geometry, spec, cfg.kink_style);
                    rec.spec_json = to_json(spec);
                    break;
                }
            }
        }

        std::string tokens;
        if (cfg.emit_roi_crops) {
            const Rect& roi = src.geometry.roi;
            img = crop(img, roi);
            tokens += "crop(" + std::to_string(roi.x) + "," + std::to_string(roi.y) + "," +
                      std::to_string(roi.w) + "," + std::to_string(roi.h) + ")";
        }
        img = augment(img, flip, delta);
        if (flip) tokens += tokens.empty() ? "flip" : ";flip";
        tokens += (tokens.empty() ? "" : ";") + ("brightness(" + std::to_string(delta) + ")");
        rec.augmentations = std::move(tokens);

        char name[64];
        std::snprintf(name, sizeof(name), "images/%05u_%s.png", index,
                      healthy ? "healthy" : anomaly_type_name(cfg.anomaly_type).c_str());
        rec.file = name;
        write_image(img, (out_dir / rec.file).string());
        result.manifest.records[index] = std::move(rec);
    };

    const int jobs = std::min<int>(cfg.jobs, static_cast<int>(cfg.total));
    if (jobs <= 1) {
        for (std::uint32_t i = 0; i < cfg.total; ++i) make_sample(i);
    } else {
        // Samples are independent given their derived seeds; records land in
        // index order, so the manifest is identical no matter the schedule.
        std::atomic<std::uint32_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::uint32_t i = next.fetch_add(1);
                    if (i >= cfg.total) return;
                    try {
                        make_sample(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& w : workers) w.join();
        if (failure) std::rethrow_exception(failure);
    }

    write_manifest(result.manifest, (out_dir / "manifest.csv").string());
    emit(format_params({{"event", "build_done"},
                        {"total", std::to_string(cfg.total)},
                        {"manifest", (out_dir / "manifest.csv").string()}}));
    return result;
}

} // namespace railgen
