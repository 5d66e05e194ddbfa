#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "railgen/dataset.hpp"
#include "railgen/image_io.hpp"
#include "railgen/json_io.hpp"
#include "support/synthetic.hpp"
#include "support/testutil.hpp"

using namespace railgen;
using namespace railgen::testsupport;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& stdout_file = {},
            const fs::path& stderr_file = {}) {
    std::string cmd = std::string(RAILGEN_CLI_PATH) + " " + args;
    cmd += stdout_file.empty() ? " >/dev/null" : (" >" + stdout_file.string());
    cmd += stderr_file.empty() ? " 2>/dev/null" : (" 2>" + stderr_file.string());
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("cli end-to-end") {
    const auto dir = make_temp_dir("cli");
    TrackScene scene;
    const RgbImage frame = render_track_frame(scene, 10.0, 42);
    const auto frame_path = dir / "frame.png";
    write_image(frame, frame_path.string());

    SUBCASE("--version prints the semver string") {
        const auto out = dir / "version.txt";
        CHECK(run_cli("--version", out) == 0);
        CHECK(slurp(out) == "0.1.0\n");
    }

    SUBCASE("unknown flag exits 1 with usage on stderr") {
        const auto err = dir / "usage.txt";
        CHECK(run_cli("detect --bogus", {}, err) == 1);
        const std::string text = slurp(err);
        CHECK(text.find("Usage") != std::string::npos);
    }

    SUBCASE("detect writes parseable geometry and is reproducible") {
        const auto geom_a = dir / "a.json";
        const auto geom_b = dir / "b.json";
        CHECK(run_cli("detect --input " + frame_path.string() + " --out-geometry " +
                      geom_a.string()) == 0);
        CHECK(run_cli("detect --input " + frame_path.string() + " --out-geometry " +
                      geom_b.string()) == 0);
        CHECK(slurp(geom_a) == slurp(geom_b));

        const TrackGeometry geometry = geometry_from_json(slurp(geom_a));
        CHECK(std::abs(geometry.left_rail.p0.x - scene.left_bottom_x) <= 3.0);
        CHECK(geometry.roi.w == 600);

        SUBCASE("simulate-vegetation consumes the geometry") {
            const auto out_img = dir / "veg.png";
            const auto out_spec = dir / "veg.json";
            CHECK(run_cli("simulate-vegetation --geometry " + geom_a.string() + " --input " +
                          frame_path.string() + " --seed 7 --out " + out_img.string() +
                          " --out-spec " + out_spec.string()) == 0);
            const RgbImage out = read_image(out_img.string());
            const auto specs = blob_specs_from_json(slurp(out_spec));
            CHECK(!specs.empty());
            // modifications confined to the detected roi
            for (int y = 0; y < out.height(); ++y)
                for (int x = 0; x < out.width(); ++x)
                    if (out.at(x, y) != frame.at(x, y)) CHECK(geometry.roi.contains(x, y));
        }
        SUBCASE("simulate-kink variants run from the same geometry") {
            for (const std::string variant : {"kink", "missing", "broken"}) {
                const auto out_img = dir / ("kink_" + variant + ".png");
                const auto out_spec = dir / ("kink_" + variant + ".json");
                CHECK(run_cli("simulate-kink --variant " + variant + " --geometry " +
                              geom_a.string() + " --input " + frame_path.string() +
                              " --seed 11 --out " + out_img.string() + " --out-spec " +
                              out_spec.string()) == 0);
                CHECK(read_image(out_img.string()).width() == frame.width());
                CHECK(!slurp(out_spec).empty());
            }
        }
        SUBCASE("identical argv twice gives identical bytes") {
            const auto out1 = dir / "k1.png";
            const auto out2 = dir / "k2.png";
            const std::string args = "simulate-kink --variant kink --geometry " +
                                     geom_a.string() + " --input " + frame_path.string() +
                                     " --seed 3 --out ";
            CHECK(run_cli(args + out1.string()) == 0);
            CHECK(run_cli(args + out2.string()) == 0);
            CHECK(slurp(out1) == slurp(out2));
        }
    }

    SUBCASE("detect with --debug-dir dumps intermediates") {
        const auto debug = dir / "debug";
        fs::create_directories(debug);
        CHECK(run_cli("detect --input " + frame_path.string() + " --out-geometry " +
                      (dir / "g.json").string() + " --debug-dir " + debug.string()) == 0);
        CHECK(fs::exists(debug / "edges.png"));
        CHECK(fs::exists(debug / "magnitude.png"));
        CHECK(fs::exists(debug / "hough_overlay.png"));
    }

    SUBCASE("detect with --prior-roi still finds the track") {
        const auto geom = dir / "prior.json";
        CHECK(run_cli("detect --input " + frame_path.string() + " --prior-roi 60,180,680,419" +
                      " --out-geometry " + geom.string()) == 0);
        const TrackGeometry geometry = geometry_from_json(slurp(geom));
        CHECK(std::abs(geometry.left_rail.p0.x - scene.left_bottom_x) <= 5.0);
    }

    SUBCASE("detect on an undetectable frame exits 3") {
        const auto blank_path = dir / "blank.png";
        write_image(RgbImage(700, 400, {128, 128, 128}), blank_path.string());
        CHECK(run_cli("detect --input " + blank_path.string()) == 3);
    }

    SUBCASE("missing input file exits 2") {
        CHECK(run_cli("detect --input " + (dir / "missing.png").string()) == 2);
    }

    SUBCASE("build-dataset with an empty input dir exits 3") {
        const auto empty_in = dir / "empty_in";
        const auto build_out = dir / "build_out";
        fs::create_directories(empty_in);
        BuildConfig cfg;
        cfg.total = 4;
        cfg.input_dir = empty_in.string();
        cfg.output_dir = build_out.string();
        const auto cfg_path = dir / "build.json";
        write_text_file(cfg_path.string(), to_json(cfg));
        CHECK(run_cli("build-dataset --config " + cfg_path.string()) == 3);
    }

    SUBCASE("build-dataset happy path") {
        const auto build_in = dir / "build_in";
        const auto build_out = dir / "build_out_ok";
        fs::create_directories(build_in);
        write_image(frame, (build_in / "frame.png").string());
        BuildConfig cfg;
        cfg.total = 4;
        cfg.input_dir = build_in.string();
        cfg.output_dir = build_out.string();
        cfg.master_seed = 5;
        const auto cfg_path = dir / "build_ok.json";
        write_text_file(cfg_path.string(), to_json(cfg));
        CHECK(run_cli("build-dataset --config " + cfg_path.string() + " --jobs 2") == 0);
        const Manifest manifest = read_manifest((build_out / "manifest.csv").string());
        CHECK(manifest.records.size() == 4);
    }

    SUBCASE("malformed config exits 1") {
        const auto cfg_path = dir / "bad.json";
        write_text_file(cfg_path.string(), "{\"total\": 3}");
        CHECK(run_cli("build-dataset --config " + cfg_path.string()) == 1);
    }
}
