#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "risim/scenario.hpp"

using namespace risim;

#ifndef RISIM_SOURCE_DIR
#error "RISIM_SOURCE_DIR must name the repository root"
#endif

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kMinimal = R"ini(
[geometry]
rows_m = 2
cols_n = 3
spacing_y_m = 12.9e-3
spacing_z_m = 12.9e-3
carrier_hz = 5.8e9

[ap_path.0]
zenith_deg = 85.0
azimuth_deg = -35.0
delay_s = 40e-9

[ue_path.0]
zenith_deg = 95.0
azimuth_deg = 20.0
delay_s = 25e-9
)ini";

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text, "scn");
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("the bundled prototype preset carries the tabletop link") {
    const Scenario s = scenario_preset("prototype");
    CHECK(s.geometry.rows() == 20);
    CHECK(s.geometry.cols() == 55);
    CHECK(s.geometry.spacing_y() == 10.27e-3);
    CHECK(s.geometry.spacing_z() == 14.3e-3);
    CHECK(s.geometry.wavelength() == kSpeedOfLight / 5.8e9);
    CHECK(s.grouping == 5);
    CHECK(s.seed == 1);
    CHECK(s.grid.count() == 64);
    CHECK(s.element_model.mode() == ElementResponseMode::ideal_1bit);
    CHECK(s.feedback.quantization_step_db == 0.0);
    CHECK(s.feedback.noise_std_db == 0.0);

    REQUIRE(s.ap_paths.size() == 1);
    REQUIRE(s.ue_paths.size() == 1);
    CHECK(s.ap_paths[0].gain == std::complex<double>(1.0, 0.0));
    CHECK(s.ap_paths[0].direction.zenith() == AngularPosition::from_degrees(88, -20).zenith());
    CHECK(s.ap_paths[0].direction.azimuth() == AngularPosition::from_degrees(88, -20).azimuth());
    CHECK(s.ap_paths[0].delay_s == 100e-9);
    CHECK(s.ue_paths[0].direction.azimuth() == AngularPosition::from_degrees(93, 30).azimuth());
    CHECK(s.ue_paths[0].delay_s == 60e-9);

    // Grid centered on the carrier: 64 bins, 312.5 kHz apart.
    const auto& f = s.grid.frequencies();
    CHECK(f.front() == doctest::Approx(5.8e9 - 31.5 * 312.5e3).epsilon(1e-12));
    CHECK(f.back() == doctest::Approx(5.8e9 + 31.5 * 312.5e3).epsilon(1e-12));
    CHECK(f[1] - f[0] == doctest::Approx(312.5e3).epsilon(1e-12));
}

TEST_CASE("the small and chamber presets pin their distinguishing fields") {
    const Scenario small = scenario_preset("small");
    CHECK(small.geometry.rows() == 3);
    CHECK(small.geometry.cols() == 3);
    CHECK(small.seed == 7);
    CHECK_FALSE(small.grouping.has_value());

    const Scenario chamber = scenario_preset("chamber");
    CHECK(chamber.geometry.rows() == 20);
    CHECK(chamber.grouping == 5);
    CHECK(chamber.ap_paths[0].direction.azimuth() ==
          AngularPosition::from_degrees(90, 18.879141).azimuth());
    CHECK(chamber.ap_paths[0].delay_s == 0.0);
    CHECK(chamber.ue_paths[0].direction.azimuth() ==
          AngularPosition::from_degrees(90, 30).azimuth());
}

TEST_CASE("preset text is byte-identical to the shipped scenario files") {
    CHECK(scenario_preset_names() ==
          std::vector<std::string>({"prototype", "small", "chamber"}));
    for (const std::string& name : scenario_preset_names()) {
        const std::string path = std::string(RISIM_SOURCE_DIR) + "/scenarios/" + name + ".ini";
        CHECK_MESSAGE(scenario_preset_text(name) == read_file(path), name);
    }
    CHECK_THROWS_AS(scenario_preset("bogus"), ScenarioError);
    CHECK_THROWS_AS(scenario_preset_text("bogus"), ScenarioError);
}

TEST_CASE("unspecified sections fall back to their defaults") {
    const Scenario s = parse_scenario(kMinimal);
    CHECK(s.seed == 1);
    CHECK_FALSE(s.grouping.has_value());
    CHECK(s.element_model.mode() == ElementResponseMode::ideal_1bit);
    CHECK(s.feedback.quantization_step_db == 0.0);
    CHECK(s.feedback.noise_std_db == 0.0);
    CHECK(s.grid.count() == 64);
    // Default grid is centered on the carrier frequency.
    const auto& f = s.grid.frequencies();
    CHECK((f[31] + f[32]) / 2.0 == doctest::Approx(5.8e9).epsilon(1e-12));
    CHECK(f[1] - f[0] == doctest::Approx(312.5e3).epsilon(1e-12));
    // Path gains default to unit strength.
    CHECK(s.ap_paths[0].gain == std::complex<double>(1.0, 0.0));
}

TEST_CASE("partial grid sections keep the remaining defaults") {
    std::string text = kMinimal;
    text += "\n[grid]\ncount_k = 8\n";
    const Scenario s = parse_scenario(text);
    CHECK(s.grid.count() == 8);
    CHECK(s.grid.frequencies()[1] - s.grid.frequencies()[0] ==
          doctest::Approx(312.5e3).epsilon(1e-12));
}

TEST_CASE("a group size of one means no grouping") {
    std::string text = kMinimal;
    const auto pos = text.find("carrier_hz");
    text.insert(pos, "group_rows = 1\n");
    CHECK_FALSE(parse_scenario(text).grouping.has_value());

    std::string grouped = kMinimal;
    grouped.insert(grouped.find("carrier_hz"), "group_rows = 2\n");
    CHECK(parse_scenario(grouped).grouping == 2);
}

TEST_CASE("wavelength can be given directly instead of a carrier") {
    std::string text = kMinimal;
    const std::string needle = "carrier_hz = 5.8e9";
    text.replace(text.find(needle), needle.size(), "wavelength_m = 0.0517");
    const Scenario s = parse_scenario(text);
    CHECK(s.geometry.wavelength() == 0.0517);
    // The default grid centers on the equivalent carrier.
    const auto& f = s.grid.frequencies();
    CHECK((f[31] + f[32]) / 2.0 == doctest::Approx(kSpeedOfLight / 0.0517).epsilon(1e-12));
}

TEST_CASE("malformed scenarios report the offending location") {
    // Unknown key, with its line number.
    std::string unknown_key = kMinimal;
    unknown_key.insert(unknown_key.find("[ap_path.0]"), "bogus_key = 1.0\n");
    const std::string msg = error_of(unknown_key);
    CHECK(msg.find("scn:") != std::string::npos);
    CHECK(msg.find("bogus_key") != std::string::npos);

    // Unknown section.
    CHECK(error_of(std::string(kMinimal) + "\n[mystery]\nvalue = 1\n").find("mystery") !=
          std::string::npos);

    // Duplicate key and duplicate section.
    std::string dup_key = kMinimal;
    dup_key.insert(dup_key.find("cols_n"), "rows_m = 4\n");
    CHECK(error_of(dup_key).find("duplicate") != std::string::npos);
    std::string dup_section = std::string(kMinimal) + "\n[geometry]\n";
    CHECK(error_of(dup_section).find("duplicate") != std::string::npos);

    // Values that do not parse as numbers; inline comments are not stripped.
    std::string bad_number = kMinimal;
    bad_number.replace(bad_number.find("rows_m = 2"), 10, "rows_m = abc");
    CHECK(error_of(bad_number).find("rows_m") != std::string::npos);
    std::string inline_comment = kMinimal;
    inline_comment.replace(inline_comment.find("delay_s = 40e-9"), 15,
                           "delay_s = 40e-9 # tail");
    CHECK(error_of(inline_comment).find("delay_s") != std::string::npos);

    // Negative counts.
    std::string negative_seed = "seed = -5\n" + std::string(kMinimal);
    CHECK(error_of(negative_seed).find("seed") != std::string::npos);
}

TEST_CASE("structurally incomplete scenarios are rejected") {
    CHECK_THROWS_AS(parse_scenario(""), ScenarioError);

    // No paths on one side.
    std::string no_ue = kMinimal;
    no_ue.erase(no_ue.find("[ue_path.0]"));
    CHECK(error_of(no_ue).find("ue_path") != std::string::npos);

    // Path indices must be contiguous from zero.
    std::string gap = std::string(kMinimal) +
                      "\n[ap_path.2]\nzenith_deg = 90\nazimuth_deg = 0\ndelay_s = 0\n";
    CHECK(error_of(gap).find("ap_path") != std::string::npos);

    // Exactly one of wavelength_m / carrier_hz.
    std::string both = kMinimal;
    both.insert(both.find("carrier_hz"), "wavelength_m = 0.05\n");
    CHECK(error_of(both).find("exactly one") != std::string::npos);
    std::string neither = kMinimal;
    const std::string carrier = "carrier_hz = 5.8e9\n";
    neither.erase(neither.find(carrier), carrier.size());
    CHECK(error_of(neither).find("exactly one") != std::string::npos);
}

TEST_CASE("cross-field constraints are enforced after parsing") {
    // Group size must divide the row count (rows_m = 2 here).
    std::string bad_group = kMinimal;
    bad_group.insert(bad_group.find("carrier_hz"), "group_rows = 3\n");
    CHECK_THROWS_AS(parse_scenario(bad_group), ScenarioError);

    // Paths cannot point at the poles and delays cannot be negative.
    std::string pole = kMinimal;
    pole.replace(pole.find("zenith_deg = 85.0"), 17, "zenith_deg = 0.00");
    CHECK_THROWS_AS(parse_scenario(pole), ScenarioError);
    std::string backwards = kMinimal;
    backwards.replace(backwards.find("delay_s = 40e-9"), 15, "delay_s = -1e-9");
    CHECK_THROWS_AS(parse_scenario(backwards), ScenarioError);

    // Geometry validation propagates as a scenario error.
    std::string flat = kMinimal;
    flat.replace(flat.find("rows_m = 2"), 10, "rows_m = 0");
    CHECK_THROWS_AS(parse_scenario(flat), ScenarioError);

    // Feedback needs both keys and nonnegative values.
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimal) +
                                   "\n[feedback]\nquantization_step_db = 0.5\n"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimal) +
                                   "\n[feedback]\nquantization_step_db = 0.5\n"
                                   "noise_std_db = -2.0\n"),
                    ScenarioError);
}

TEST_CASE("element model options are mode-checked") {
    std::string impaired = std::string(kMinimal) +
                           "\n[element_model]\nmode = angle_dependent\n"
                           "amplitude_ripple_db = 6.5\n"
                           "phase_span_table = 15:276, 30:265, 45:250\n";
    const Scenario s = parse_scenario(impaired);
    CHECK(s.element_model.mode() == ElementResponseMode::angle_dependent);
    CHECK(s.element_model.amplitude_ripple_db() == 6.5);
    REQUIRE(s.element_model.phase_range_table().size() == 3);
    CHECK(s.element_model.phase_range_table()[1].incidence_deg == 30.0);
    CHECK(s.element_model.phase_range_table()[1].span_deg == 265.0);

    // Impairment knobs are rejected on ideal modes.
    std::string misplaced = std::string(kMinimal) +
                            "\n[element_model]\nmode = ideal_1bit\n"
                            "amplitude_ripple_db = 3.0\n";
    CHECK_THROWS_AS(parse_scenario(misplaced), ScenarioError);

    // Unknown mode and malformed tables.
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimal) +
                                   "\n[element_model]\nmode = fancy\n"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimal) +
                                   "\n[element_model]\nmode = angle_dependent\n"
                                   "phase_span_table = 15-276\n"),
                    ScenarioError);
}

TEST_CASE("scenarios load from files and resolve by preset name first") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/path.ini"), ScenarioError);
    CHECK_THROWS_AS(resolve_scenario("/nonexistent/path.ini"), ScenarioError);

    const std::string path = "/tmp/risim_test_scenario.ini";
    {
        std::ofstream out(path);
        out << kMinimal;
    }
    const Scenario from_file = resolve_scenario(path);
    CHECK(from_file.geometry.rows() == 2);
    CHECK(load_scenario(path).geometry.cols() == 3);
    std::remove(path.c_str());

    // A preset name resolves to the preset even though no such file exists.
    CHECK(resolve_scenario("small").seed == 7);
}
