#include "risim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace risim {
namespace {

// ---------------------------------------------------------------------------
// Bundled presets. Each string is byte-identical to the matching file under
// scenarios/ (a unit test keeps them in sync).
// ---------------------------------------------------------------------------

constexpr const char* kPrototypeText = R"ini(# Bundled preset "prototype": the 20x55 surface with vertical bias groups of
# five rows, one dominant path on each side of the link, ideal 1-bit elements,
# and a noiseless feedback channel.
seed = 1

[geometry]
rows_m = 20
cols_n = 55
spacing_y_m = 10.27e-3
spacing_z_m = 14.3e-3
carrier_hz = 5.8e9
group_rows = 5

[grid]
count_k = 64
center_hz = 5.8e9
spacing_hz = 312.5e3

[ap_path.0]
gain_real = 1.0
gain_imag = 0.0
zenith_deg = 88.0
azimuth_deg = -20.0
delay_s = 100e-9

[ue_path.0]
gain_real = 1.0
gain_imag = 0.0
zenith_deg = 93.0
azimuth_deg = 30.0
delay_s = 60e-9

[element_model]
mode = ideal_1bit

[feedback]
quantization_step_db = 0.0
noise_std_db = 0.0
)ini";

constexpr const char* kSmallText = R"ini(# Bundled preset "small": a 3x3 surface with quarter-wavelength spacing,
# small enough that all 2^9 configurations can be enumerated exactly.
seed = 7

[geometry]
rows_m = 3
cols_n = 3
spacing_y_m = 12.922e-3
spacing_z_m = 12.922e-3
carrier_hz = 5.8e9

[grid]
count_k = 64
center_hz = 5.8e9
spacing_hz = 312.5e3

[ap_path.0]
gain_real = 1.0
gain_imag = 0.0
zenith_deg = 100.0
azimuth_deg = -40.0
delay_s = 50e-9

[ue_path.0]
gain_real = 1.0
gain_imag = 0.0
zenith_deg = 75.0
azimuth_deg = 25.0
delay_s = 30e-9

[element_model]
mode = ideal_1bit

[feedback]
quantization_step_db = 0.0
noise_std_db = 0.0
)ini";

constexpr const char* kChamberText = R"ini(# Bundled preset "chamber": anechoic-style geometry for azimuth pattern
# sweeps. Both directions lie in the horizontal plane; the illumination
# azimuth is chosen so that the codeword nearest to the 30-degree receive
# direction lands exactly on the column-DFT grid of the 55-column surface.
seed = 1

[geometry]
rows_m = 20
cols_n = 55
spacing_y_m = 10.27e-3
spacing_z_m = 14.3e-3
carrier_hz = 5.8e9
group_rows = 5

[grid]
count_k = 64
center_hz = 5.8e9
spacing_hz = 312.5e3

[ap_path.0]
gain_real = 1.0
gain_imag = 0.0
zenith_deg = 90.0
azimuth_deg = 18.879141
delay_s = 0.0

[ue_path.0]
gain_real = 1.0
gain_imag = 0.0
zenith_deg = 90.0
azimuth_deg = 30.0
delay_s = 16e-9

[element_model]
mode = ideal_1bit

[feedback]
quantization_step_db = 0.0
noise_std_db = 0.0
)ini";

struct PresetEntry {
    const char* name;
    const char* text;
};

constexpr PresetEntry kPresets[] = {
    {"prototype", kPrototypeText},
    {"small", kSmallText},
    {"chamber", kChamberText},
};

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])) != 0) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])) != 0) --end;
    return s.substr(begin, end - begin);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& message) {
    std::ostringstream oss;
    oss << origin;
    if (line > 0) oss << ":" << line;
    oss << ": " << message;
    throw ScenarioError(oss.str());
}

struct RawValue {
    std::string text;
    std::size_t line = 0;
    bool used = false;
};

struct RawSection {
    std::size_t line = 0;
    std::map<std::string, RawValue> values;
};

/// Line-oriented reader for the sectioned key-value format. Full-line
/// comments start with '#' or ';'. Values never contain inline comments.
class RawScenario {
public:
    RawScenario(const std::string& text, std::string origin) : origin_(std::move(origin)) {
        std::istringstream stream(text);
        std::string raw_line;
        std::string section;  // "" = top level
        std::size_t line_no = 0;
        sections_[""].line = 0;
        while (std::getline(stream, raw_line)) {
            ++line_no;
            const std::string line = trim(raw_line);
            if (line.empty() || line.front() == '#' || line.front() == ';') continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(origin_, line_no, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) fail(origin_, line_no, "empty section name");
                if (sections_.count(section) != 0)
                    fail(origin_, line_no, "duplicate section [" + section + "]");
                sections_[section].line = line_no;
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                fail(origin_, line_no, "expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(origin_, line_no, "empty key");
            auto& sec = sections_[section];
            if (sec.values.count(key) != 0)
                fail(origin_, line_no, "duplicate key '" + key + "'");
            sec.values[key] = RawValue{value, line_no, false};
        }
    }

    const std::string& origin() const { return origin_; }

    bool has_section(const std::string& name) const { return sections_.count(name) != 0; }

    std::vector<std::string> section_names() const {
        std::vector<std::string> names;
        for (const auto& [name, sec] : sections_) {
            if (!name.empty()) names.push_back(name);
        }
        return names;
    }

    std::optional<std::string> get(const std::string& section, const std::string& key) {
        auto sec_it = sections_.find(section);
        if (sec_it == sections_.end()) return std::nullopt;
        auto it = sec_it->second.values.find(key);
        if (it == sec_it->second.values.end()) return std::nullopt;
        it->second.used = true;
        return it->second.text;
    }

    std::size_t key_line(const std::string& section, const std::string& key) const {
        auto sec_it = sections_.find(section);
        if (sec_it == sections_.end()) return 0;
        auto it = sec_it->second.values.find(key);
        return it == sec_it->second.values.end() ? 0 : it->second.line;
    }

    std::size_t section_line(const std::string& section) const {
        auto it = sections_.find(section);
        return it == sections_.end() ? 0 : it->second.line;
    }

    /// Called after extraction: any value never asked for is unknown.
    void reject_unused() const {
        for (const auto& [name, sec] : sections_) {
            for (const auto& [key, value] : sec.values) {
                if (!value.used) {
                    const std::string where =
                        name.empty() ? "top level" : "section [" + name + "]";
                    fail(origin_, value.line, "unknown key '" + key + "' in " + where);
                }
            }
        }
    }

private:
    std::string origin_;
    std::map<std::string, RawSection> sections_;
};

double parse_double(RawScenario& raw, const std::string& section, const std::string& key,
                    const std::string& text) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        fail(raw.origin(), raw.key_line(section, key), "'" + key + "' is not a number: '" + text + "'");
    }
    if (consumed != text.size())
        fail(raw.origin(), raw.key_line(section, key),
             "trailing characters after number in '" + key + "': '" + text + "'");
    if (!std::isfinite(value))
        fail(raw.origin(), raw.key_line(section, key), "'" + key + "' must be finite");
    return value;
}

std::uint64_t parse_uint(RawScenario& raw, const std::string& section, const std::string& key,
                         const std::string& text) {
    std::size_t consumed = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &consumed);
    } catch (const std::exception&) {
        fail(raw.origin(), raw.key_line(section, key),
             "'" + key + "' is not a non-negative integer: '" + text + "'");
    }
    if (consumed != text.size() || (!text.empty() && text.front() == '-'))
        fail(raw.origin(), raw.key_line(section, key),
             "'" + key + "' is not a non-negative integer: '" + text + "'");
    return static_cast<std::uint64_t>(value);
}

double require_double(RawScenario& raw, const std::string& section, const std::string& key) {
    auto text = raw.get(section, key);
    if (!text)
        fail(raw.origin(), raw.section_line(section),
             "missing key '" + key + "' in section [" + section + "]");
    return parse_double(raw, section, key, *text);
}

std::optional<double> optional_double(RawScenario& raw, const std::string& section,
                                      const std::string& key) {
    auto text = raw.get(section, key);
    if (!text) return std::nullopt;
    return parse_double(raw, section, key, *text);
}

std::uint64_t require_uint(RawScenario& raw, const std::string& section, const std::string& key) {
    auto text = raw.get(section, key);
    if (!text)
        fail(raw.origin(), raw.section_line(section),
             "missing key '" + key + "' in section [" + section + "]");
    return parse_uint(raw, section, key, *text);
}

/// "15:276, 30:265, 45:250" -> phase-span sample points.
std::vector<PhaseSpanPoint> parse_span_table(RawScenario& raw, const std::string& section,
                                             const std::string& key, const std::string& text) {
    std::vector<PhaseSpanPoint> table;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string entry = trim(item);
        const std::size_t colon = entry.find(':');
        if (colon == std::string::npos)
            fail(raw.origin(), raw.key_line(section, key),
                 "expected 'incidence:span' pairs in '" + key + "', got '" + entry + "'");
        PhaseSpanPoint point{};
        point.incidence_deg = parse_double(raw, section, key, trim(entry.substr(0, colon)));
        point.span_deg = parse_double(raw, section, key, trim(entry.substr(colon + 1)));
        table.push_back(point);
    }
    if (table.empty())
        fail(raw.origin(), raw.key_line(section, key), "'" + key + "' must list at least one pair");
    return table;
}

PropagationPath parse_path(RawScenario& raw, const std::string& section) {
    // Complex path gain defaults to 1 + 0j (a unit-strength path).
    const double gain_real = optional_double(raw, section, "gain_real").value_or(1.0);
    const double gain_imag = optional_double(raw, section, "gain_imag").value_or(0.0);
    const double zenith_deg = require_double(raw, section, "zenith_deg");
    const double azimuth_deg = require_double(raw, section, "azimuth_deg");
    const double delay_s = require_double(raw, section, "delay_s");
    try {
        return PropagationPath(std::complex<double>(gain_real, gain_imag),
                               AngularPosition::from_degrees(zenith_deg, azimuth_deg), delay_s);
    } catch (const std::invalid_argument& e) {
        fail(raw.origin(), raw.section_line(section),
             "invalid path in section [" + section + "]: " + e.what());
    }
}

/// Collects [prefix.0], [prefix.1], ... and demands contiguous indices.
std::vector<PropagationPath> parse_path_list(RawScenario& raw, const std::string& prefix) {
    std::map<std::uint64_t, std::string> indexed;
    for (const auto& name : raw.section_names()) {
        if (name.rfind(prefix + ".", 0) != 0) continue;
        const std::string suffix = name.substr(prefix.size() + 1);
        if (suffix.empty() || suffix.find_first_not_of("0123456789") != std::string::npos)
            fail(raw.origin(), raw.section_line(name),
                 "section [" + name + "] needs a numeric suffix, e.g. [" + prefix + ".0]");
        indexed[std::stoull(suffix)] = name;
    }
    if (indexed.empty())
        fail(raw.origin(), 0, "at least one [" + prefix + ".0] section is required");
    std::vector<PropagationPath> paths;
    std::uint64_t expected = 0;
    for (const auto& [index, name] : indexed) {
        if (index != expected)
            fail(raw.origin(), raw.section_line(name),
                 "path sections must be numbered contiguously from 0; missing [" + prefix + "." +
                     std::to_string(expected) + "]");
        ++expected;
        paths.push_back(parse_path(raw, name));
    }
    return paths;
}

}  // namespace

Scenario::Scenario(RisGeometry geometry_, std::vector<PropagationPath> ap_paths_,
                   std::vector<PropagationPath> ue_paths_, SubcarrierGrid grid_,
                   ElementResponseModel element_model_, FeedbackParams feedback_,
                   std::uint64_t seed_, std::optional<std::size_t> grouping_)
    : geometry(geometry_),
      ap_paths(std::move(ap_paths_)),
      ue_paths(std::move(ue_paths_)),
      grid(std::move(grid_)),
      element_model(std::move(element_model_)),
      feedback(feedback_),
      seed(seed_),
      grouping(grouping_) {
    if (ap_paths.empty() || ue_paths.empty())
        throw ScenarioError("scenario needs at least one path on each side of the link");
    if (grouping) {
        if (*grouping == 0 || geometry.rows() % *grouping != 0)
            throw ScenarioError("group_rows must be a positive divisor of rows_m");
    }
    if (feedback.quantization_step_db < 0.0 || !std::isfinite(feedback.quantization_step_db))
        throw ScenarioError("quantization_step_db must be finite and non-negative");
    if (feedback.noise_std_db < 0.0 || !std::isfinite(feedback.noise_std_db))
        throw ScenarioError("noise_std_db must be finite and non-negative");
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    RawScenario raw(text, origin);

    // --- [geometry] -----------------------------------------------------
    if (!raw.has_section("geometry")) fail(origin, 0, "missing required section [geometry]");
    const auto rows = require_uint(raw, "geometry", "rows_m");
    const auto cols = require_uint(raw, "geometry", "cols_n");
    const double spacing_y = require_double(raw, "geometry", "spacing_y_m");
    const double spacing_z = require_double(raw, "geometry", "spacing_z_m");
    const auto wavelength_key = optional_double(raw, "geometry", "wavelength_m");
    const auto carrier_key = optional_double(raw, "geometry", "carrier_hz");
    if (wavelength_key.has_value() == carrier_key.has_value())
        fail(origin, raw.section_line("geometry"),
             "[geometry] needs exactly one of 'wavelength_m' or 'carrier_hz'");
    const double wavelength =
        wavelength_key ? *wavelength_key : kSpeedOfLight / *carrier_key;

    std::optional<std::size_t> grouping;
    if (auto text_value = raw.get("geometry", "group_rows")) {
        const auto g = parse_uint(raw, "geometry", "group_rows", *text_value);
        if (g > 1) grouping = static_cast<std::size_t>(g);  // group size 1 == ungrouped
    }

    // --- [grid] ----------------------------------------------------------
    // Each key defaults independently: 64 subcarriers at 312.5 kHz around
    // the carrier.
    std::size_t count_k = 64;
    double center_hz = kSpeedOfLight / wavelength;
    double spacing_hz = 312.5e3;
    if (raw.has_section("grid")) {
        if (auto text_value = raw.get("grid", "count_k"))
            count_k = static_cast<std::size_t>(parse_uint(raw, "grid", "count_k", *text_value));
        if (auto value = optional_double(raw, "grid", "center_hz")) center_hz = *value;
        if (auto value = optional_double(raw, "grid", "spacing_hz")) spacing_hz = *value;
    }

    // --- paths -----------------------------------------------------------
    auto ap_paths = parse_path_list(raw, "ap_path");
    auto ue_paths = parse_path_list(raw, "ue_path");

    // --- [element_model] ---------------------------------------------------
    ElementResponseModel model = ElementResponseModel::ideal_1bit();
    if (raw.has_section("element_model")) {
        auto mode_text = raw.get("element_model", "mode");
        if (!mode_text)
            fail(origin, raw.section_line("element_model"), "missing key 'mode' in [element_model]");
        const auto ripple = optional_double(raw, "element_model", "amplitude_ripple_db");
        auto table_text = raw.get("element_model", "phase_span_table");
        if (*mode_text == "ideal_1bit" || *mode_text == "ideal_continuous") {
            if (ripple || table_text)
                fail(origin, raw.section_line("element_model"),
                     "'amplitude_ripple_db' and 'phase_span_table' apply only to mode "
                     "'angle_dependent'");
            model = (*mode_text == "ideal_1bit") ? ElementResponseModel::ideal_1bit()
                                                 : ElementResponseModel::ideal_continuous();
        } else if (*mode_text == "angle_dependent") {
            std::vector<PhaseSpanPoint> table = ElementResponseModel::measured_phase_spans();
            if (table_text)
                table = parse_span_table(raw, "element_model", "phase_span_table", *table_text);
            try {
                model = ElementResponseModel::angle_dependent(table, ripple.value_or(0.0));
            } catch (const std::invalid_argument& e) {
                fail(origin, raw.section_line("element_model"),
                     std::string("invalid element model: ") + e.what());
            }
        } else {
            fail(origin, raw.key_line("element_model", "mode"),
                 "unknown mode '" + *mode_text +
                     "' (expected ideal_1bit, ideal_continuous, or angle_dependent)");
        }
    }

    // --- [feedback] --------------------------------------------------------
    FeedbackParams feedback;
    if (raw.has_section("feedback")) {
        feedback.quantization_step_db = require_double(raw, "feedback", "quantization_step_db");
        feedback.noise_std_db = require_double(raw, "feedback", "noise_std_db");
    }

    // --- top level ---------------------------------------------------------
    std::uint64_t seed = 1;
    if (auto text_value = raw.get("", "seed")) seed = parse_uint(raw, "", "seed", *text_value);

    // Known sections are consumed above; anything else (or any unread key)
    // is a spelling mistake the user should hear about.
    for (const auto& name : raw.section_names()) {
        static const char* known[] = {"geometry", "grid", "element_model", "feedback"};
        const bool is_known = std::find(std::begin(known), std::end(known), name) != std::end(known);
        const bool is_path = name.rfind("ap_path.", 0) == 0 || name.rfind("ue_path.", 0) == 0;
        if (!is_known && !is_path)
            fail(origin, raw.section_line(name), "unknown section [" + name + "]");
    }
    raw.reject_unused();

    try {
        RisGeometry geometry(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                             spacing_y, spacing_z, wavelength);
        SubcarrierGrid grid = SubcarrierGrid::uniform(count_k, center_hz, spacing_hz);
        return Scenario(geometry, std::move(ap_paths), std::move(ue_paths), std::move(grid),
                        std::move(model), feedback, seed, grouping);
    } catch (const std::invalid_argument& e) {
        fail(origin, 0, e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw ScenarioError(path + ": cannot open scenario file");
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_scenario(buffer.str(), path);
}

Scenario scenario_preset(const std::string& name) {
    return parse_scenario(scenario_preset_text(name), "<preset:" + name + ">");
}

std::vector<std::string> scenario_preset_names() {
    std::vector<std::string> names;
    for (const auto& entry : kPresets) names.emplace_back(entry.name);
    return names;
}

std::string scenario_preset_text(const std::string& name) {
    for (const auto& entry : kPresets) {
        if (name == entry.name) return entry.text;
    }
    throw ScenarioError("unknown preset '" + name + "' (available: prototype, small, chamber)");
}

Scenario resolve_scenario(const std::string& name_or_path) {
    for (const auto& entry : kPresets) {
        if (name_or_path == entry.name) return scenario_preset(name_or_path);
    }
    return load_scenario(name_or_path);
}

}  // namespace risim
