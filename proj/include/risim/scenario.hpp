#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "risim/channel.hpp"
#include "risim/element_model.hpp"
#include "risim/geometry.hpp"

namespace risim {

/// Anything wrong with a scenario: unreadable file, malformed text, unknown
/// keys, or a constraint violation between the parsed values.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Feedback-link degradation parameters carried by a scenario.
struct FeedbackParams {
    double quantization_step_db = 0.0;
    double noise_std_db = 0.0;
};

/// A complete simulation setup: surface geometry, the path lists on both
/// sides of the link, the subcarrier grid, the element response model,
/// feedback degradation, and the seed that makes every derived experiment
/// deterministic.
struct Scenario {
    Scenario(RisGeometry geometry_, std::vector<PropagationPath> ap_paths_,
             std::vector<PropagationPath> ue_paths_, SubcarrierGrid grid_,
             ElementResponseModel element_model_, FeedbackParams feedback_, std::uint64_t seed_,
             std::optional<std::size_t> grouping_);

    RisGeometry geometry;
    std::vector<PropagationPath> ap_paths;  // transmitter side
    std::vector<PropagationPath> ue_paths;  // receiver side
    SubcarrierGrid grid;
    ElementResponseModel element_model;
    FeedbackParams feedback;
    std::uint64_t seed;
    std::optional<std::size_t> grouping;  // vertical bias-group size, if any
};

/// Parses the sectioned key-value scenario format (angles in degrees, SI
/// units elsewhere; see the bundled scenarios/*.ini for the full key set).
/// `origin` names the source in error messages. Throws ScenarioError.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<inline>");

/// Reads and parses a scenario file. Throws ScenarioError (also for a
/// missing or unreadable file).
Scenario load_scenario(const std::string& path);

/// Bundled presets, compiled in: "prototype", "small", "chamber".
Scenario scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();
/// The raw text of a bundled preset (identical to the shipped .ini file).
std::string scenario_preset_text(const std::string& name);

/// Preset name if it matches one, otherwise a file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace risim
