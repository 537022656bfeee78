#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "risim/beamforming.hpp"
#include "risim/channel.hpp"
#include "risim/cli.hpp"
#include "risim/config.hpp"
#include "risim/element_model.hpp"
#include "risim/experiments.hpp"
#include "risim/geometry.hpp"
#include "risim/greedy.hpp"
#include "risim/scenario.hpp"
#include "risim/text.hpp"

namespace py = pybind11;
using namespace risim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reconfigurable-surface link simulation core";

    // --- geometry -----------------------------------------------------------
    m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;

    py::class_<RisGeometry>(m, "RisGeometry")
        .def(py::init<std::size_t, std::size_t, double, double, double>(), py::arg("rows"),
             py::arg("cols"), py::arg("spacing_y_m"), py::arg("spacing_z_m"),
             py::arg("wavelength_m"))
        .def_static("from_carrier", &RisGeometry::from_carrier, py::arg("rows"), py::arg("cols"),
                    py::arg("spacing_y_m"), py::arg("spacing_z_m"), py::arg("carrier_hz"))
        .def_property_readonly("rows", &RisGeometry::rows)
        .def_property_readonly("cols", &RisGeometry::cols)
        .def_property_readonly("elements", &RisGeometry::elements)
        .def_property_readonly("spacing_y", &RisGeometry::spacing_y)
        .def_property_readonly("spacing_z", &RisGeometry::spacing_z)
        .def_property_readonly("wavelength", &RisGeometry::wavelength)
        .def("warnings", &RisGeometry::warnings);

    py::class_<AngularPosition>(m, "AngularPosition")
        .def(py::init<double, double>(), py::arg("zenith_rad"), py::arg("azimuth_rad"))
        .def_static("from_degrees", &AngularPosition::from_degrees, py::arg("zenith_deg"),
                    py::arg("azimuth_deg"))
        .def_property_readonly("zenith", &AngularPosition::zenith)
        .def_property_readonly("azimuth", &AngularPosition::azimuth)
        .def_property_readonly("zenith_deg", &AngularPosition::zenith_deg)
        .def_property_readonly("azimuth_deg", &AngularPosition::azimuth_deg);

    m.def("ula_response_y", &ula_response_y, py::arg("geometry"), py::arg("direction"));
    m.def("ula_response_z", &ula_response_z, py::arg("geometry"), py::arg("direction"));
    m.def("upa_response", &upa_response, py::arg("geometry"), py::arg("direction"));

    // --- configurations -------------------------------------------------------
    py::class_<ReflectionConfig>(m, "ReflectionConfig")
        .def_static("homogeneous", &ReflectionConfig::homogeneous, py::arg("rows"),
                    py::arg("cols"), py::arg("state") = 0)
        .def_static("from_states", &ReflectionConfig::from_states, py::arg("rows"),
                    py::arg("cols"), py::arg("states"))
        .def_static("from_coefficients", &ReflectionConfig::from_coefficients, py::arg("rows"),
                    py::arg("cols"), py::arg("coefficients"))
        .def_property_readonly("rows", &ReflectionConfig::rows)
        .def_property_readonly("cols", &ReflectionConfig::cols)
        .def_property_readonly("elements", &ReflectionConfig::elements)
        .def_property_readonly("is_binary", &ReflectionConfig::is_binary)
        .def_property_readonly("grouping", &ReflectionConfig::grouping)
        .def_property_readonly("row_groups", &ReflectionConfig::row_groups)
        .def_property_readonly("coefficients",
                               [](const ReflectionConfig& c) { return c.coefficients(); })
        .def_property_readonly("states",
                               [](const ReflectionConfig& c) {
                                   std::vector<int> out(c.states().begin(), c.states().end());
                                   return out;
                               })
        .def("at", &ReflectionConfig::at, py::arg("m"), py::arg("n"))
        .def("state_at", &ReflectionConfig::state_at, py::arg("m"), py::arg("n"))
        .def("flip_column", &ReflectionConfig::flip_column, py::arg("n"))
        .def("flip_row", &ReflectionConfig::flip_row, py::arg("m"))
        .def("flip_row_group", &ReflectionConfig::flip_row_group, py::arg("group_index"))
        .def("with_grouping", &ReflectionConfig::with_grouping, py::arg("g"))
        .def("ungrouped", &ReflectionConfig::ungrouped)
        .def(
            "__eq__",
            [](const ReflectionConfig& a, const ReflectionConfig& b) { return a == b; },
            py::is_operator());

    // --- element model ---------------------------------------------------------
    py::enum_<ElementResponseMode>(m, "ElementResponseMode")
        .value("ideal_1bit", ElementResponseMode::ideal_1bit)
        .value("ideal_continuous", ElementResponseMode::ideal_continuous)
        .value("angle_dependent", ElementResponseMode::angle_dependent);

    py::class_<PhaseSpanPoint>(m, "PhaseSpanPoint")
        .def(py::init([](double incidence_deg, double span_deg) {
                 return PhaseSpanPoint{incidence_deg, span_deg};
             }),
             py::arg("incidence_deg"), py::arg("span_deg"))
        .def_readwrite("incidence_deg", &PhaseSpanPoint::incidence_deg)
        .def_readwrite("span_deg", &PhaseSpanPoint::span_deg);

    py::class_<ElementState>(m, "ElementState")
        .def_static("binary", &ElementState::binary, py::arg("bit"))
        .def_static("phase", static_cast<ElementState (*)(double)>(&ElementState::phase),
                    py::arg("radians"))
        .def_property_readonly("is_binary", &ElementState::is_binary);

    py::class_<ElementResponseModel>(m, "ElementResponseModel")
        .def_static("ideal_1bit", &ElementResponseModel::ideal_1bit)
        .def_static("ideal_continuous", &ElementResponseModel::ideal_continuous)
        .def_static("angle_dependent", &ElementResponseModel::angle_dependent,
                    py::arg("table") = ElementResponseModel::measured_phase_spans(),
                    py::arg("amplitude_ripple_db") = 0.0)
        .def_static("measured_phase_spans", &ElementResponseModel::measured_phase_spans)
        .def_property_readonly("mode", &ElementResponseModel::mode)
        .def_property_readonly("amplitude_ripple_db", &ElementResponseModel::amplitude_ripple_db)
        .def("separation_deg", &ElementResponseModel::separation_deg, py::arg("incidence_deg"));
    m.attr("MEASURED_RIPPLE_DB") = ElementResponseModel::kMeasuredRippleDb;

    m.def(
        "reflection_coefficient",
        [](const ElementResponseModel& model, const ElementState& state,
           const AngularPosition& incident) {
            const ElementReflection r = reflection_coefficient(model, state, incident);
            return py::make_tuple(r.value, r.incidence_clamped);
        },
        py::arg("model"), py::arg("state"), py::arg("incident"));
    m.def("effective_coefficients", &effective_coefficients, py::arg("config"), py::arg("model"),
          py::arg("incident"));

    // --- channels ---------------------------------------------------------------
    py::class_<PropagationPath>(m, "PropagationPath")
        .def(py::init<std::complex<double>, AngularPosition, double>(), py::arg("gain"),
             py::arg("direction"), py::arg("delay_s"))
        .def_readwrite("gain", &PropagationPath::gain)
        .def_readwrite("direction", &PropagationPath::direction)
        .def_readwrite("delay_s", &PropagationPath::delay_s);

    py::class_<SubcarrierGrid>(m, "SubcarrierGrid")
        .def(py::init<std::vector<double>>(), py::arg("frequencies_hz"))
        .def_static("uniform", &SubcarrierGrid::uniform, py::arg("count"), py::arg("center_hz"),
                    py::arg("spacing_hz"))
        .def_property_readonly("count", &SubcarrierGrid::count)
        .def_property_readonly("frequencies", &SubcarrierGrid::frequencies);

    py::class_<ChannelMatrix>(m, "ChannelMatrix")
        .def_property_readonly("elements", &ChannelMatrix::elements)
        .def_property_readonly("subcarriers", &ChannelMatrix::subcarriers)
        .def("at",
             [](const ChannelMatrix& c, std::size_t element, std::size_t subcarrier) {
                 return c.at(element, subcarrier);
             },
             py::arg("element"), py::arg("subcarrier"))
        .def("column", [](const ChannelMatrix& c, std::size_t subcarrier) {
            const auto col = c.column(subcarrier);
            return cvec(col.begin(), col.end());
        });

    m.def("delay_response", &delay_response, py::arg("grid"), py::arg("delay_s"));
    m.def("synthesize_channel", &synthesize_channel, py::arg("geometry"), py::arg("paths"),
          py::arg("grid"));
    m.def(
        "end_to_end_gain",
        [](const cvec& g, const cvec& h, const ReflectionConfig& config) {
            return end_to_end_gain(g, h, config);
        },
        py::arg("g"), py::arg("h"), py::arg("config"));

    py::class_<ReciprocityReport>(m, "ReciprocityReport")
        .def_readonly("reciprocal", &ReciprocityReport::reciprocal)
        .def_readonly("max_deviation", &ReciprocityReport::max_deviation);
    m.def(
        "reciprocity_check",
        [](const RisGeometry& geom, const std::vector<PropagationPath>& ap,
           const std::vector<PropagationPath>& ue, const SubcarrierGrid& grid,
           const ReflectionConfig& config,
           const std::optional<ElementResponseModel>& model) {
            return model ? reciprocity_check(geom, ap, ue, grid, config, *model)
                         : reciprocity_check(geom, ap, ue, grid, config);
        },
        py::arg("geometry"), py::arg("ap_paths"), py::arg("ue_paths"), py::arg("grid"),
        py::arg("config"), py::arg("model") = std::nullopt);

    // --- beamforming ---------------------------------------------------------------
    py::class_<Codeword>(m, "Codeword")
        .def_readonly("row_index", &Codeword::row_index)
        .def_readonly("col_index", &Codeword::col_index)
        .def_readonly("coefficients", &Codeword::coefficients);

    m.def("optimal_continuous", &optimal_continuous, py::arg("geometry"), py::arg("ue_dir"),
          py::arg("ap_dir"));
    m.def("desired_factored", &desired_factored, py::arg("geometry"), py::arg("ue_dir"),
          py::arg("ap_dir"));
    m.def("dft_codeword", &dft_codeword, py::arg("geometry"), py::arg("p"), py::arg("q"));
    m.def("dft_codebook", &dft_codebook, py::arg("geometry"));
    m.def("nearest_codeword", &nearest_codeword, py::arg("geometry"), py::arg("ue_dir"),
          py::arg("ap_dir"));
    m.def("to_config", &to_config, py::arg("geometry"), py::arg("codeword"));
    m.def("quantize_1bit", &quantize_1bit, py::arg("config"));
    m.def("apply_grouping", &apply_grouping, py::arg("config"), py::arg("g"));

    // --- feedback + greedy ------------------------------------------------------------
    py::class_<FeedbackChannel>(m, "FeedbackChannel")
        .def(py::init<FeedbackChannel::PowerFn, double, double, std::uint64_t>(),
             py::arg("true_power"), py::arg("quantization_step_db") = 0.0,
             py::arg("noise_std_db") = 0.0, py::arg("rng_seed") = 1)
        .def("measure",
             [](FeedbackChannel& fb, const ReflectionConfig& config) {
                 const auto meas = fb.measure(config);
                 return py::make_tuple(meas.reported, meas.true_power);
             })
        .def_property_readonly("exact", &FeedbackChannel::exact);

    py::enum_<FlipKind>(m, "FlipKind")
        .value("column", FlipKind::column)
        .value("row", FlipKind::row);

    py::class_<GreedyStep>(m, "GreedyStep")
        .def_readonly("step", &GreedyStep::step)
        .def_readonly("sweep", &GreedyStep::sweep)
        .def_readonly("kind", &GreedyStep::kind)
        .def_readonly("index", &GreedyStep::index)
        .def_readonly("candidate_power", &GreedyStep::candidate_power)
        .def_readonly("candidate_true", &GreedyStep::candidate_true)
        .def_readonly("accepted", &GreedyStep::accepted)
        .def_readonly("running_best", &GreedyStep::running_best);

    py::class_<GreedyTrace>(m, "GreedyTrace")
        .def_readonly("initial_power", &GreedyTrace::initial_power)
        .def_readonly("initial_true", &GreedyTrace::initial_true)
        .def_readonly("steps", &GreedyTrace::steps)
        .def_readonly("final_config", &GreedyTrace::final_config)
        .def_readonly("final_power", &GreedyTrace::final_power)
        .def_readonly("final_true", &GreedyTrace::final_true)
        .def_readonly("sweep_count", &GreedyTrace::sweep_count)
        .def("csv", [](const GreedyTrace& trace) {
            std::ostringstream oss;
            trace.write_csv(oss);
            return oss.str();
        });

    m.def("greedy_beamform", &greedy_beamform, py::arg("initial"), py::arg("feedback"),
          py::arg("sweeps"));
    m.def("track_continuously", &track_continuously, py::arg("initial"), py::arg("schedule"),
          py::arg("epochs"), py::arg("sweeps_per_epoch"));

    // --- scenarios ---------------------------------------------------------------------
    py::register_exception<ScenarioError>(m, "ScenarioError");

    py::class_<FeedbackParams>(m, "FeedbackParams")
        .def(py::init<>())
        .def_readwrite("quantization_step_db", &FeedbackParams::quantization_step_db)
        .def_readwrite("noise_std_db", &FeedbackParams::noise_std_db);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<RisGeometry, std::vector<PropagationPath>, std::vector<PropagationPath>,
                      SubcarrierGrid, ElementResponseModel, FeedbackParams, std::uint64_t,
                      std::optional<std::size_t>>(),
             py::arg("geometry"), py::arg("ap_paths"), py::arg("ue_paths"), py::arg("grid"),
             py::arg("element_model"), py::arg("feedback"), py::arg("seed") = 1,
             py::arg("grouping") = std::nullopt)
        .def_readwrite("geometry", &Scenario::geometry)
        .def_readwrite("ap_paths", &Scenario::ap_paths)
        .def_readwrite("ue_paths", &Scenario::ue_paths)
        .def_readwrite("grid", &Scenario::grid)
        .def_readwrite("element_model", &Scenario::element_model)
        .def_readwrite("feedback", &Scenario::feedback)
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("grouping", &Scenario::grouping);

    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("origin") = "<inline>");
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("scenario_preset", &scenario_preset, py::arg("name"));
    m.def("scenario_preset_names", &scenario_preset_names);
    m.def("scenario_preset_text", &scenario_preset_text, py::arg("name"));
    m.def("resolve_scenario", &resolve_scenario, py::arg("name_or_path"));

    // --- experiments -----------------------------------------------------------------------
    py::class_<LinkSimulator>(m, "LinkSimulator")
        .def(py::init<const Scenario&>(), py::arg("scenario"))
        .def("gain_at", &LinkSimulator::gain_at, py::arg("config"), py::arg("subcarrier"))
        .def("wideband_power", &LinkSimulator::wideband_power, py::arg("config"))
        .def_property_readonly("subcarriers", &LinkSimulator::subcarriers)
        .def_property_readonly("elements", &LinkSimulator::elements);

    py::class_<PatternSample>(m, "PatternSample")
        .def_readonly("azimuth_deg", &PatternSample::azimuth_deg)
        .def_readonly("gain_db", &PatternSample::gain_db);

    py::class_<AngleSweep>(m, "AngleSweep")
        .def(py::init([](double start, double stop, double step) {
                 return AngleSweep{start, stop, step};
             }),
             py::arg("start_deg") = -90.0, py::arg("stop_deg") = 90.0, py::arg("step_deg") = 0.1)
        .def_readwrite("start_deg", &AngleSweep::start_deg)
        .def_readwrite("stop_deg", &AngleSweep::stop_deg)
        .def_readwrite("step_deg", &AngleSweep::step_deg);

    py::class_<PatternResult>(m, "PatternResult")
        .def_readonly("samples", &PatternResult::samples)
        .def_readonly("main_lobe_deg", &PatternResult::main_lobe_deg)
        .def_readonly("half_power_beamwidth_deg", &PatternResult::half_power_beamwidth_deg)
        .def_readonly("sidelobe_left_db", &PatternResult::sidelobe_left_db)
        .def_readonly("sidelobe_right_db", &PatternResult::sidelobe_right_db);

    m.def("radiation_pattern", &radiation_pattern, py::arg("geometry"), py::arg("config"),
          py::arg("incidence"), py::arg("sweep") = AngleSweep{},
          py::arg("receive_zenith_rad") = 1.5707963267948966);

    py::class_<GainBudget>(m, "GainBudget")
        .def_readonly("elements", &GainBudget::elements)
        .def_readonly("array_gain_db", &GainBudget::array_gain_db)
        .def_readonly("one_bit_loss_db", &GainBudget::one_bit_loss_db);
    m.def("ideal_gain_budget", &ideal_gain_budget, py::arg("elements"),
          py::arg("min_phase_draws") = 100000, py::arg("seed") = 1);

    py::class_<BruteForceResult>(m, "BruteForceResult")
        .def_readonly("config", &BruteForceResult::config)
        .def_readonly("power", &BruteForceResult::power);
    m.def("brute_force_optimum", &brute_force_optimum, py::arg("scenario"));

    py::enum_<GainMethod>(m, "GainMethod")
        .value("greedy", GainMethod::greedy)
        .value("quantized_codeword", GainMethod::quantized_codeword)
        .value("optimal_continuous", GainMethod::optimal_continuous);
    py::enum_<GainBaseline>(m, "GainBaseline")
        .value("homogeneous", GainBaseline::homogeneous)
        .value("random_average", GainBaseline::random_average);
    m.def("gain_vs_baseline_db", &gain_vs_baseline_db, py::arg("scenario"), py::arg("method"),
          py::arg("baseline"), py::arg("trials") = 1000, py::arg("sweeps") = 3);

    m.def("initial_config", &initial_config, py::arg("scenario"));
    m.def("make_feedback", &make_feedback, py::arg("scenario"));
    m.def(
        "random_binary_config",
        [](const RisGeometry& geometry, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return random_binary_config(geometry, rng);
        },
        py::arg("geometry"), py::arg("seed"));
    m.def("drifting_ue_schedule", &drifting_ue_schedule, py::arg("scenario"),
          py::arg("azimuth_step_deg"));

    // --- misc ---------------------------------------------------------------------------------
    m.def("to_db", &to_db, py::arg("power"));
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int status = cli::run_cli(args, out, err);
            return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"),
        "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
