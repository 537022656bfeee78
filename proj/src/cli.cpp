#include "risim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "risim/beamforming.hpp"
#include "risim/experiments.hpp"
#include "risim/scenario.hpp"
#include "risim/text.hpp"

namespace risim::cli {
namespace {

constexpr std::uint64_t kReciprocitySalt = 0xc2b2ae3d27d4eb4full;

int code(ExitCode c) { return static_cast<int>(c); }

// ---------------------------------------------------------------------------
// Table output: one writer, two formats. CSV is header + comma rows;
// json-lines is one JSON object per row. Numbers render via format_double in
// both, so csv output is byte-stable and json stays parseable (non-finite
// numbers become null).
// ---------------------------------------------------------------------------

enum class Format { csv, json_lines };

struct Cell {
    enum class Kind { number, integer, text, boolean };

    static Cell number(double v) {
        Cell c;
        c.kind = Kind::number;
        c.finite = std::isfinite(v);
        c.value = format_double(v);
        return c;
    }
    static Cell integer(long long v) {
        Cell c;
        c.kind = Kind::integer;
        c.value = std::to_string(v);
        return c;
    }
    static Cell size(std::size_t v) { return integer(static_cast<long long>(v)); }
    static Cell text(std::string v) {
        Cell c;
        c.kind = Kind::text;
        c.value = std::move(v);
        return c;
    }
    static Cell boolean(bool v) {
        Cell c;
        c.kind = Kind::boolean;
        c.value = v ? "true" : "false";
        return c;
    }

    Kind kind = Kind::text;
    bool finite = true;
    std::string value;
};

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

class TableWriter {
public:
    TableWriter(std::ostream& out, Format format, std::vector<std::string> columns)
        : out_(out), format_(format), columns_(std::move(columns)) {
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                if (i > 0) out_ << ',';
                out_ << columns_[i];
            }
            out_ << '\n';
        }
    }

    void row(const std::vector<Cell>& cells) {
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i > 0) out_ << ',';
                out_ << cells[i].value;
            }
            out_ << '\n';
            return;
        }
        out_ << '{';
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out_ << ',';
            out_ << json_quote(columns_[i]) << ':';
            const Cell& c = cells[i];
            switch (c.kind) {
                case Cell::Kind::number:
                    out_ << (c.finite ? c.value : "null");
                    break;
                case Cell::Kind::integer:
                case Cell::Kind::boolean:
                    out_ << c.value;
                    break;
                case Cell::Kind::text:
                    out_ << json_quote(c.value);
                    break;
            }
        }
        out_ << "}\n";
    }

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
};

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

Scenario scenario_for(const CommandSpec& spec) {
    Scenario scenario = resolve_scenario(spec.scenario);
    if (spec.seed_override) scenario.seed = *spec.seed_override;
    return scenario;
}

int usage_error(std::ostream& err, const std::string& message) {
    err << "risim: " << message << '\n';
    return code(ExitCode::usage);
}

std::string optional_db(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string("none");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_pattern(const CommandSpec& spec, Format format, std::ostream& data, std::ostream& err) {
    if (!(spec.step_deg > 0.0)) {
        return usage_error(err, "--step must be positive");
    }
    if (spec.stop_deg < spec.start_deg) {
        return usage_error(err, "--stop must not be below --start");
    }
    const Scenario scenario = scenario_for(spec);
    const RisGeometry& geom = scenario.geometry;
    const AngularPosition& incidence = scenario.ap_paths.front().direction;
    const AngularPosition& arrival = scenario.ue_paths.front().direction;

    ReflectionConfig config;
    if (spec.source == "quantized-codeword") {
        config = quantize_1bit(to_config(geom, nearest_codeword(geom, arrival, incidence)));
        if (scenario.grouping) config = apply_grouping(config, *scenario.grouping);
    } else if (spec.source == "quantized-optimal") {
        config = quantize_1bit(optimal_continuous(geom, arrival, incidence));
        if (scenario.grouping) config = apply_grouping(config, *scenario.grouping);
    } else if (spec.source == "optimal") {
        config = optimal_continuous(geom, arrival, incidence);
    } else if (spec.source == "homogeneous") {
        config = initial_config(scenario);
    } else {
        return usage_error(err, "unknown pattern source '" + spec.source + "'");
    }

    // Under an impaired element model, sweep the coefficients the hardware
    // would actually present, not the commanded ideal ones.
    if (scenario.element_model.mode() == ElementResponseMode::angle_dependent &&
        config.is_binary()) {
        config = ReflectionConfig::from_coefficients(
            geom.rows(), geom.cols(),
            effective_coefficients(config, scenario.element_model, incidence));
    }

    const PatternResult pattern = radiation_pattern(
        geom, config, incidence, AngleSweep{spec.start_deg, spec.stop_deg, spec.step_deg});

    TableWriter table(data, format, {"azimuth_deg", "gain_db"});
    for (const PatternSample& sample : pattern.samples) {
        table.row({Cell::number(sample.azimuth_deg), Cell::number(sample.gain_db)});
    }
    err << "main_lobe_deg = " << format_double(pattern.main_lobe_deg) << '\n';
    err << "half_power_beamwidth_deg = " << format_double(pattern.half_power_beamwidth_deg)
        << '\n';
    err << "sidelobe_left_db = " << optional_db(pattern.sidelobe_left_db) << '\n';
    err << "sidelobe_right_db = " << optional_db(pattern.sidelobe_right_db) << '\n';
    return code(ExitCode::ok);
}

int run_greedy(const CommandSpec& spec, Format format, std::ostream& data, std::ostream& err) {
    const Scenario scenario = scenario_for(spec);
    FeedbackChannel feedback = make_feedback(scenario);
    const GreedyTrace trace = greedy_beamform(initial_config(scenario), feedback, spec.sweeps);

    TableWriter table(data, format,
                      {"step", "flip_type", "flip_index", "candidate_power_db", "accepted",
                       "running_best_db"});
    table.row({Cell::integer(0), Cell::text("init"), Cell::integer(-1),
               Cell::number(to_db(trace.initial_power)), Cell::boolean(true),
               Cell::number(to_db(trace.initial_power))});
    for (const GreedyStep& s : trace.steps) {
        table.row({Cell::size(s.step), Cell::text(s.kind == FlipKind::column ? "column" : "row"),
                   Cell::size(s.index), Cell::number(to_db(s.candidate_power)),
                   Cell::boolean(s.accepted), Cell::number(to_db(s.running_best))});
    }
    err << "initial_power_db = " << format_double(to_db(trace.initial_power)) << '\n';
    err << "final_power_db = " << format_double(to_db(trace.final_power)) << '\n';
    err << "improvement_db = "
        << format_double(to_db(trace.final_power) - to_db(trace.initial_power)) << '\n';
    err << "measurements = " << trace.steps.size() + 1 << '\n';
    err << "sweeps = " << trace.sweep_count << '\n';
    return code(ExitCode::ok);
}

int run_gain(const CommandSpec& spec, Format format, std::ostream& data, std::ostream& err) {
    GainMethod method;
    if (spec.method == "greedy") {
        method = GainMethod::greedy;
    } else if (spec.method == "quantized-codeword") {
        method = GainMethod::quantized_codeword;
    } else if (spec.method == "optimal-continuous") {
        method = GainMethod::optimal_continuous;
    } else {
        return usage_error(err, "unknown gain method '" + spec.method + "'");
    }
    GainBaseline baseline;
    if (spec.baseline == "homogeneous") {
        baseline = GainBaseline::homogeneous;
    } else if (spec.baseline == "random-average") {
        baseline = GainBaseline::random_average;
    } else {
        return usage_error(err, "unknown gain baseline '" + spec.baseline + "'");
    }

    const Scenario scenario = scenario_for(spec);
    const double gain_db =
        gain_vs_baseline_db(scenario, method, baseline, spec.trials, spec.sweeps);

    TableWriter table(data, format, {"method", "baseline", "gain_db"});
    table.row({Cell::text(spec.method), Cell::text(spec.baseline), Cell::number(gain_db)});
    err << "gain_db = " << format_double(gain_db) << '\n';
    return code(ExitCode::ok);
}

int run_codebook(const CommandSpec& spec, Format format, std::ostream& data, std::ostream& err) {
    const Scenario scenario = scenario_for(spec);
    const RisGeometry& geom = scenario.geometry;

    if (spec.list_only) {
        if (spec.bias_states || spec.row_index || spec.col_index) {
            return usage_error(err, "--list cannot be combined with a codeword selection");
        }
        TableWriter table(data, format, {"row_index", "col_index"});
        for (std::size_t p = 0; p < geom.rows(); ++p) {
            for (std::size_t q = 0; q < geom.cols(); ++q) {
                table.row({Cell::size(p), Cell::size(q)});
            }
        }
        err << "codewords = " << geom.elements() << '\n';
        return code(ExitCode::ok);
    }

    std::size_t p = 0;
    std::size_t q = 0;
    if (spec.row_index || spec.col_index) {
        if (!spec.row_index || !spec.col_index) {
            return usage_error(err, "--row-index and --col-index must be given together");
        }
        p = *spec.row_index;
        q = *spec.col_index;
        if (p >= geom.rows() || q >= geom.cols()) {
            return usage_error(err, "codeword index out of range for this surface");
        }
    } else {
        const Codeword nearest = nearest_codeword(geom, scenario.ue_paths.front().direction,
                                                  scenario.ap_paths.front().direction);
        p = nearest.row_index;
        q = nearest.col_index;
    }
    const Codeword codeword = dft_codeword(geom, p, q);
    err << "row_index = " << p << '\n';
    err << "col_index = " << q << '\n';

    if (spec.bias_states) {
        if (!scenario.grouping) {
            return usage_error(err, "--bias-states needs a scenario with group_rows set");
        }
        const ReflectionConfig config =
            apply_grouping(quantize_1bit(to_config(geom, codeword)), *scenario.grouping);
        TableWriter table(data, format, {"column", "group", "state"});
        const std::size_t g = config.grouping().value_or(1);
        for (std::size_t n = 0; n < config.cols(); ++n) {
            for (std::size_t group = 0; group < config.row_groups(); ++group) {
                table.row({Cell::size(n), Cell::size(group),
                           Cell::integer(config.state_at(group * g, n))});
            }
        }
        return code(ExitCode::ok);
    }

    TableWriter table(data, format, {"row_index", "col_index", "m", "n", "phase_deg"});
    for (std::size_t n = 0; n < geom.cols(); ++n) {
        for (std::size_t m = 0; m < geom.rows(); ++m) {
            const double deg = std::arg(codeword.coefficients[n * geom.rows() + m]) * 180.0 / M_PI;
            table.row({Cell::size(p), Cell::size(q), Cell::size(m), Cell::size(n),
                       Cell::number(deg)});
        }
    }
    return code(ExitCode::ok);
}

int run_budget(const CommandSpec& spec, Format format, std::ostream& data, std::ostream& err) {
    if (spec.elements == 0) {
        return usage_error(err, "budget needs --elements with a positive element count");
    }
    const GainBudget budget =
        ideal_gain_budget(spec.elements, spec.trials, spec.seed_override.value_or(1));
    TableWriter table(data, format, {"elements", "array_gain_db", "one_bit_loss_db"});
    table.row({Cell::size(budget.elements), Cell::number(budget.array_gain_db),
               Cell::number(budget.one_bit_loss_db)});
    err << "array_gain_db = " << format_double(budget.array_gain_db) << '\n';
    err << "one_bit_loss_db = " << format_double(budget.one_bit_loss_db) << '\n';
    return code(ExitCode::ok);
}

int run_reciprocity(const CommandSpec& spec, Format format, std::ostream& data,
                    std::ostream& err) {
    const Scenario scenario = scenario_for(spec);
    std::mt19937_64 rng(scenario.seed ^ kReciprocitySalt);
    const ReflectionConfig config = random_binary_config(scenario.geometry, rng);
    const ReciprocityReport report =
        reciprocity_check(scenario.geometry, scenario.ap_paths, scenario.ue_paths, scenario.grid,
                          config, scenario.element_model);

    TableWriter table(data, format, {"reciprocal", "max_deviation"});
    table.row({Cell::boolean(report.reciprocal), Cell::number(report.max_deviation)});
    err << "reciprocal = " << (report.reciprocal ? "true" : "false") << '\n';
    err << "max_deviation = " << format_double(report.max_deviation) << '\n';
    if (!report.reciprocal) {
        err << "risim: reciprocity violated beyond tolerance\n";
        return code(ExitCode::runtime);
    }
    return code(ExitCode::ok);
}

}  // namespace

int run(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
    Format format;
    if (spec.format == "csv") {
        format = Format::csv;
    } else if (spec.format == "json-lines") {
        format = Format::json_lines;
    } else {
        return usage_error(err, "unknown format '" + spec.format + "'");
    }

    std::ofstream file;
    std::ostream* data = &out;
    if (!spec.output_path.empty()) {
        file.open(spec.output_path, std::ios::binary);
        if (!file) {
            err << "risim: cannot open '" << spec.output_path << "' for writing\n";
            return code(ExitCode::runtime);
        }
        data = &file;
    }

    try {
        if (spec.subcommand == "pattern") return run_pattern(spec, format, *data, err);
        if (spec.subcommand == "greedy") return run_greedy(spec, format, *data, err);
        if (spec.subcommand == "gain") return run_gain(spec, format, *data, err);
        if (spec.subcommand == "codebook") return run_codebook(spec, format, *data, err);
        if (spec.subcommand == "budget") return run_budget(spec, format, *data, err);
        if (spec.subcommand == "reciprocity") return run_reciprocity(spec, format, *data, err);
        return usage_error(err, "unknown subcommand '" + spec.subcommand + "'");
    } catch (const ScenarioError& e) {
        err << "risim: " << e.what() << '\n';
        return code(ExitCode::scenario_invalid);
    } catch (const std::exception& e) {
        err << "risim: " << e.what() << '\n';
        return code(ExitCode::runtime);
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandSpec spec;
    CLI::App app{"RIS link, codebook, and greedy-search simulator", "risim"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* cmd, bool with_scenario) {
        if (with_scenario) {
            cmd->add_option("--scenario", spec.scenario,
                            "Preset name (prototype, small, chamber) or scenario file path")
                ->capture_default_str();
        }
        cmd->add_option("--out", spec.output_path,
                        "Write the data table to this file instead of stdout");
        cmd->add_option("--seed", spec.seed_override, "Override the scenario seed");
        cmd->add_option("--format", spec.format, "Table format")
            ->check(CLI::IsMember({"csv", "json-lines"}))
            ->capture_default_str();
    };

    CLI::App* pattern = app.add_subcommand("pattern", "Azimuth cut of a configured surface");
    add_common(pattern, true);
    pattern
        ->add_option("--source", spec.source, "Which configuration to sweep")
        ->check(CLI::IsMember({"quantized-codeword", "quantized-optimal", "optimal",
                               "homogeneous"}))
        ->capture_default_str();
    pattern->add_option("--start", spec.start_deg, "Sweep start azimuth, degrees")
        ->capture_default_str();
    pattern->add_option("--stop", spec.stop_deg, "Sweep stop azimuth, degrees")
        ->capture_default_str();
    pattern->add_option("--step", spec.step_deg, "Sweep step, degrees")->capture_default_str();

    CLI::App* greedy =
        app.add_subcommand("greedy", "Feedback-driven greedy configuration search");
    add_common(greedy, true);
    greedy->add_option("--sweeps", spec.sweeps, "Number of full sweeps")->capture_default_str();

    CLI::App* gain = app.add_subcommand("gain", "Beamforming gain over a baseline");
    add_common(gain, true);
    gain->add_option("--method", spec.method, "Configuration method to score")
        ->check(CLI::IsMember({"greedy", "quantized-codeword", "optimal-continuous"}))
        ->capture_default_str();
    gain->add_option("--baseline", spec.baseline, "Reference power")
        ->check(CLI::IsMember({"homogeneous", "random-average"}))
        ->capture_default_str();
    gain->add_option("--trials", spec.trials, "Random-baseline draws")->capture_default_str();
    gain->add_option("--sweeps", spec.sweeps, "Greedy sweeps (default 3)");

    CLI::App* codebook = app.add_subcommand("codebook", "Planar DFT codebook inspection");
    add_common(codebook, true);
    codebook->add_option("--row-index", spec.row_index, "Row DFT index p");
    codebook->add_option("--col-index", spec.col_index, "Column DFT index q");
    codebook->add_flag("--list", spec.list_only, "List all codeword index pairs");
    codebook->add_flag("--bias-states", spec.bias_states,
                       "Emit the grouped bias states of the quantized codeword");

    CLI::App* budget = app.add_subcommand("budget", "Idealized array-gain budget");
    add_common(budget, false);
    budget->add_option("--elements", spec.elements, "Number of surface elements")->required();
    budget->add_option("--trials", spec.trials, "Minimum element-phase draws (default 100000)");

    CLI::App* reciprocity =
        app.add_subcommand("reciprocity", "Uplink/downlink reciprocity check");
    add_common(reciprocity, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return code(ExitCode::ok);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return code(ExitCode::usage);
    }

    // Per-subcommand defaults that differ from the struct defaults.
    if (gain->parsed() && gain->count("--sweeps") == 0) spec.sweeps = 3;
    if (budget->parsed() && budget->count("--trials") == 0) spec.trials = 100000;

    spec.subcommand = app.get_subcommands().front()->get_name();
    return run(spec, out, err);
}

}  // namespace risim::cli
