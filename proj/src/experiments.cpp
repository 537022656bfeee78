#include "risim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "risim/rng.hpp"
#include "risim/text.hpp"

namespace risim {
namespace {

// Seed salts keep the independent random streams of one scenario apart
// (feedback jitter vs. baseline draws) while staying reproducible.
constexpr std::uint64_t kBaselineSalt = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kReciprocitySalt = 0xc2b2ae3d27d4eb4full;

}  // namespace

// ---------------------------------------------------------------------------
// LinkSimulator
// ---------------------------------------------------------------------------

LinkSimulator::LinkSimulator(const Scenario& scenario)
    : model_(scenario.element_model),
      incidence_(scenario.ap_paths.front().direction),
      elements_(scenario.geometry.elements()),
      count_(scenario.grid.count()) {
    const ChannelMatrix ap = synthesize_channel(scenario.geometry, scenario.ap_paths, scenario.grid);
    const ChannelMatrix ue = synthesize_channel(scenario.geometry, scenario.ue_paths, scenario.grid);
    cascade_.resize(count_ * elements_);
    for (std::size_t k = 0; k < count_; ++k) {
        const auto g = ap.column(k);
        const auto h = ue.column(k);
        for (std::size_t i = 0; i < elements_; ++i) cascade_[k * elements_ + i] = g[i] * h[i];
    }
}

cvec LinkSimulator::applied_coefficients(const ReflectionConfig& config) const {
    return effective_coefficients(config, model_, incidence_);
}

double LinkSimulator::gain_at(const ReflectionConfig& config, std::size_t subcarrier) const {
    if (subcarrier >= count_) throw std::out_of_range("subcarrier index out of range");
    if (config.elements() != elements_)
        throw std::invalid_argument("configuration size does not match the scenario surface");
    const cvec omega = applied_coefficients(config);
    const std::complex<double>* row = cascade_row(subcarrier);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < elements_; ++i) sum += row[i] * omega[i];
    return std::norm(sum);
}

double LinkSimulator::wideband_power(const ReflectionConfig& config) const {
    if (config.elements() != elements_)
        throw std::invalid_argument("configuration size does not match the scenario surface");
    const cvec omega = applied_coefficients(config);
    double total = 0.0;
    for (std::size_t k = 0; k < count_; ++k) {
        const std::complex<double>* row = cascade_row(k);
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < elements_; ++i) sum += row[i] * omega[i];
        total += std::norm(sum);
    }
    return total / static_cast<double>(count_);
}

// ---------------------------------------------------------------------------
// Radiation pattern
// ---------------------------------------------------------------------------

PatternResult radiation_pattern(const RisGeometry& geometry, const ReflectionConfig& config,
                                const AngularPosition& incidence, const AngleSweep& sweep,
                                double receive_zenith_rad) {
    if (!(sweep.step_deg > 0.0)) throw std::invalid_argument("step_deg must be positive");
    if (!(sweep.stop_deg >= sweep.start_deg))
        throw std::invalid_argument("stop_deg must not be below start_deg");
    if (config.elements() != geometry.elements())
        throw std::invalid_argument("configuration size does not match the surface");

    const std::size_t count =
        static_cast<std::size_t>(
            std::floor((sweep.stop_deg - sweep.start_deg) / sweep.step_deg + 1e-9)) +
        1;
    const cvec incident = upa_response(geometry, incidence);
    const cvec& omega = config.coefficients();

    // w ⊙ a(incidence) is fixed across the sweep; fold it in once.
    cvec excitation(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) excitation[i] = omega[i] * incident[i];

    std::vector<double> linear(count);
    for (std::size_t s = 0; s < count; ++s) {
        const double azimuth_deg = sweep.start_deg + static_cast<double>(s) * sweep.step_deg;
        const AngularPosition direction(receive_zenith_rad, azimuth_deg * M_PI / 180.0);
        const cvec steer = upa_response(geometry, direction);
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < steer.size(); ++i) sum += steer[i] * excitation[i];
        linear[s] = std::norm(sum);
    }

    const auto peak_it = std::max_element(linear.begin(), linear.end());
    const std::size_t peak = static_cast<std::size_t>(peak_it - linear.begin());
    const double peak_value = *peak_it;
    if (!(peak_value > 0.0)) throw std::runtime_error("pattern is identically zero");

    PatternResult result;
    result.samples.resize(count);
    for (std::size_t s = 0; s < count; ++s) {
        result.samples[s].azimuth_deg = sweep.start_deg + static_cast<double>(s) * sweep.step_deg;
        result.samples[s].gain_db = to_db(linear[s] / peak_value);
    }
    result.main_lobe_deg = result.samples[peak].azimuth_deg;

    // Half-power edges: linear interpolation at 0.5 * peak; if a side never
    // drops below half power, the sweep edge bounds the lobe.
    const double half = 0.5 * peak_value;
    double left_edge = result.samples.front().azimuth_deg;
    for (std::size_t s = peak; s-- > 0;) {
        if (linear[s] < half) {
            const double t = (half - linear[s]) / (linear[s + 1] - linear[s]);
            left_edge = result.samples[s].azimuth_deg + t * sweep.step_deg;
            break;
        }
    }
    double right_edge = result.samples.back().azimuth_deg;
    for (std::size_t s = peak + 1; s < count; ++s) {
        if (linear[s] < half) {
            const double t = (linear[s - 1] - half) / (linear[s - 1] - linear[s]);
            right_edge = result.samples[s - 1].azimuth_deg + t * sweep.step_deg;
            break;
        }
    }
    result.half_power_beamwidth_deg = right_edge - left_edge;

    // Sidelobe level per side: the maximum beyond the first local minimum
    // encountered walking away from the peak.
    std::size_t s = peak;
    while (s > 0 && linear[s - 1] < linear[s]) --s;
    if (s > 0) {
        const double best = *std::max_element(linear.begin(), linear.begin() + s);
        result.sidelobe_left_db = to_db(best / peak_value);
    }
    s = peak;
    while (s + 1 < count && linear[s + 1] < linear[s]) ++s;
    if (s + 1 < count) {
        const double best = *std::max_element(linear.begin() + s + 1, linear.end());
        result.sidelobe_right_db = to_db(best / peak_value);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Gain budget
// ---------------------------------------------------------------------------

GainBudget ideal_gain_budget(std::size_t elements, std::size_t min_phase_draws,
                             std::uint64_t seed) {
    if (elements == 0) throw std::invalid_argument("elements must be positive");
    if (min_phase_draws == 0) throw std::invalid_argument("min_phase_draws must be positive");

    GainBudget budget;
    budget.elements = elements;
    // Perfect phase control gives coherent power L^2; the average random
    // binary configuration gives L; the ratio is the array gain.
    budget.array_gain_db = 10.0 * std::log10(static_cast<double>(elements));

    const std::size_t trials = (min_phase_draws + elements - 1) / elements;
    std::mt19937_64 rng(seed);
    const double L = static_cast<double>(elements);
    double mean_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::complex<double> aligned{0.0, 0.0};
        for (std::size_t i = 0; i < elements; ++i) {
            const double phase = uniform_range(rng, -M_PI, M_PI);
            // Perfectly aligned element contributes e^{-j phase} against the
            // two-state element that best matches it.
            const std::complex<double> ideal = std::polar(1.0, -phase);
            const bool upper = phase >= 0.0 && phase < M_PI;
            const std::complex<double> two_state =
                upper ? std::complex<double>(0.0, -1.0) : std::complex<double>(0.0, 1.0);
            aligned += ideal * two_state;
        }
        mean_ratio += std::norm(aligned) / (L * L);
    }
    mean_ratio /= static_cast<double>(trials);
    budget.one_bit_loss_db = to_db(mean_ratio);
    return budget;
}

// ---------------------------------------------------------------------------
// Brute force and baselines
// ---------------------------------------------------------------------------

BruteForceResult brute_force_optimum(const Scenario& scenario) {
    const std::size_t elements = scenario.geometry.elements();
    if (elements > 16)
        throw std::invalid_argument("brute force is limited to surfaces with at most 16 elements");
    const LinkSimulator sim(scenario);

    BruteForceResult result{ReflectionConfig::homogeneous(scenario.geometry.rows(),
                                                          scenario.geometry.cols(), 0),
                            -1.0};
    std::vector<int> states(elements, 0);
    const std::uint64_t total = 1ull << elements;
    for (std::uint64_t code = 0; code < total; ++code) {
        for (std::size_t i = 0; i < elements; ++i) states[i] = static_cast<int>((code >> i) & 1u);
        ReflectionConfig candidate =
            ReflectionConfig::from_states(scenario.geometry.rows(), scenario.geometry.cols(), states);
        const double power = sim.wideband_power(candidate);
        if (power > result.power) {
            result.power = power;
            result.config = std::move(candidate);
        }
    }
    return result;
}

ReflectionConfig initial_config(const Scenario& scenario) {
    ReflectionConfig config =
        ReflectionConfig::homogeneous(scenario.geometry.rows(), scenario.geometry.cols(), 0);
    if (scenario.grouping) config = config.with_grouping(*scenario.grouping);
    return config;
}

FeedbackChannel make_feedback(const Scenario& scenario) {
    auto sim = std::make_shared<LinkSimulator>(scenario);
    return FeedbackChannel([sim](const ReflectionConfig& config) { return sim->wideband_power(config); },
                           scenario.feedback.quantization_step_db, scenario.feedback.noise_std_db,
                           scenario.seed);
}

ReflectionConfig random_binary_config(const RisGeometry& geometry, std::mt19937_64& rng) {
    std::vector<int> states(geometry.elements());
    for (auto& s : states) s = static_cast<int>(rng() & 1ull);
    return ReflectionConfig::from_states(geometry.rows(), geometry.cols(), states);
}

double gain_vs_baseline_db(const Scenario& scenario, GainMethod method, GainBaseline baseline,
                           std::size_t trials, std::size_t sweeps) {
    const LinkSimulator sim(scenario);
    const AngularPosition& arrival = scenario.ue_paths.front().direction;
    const AngularPosition& incidence = scenario.ap_paths.front().direction;

    double method_power = 0.0;
    switch (method) {
        case GainMethod::optimal_continuous:
            method_power =
                sim.wideband_power(optimal_continuous(scenario.geometry, arrival, incidence));
            break;
        case GainMethod::quantized_codeword: {
            const Codeword codeword = nearest_codeword(scenario.geometry, arrival, incidence);
            ReflectionConfig config = quantize_1bit(to_config(scenario.geometry, codeword));
            if (scenario.grouping) config = apply_grouping(config, *scenario.grouping);
            method_power = sim.wideband_power(config);
            break;
        }
        case GainMethod::greedy: {
            FeedbackChannel feedback = make_feedback(scenario);
            const GreedyTrace trace = greedy_beamform(initial_config(scenario), feedback, sweeps);
            // Score on the true link power, not the (possibly noisy) report.
            method_power = trace.final_true;
            break;
        }
    }

    double baseline_power = 0.0;
    switch (baseline) {
        case GainBaseline::homogeneous:
            baseline_power = sim.wideband_power(initial_config(scenario));
            break;
        case GainBaseline::random_average: {
            if (trials == 0) throw std::invalid_argument("trials must be positive");
            std::mt19937_64 rng(scenario.seed ^ kBaselineSalt);
            double total = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
                total += sim.wideband_power(random_binary_config(scenario.geometry, rng));
            baseline_power = total / static_cast<double>(trials);
            break;
        }
    }
    return 10.0 * std::log10(method_power / baseline_power);
}

std::function<FeedbackChannel(std::size_t)> drifting_ue_schedule(const Scenario& scenario,
                                                                 double azimuth_step_deg) {
    return [scenario, azimuth_step_deg](std::size_t epoch) {
        Scenario drifted = scenario;
        PropagationPath& path = drifted.ue_paths.front();
        const double azimuth =
            path.direction.azimuth() + azimuth_step_deg * M_PI / 180.0 * static_cast<double>(epoch);
        path.direction = AngularPosition(path.direction.zenith(), azimuth);
        drifted.seed = scenario.seed + epoch;
        return make_feedback(drifted);
    };
}

}  // namespace risim
