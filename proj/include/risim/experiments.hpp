#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "risim/beamforming.hpp"
#include "risim/channel.hpp"
#include "risim/config.hpp"
#include "risim/geometry.hpp"
#include "risim/greedy.hpp"
#include "risim/scenario.hpp"

namespace risim {

/// Link-level simulator for one scenario. The per-subcarrier cascade of the
/// two channels is precomputed once, so evaluating a configuration costs one
/// dot product per subcarrier.
class LinkSimulator {
public:
    explicit LinkSimulator(const Scenario& scenario);

    /// Received power |(g_k ⊙ h_k)ᵀ ω|² at one subcarrier.
    double gain_at(const ReflectionConfig& config, std::size_t subcarrier) const;

    /// Mean received power across all subcarriers — the quantity a
    /// power-meter style feedback link reports.
    double wideband_power(const ReflectionConfig& config) const;

    std::size_t subcarriers() const { return count_; }
    std::size_t elements() const { return elements_; }
    const AngularPosition& incidence() const { return incidence_; }

private:
    const std::complex<double>* cascade_row(std::size_t subcarrier) const {
        return cascade_.data() + subcarrier * elements_;
    }
    cvec applied_coefficients(const ReflectionConfig& config) const;

    ElementResponseModel model_;
    AngularPosition incidence_;
    std::size_t elements_;
    std::size_t count_;
    cvec cascade_;  // [subcarrier * elements + element]
};

/// One sample of an azimuth cut.
struct PatternSample {
    double azimuth_deg;
    double gain_db;  // normalized so the strongest sample is exactly 0 dB
};

/// Azimuth sweep description, degrees.
struct AngleSweep {
    double start_deg = -90.0;
    double stop_deg = 90.0;
    double step_deg = 0.1;
};

/// An azimuth cut plus the features tests and reports care about. Sidelobe
/// levels are relative to the main lobe and absent when the sweep ends
/// before the first null on that side.
struct PatternResult {
    std::vector<PatternSample> samples;
    double main_lobe_deg = 0.0;
    double half_power_beamwidth_deg = 0.0;
    std::optional<double> sidelobe_left_db;
    std::optional<double> sidelobe_right_db;
};

/// Sweeps the receive azimuth at fixed zenith and returns the normalized
/// power pattern of `config` under plane-wave illumination from `incidence`.
PatternResult radiation_pattern(const RisGeometry& geometry, const ReflectionConfig& config,
                                const AngularPosition& incidence, const AngleSweep& sweep,
                                double receive_zenith_rad = 1.5707963267948966);

/// Idealized link-budget numbers for a surface with `elements` elements:
/// the array gain of perfect continuous phase control over the average
/// random configuration, and the penalty of rounding perfect phases to two
/// states (Monte Carlo over at least `min_phase_draws` element phases).
struct GainBudget {
    std::size_t elements = 0;
    double array_gain_db = 0.0;
    double one_bit_loss_db = 0.0;
};

GainBudget ideal_gain_budget(std::size_t elements, std::size_t min_phase_draws = 100000,
                             std::uint64_t seed = 1);

/// Exhaustive search over all 2^L binary configurations. Refuses surfaces
/// with more than 16 elements. Grouping constraints are ignored: the result
/// is the unconstrained binary optimum.
struct BruteForceResult {
    ReflectionConfig config;
    double power = 0.0;
};

BruteForceResult brute_force_optimum(const Scenario& scenario);

enum class GainMethod { greedy, quantized_codeword, optimal_continuous };
enum class GainBaseline { homogeneous, random_average };

/// Wideband power of `method` over `baseline`, in dB, for one scenario.
/// The random-average baseline draws `trials` unconstrained binary
/// configurations (seeded from the scenario); greedy runs `sweeps` sweeps
/// from the homogeneous start and is scored on its true final power.
double gain_vs_baseline_db(const Scenario& scenario, GainMethod method, GainBaseline baseline,
                           std::size_t trials = 1000, std::size_t sweeps = 3);

/// The all-zero-state configuration, grouped as the scenario demands.
ReflectionConfig initial_config(const Scenario& scenario);

/// Feedback channel measuring wideband power on this scenario's link,
/// with the scenario's quantization/noise settings and seed.
FeedbackChannel make_feedback(const Scenario& scenario);

/// Uniform random binary configuration (ungrouped).
ReflectionConfig random_binary_config(const RisGeometry& geometry, std::mt19937_64& rng);

/// Epoch-indexed feedback schedule in which the receive direction drifts by
/// `azimuth_step_deg` per epoch. Epoch 0 is the unmodified scenario.
std::function<FeedbackChannel(std::size_t)> drifting_ue_schedule(const Scenario& scenario,
                                                                 double azimuth_step_deg);

}  // namespace risim
