#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "risim/config.hpp"

namespace risim {

/// Delivers scalar received-power reports for candidate configurations. The
/// report can be degraded by a dB-domain gaussian measurement error and by
/// rounding to a reporting step (both zero by default, making reports exact
/// and repeated measurements of one config identical).
class FeedbackChannel {
public:
    using PowerFn = std::function<double(const ReflectionConfig&)>;

    explicit FeedbackChannel(PowerFn true_power, double quantization_step_db = 0.0,
                             double noise_std_db = 0.0, std::uint64_t rng_seed = 1);

    struct Measurement {
        double reported;    // what the optimizer sees
        double true_power;  // what the link actually delivered
    };

    /// One feedback report. Throws std::runtime_error when the underlying
    /// power contract returns a negative or non-finite value.
    Measurement measure(const ReflectionConfig& config);

    bool exact() const noexcept { return step_db_ == 0.0 && noise_db_ == 0.0; }
    double quantization_step_db() const noexcept { return step_db_; }
    double noise_std_db() const noexcept { return noise_db_; }

private:
    PowerFn true_power_;
    double step_db_;
    double noise_db_;
    std::mt19937_64 rng_;
};

enum class FlipKind { column, row };

struct GreedyStep {
    std::size_t step;        // 1-based position in the trace
    std::size_t sweep;       // 0-based sweep index
    FlipKind kind;
    std::size_t index;       // column index, or row(-group) index
    double candidate_power;  // reported power with the flip applied
    double candidate_true;   // true power with the flip applied
    bool accepted;
    double running_best;     // reported power of the kept config after this step
};

struct GreedyTrace {
    double initial_power = 0.0;  // reported power of the start config
    double initial_true = 0.0;
    std::vector<GreedyStep> steps;
    ReflectionConfig final_config;
    double final_power = 0.0;  // reported power of the kept config
    double final_true = 0.0;
    std::size_t sweep_count = 0;

    /// CSV export: step, flip type, flip index, candidate power in dB,
    /// accepted flag, running best in dB. Row 0 is the initial measurement.
    void write_csv(std::ostream& out) const;
};

/// Greedy configuration search: per sweep, tentatively negate each column in
/// turn, then each row (row group when the config carries a grouping tag),
/// keeping a flip only when the reported power strictly improves and
/// reverting it otherwise. Issues exactly cols + row_groups measurements per
/// sweep, plus one initial measurement before the first sweep. The initial
/// config must be binary.
GreedyTrace greedy_beamform(const ReflectionConfig& initial, FeedbackChannel& fb,
                            std::size_t sweeps);

/// Runs greedy sweeps across a drifting scenario: schedule(epoch) builds the
/// feedback contract for that epoch, and each epoch warm-starts from the
/// previous epoch's final configuration. Returns one trace per epoch.
std::vector<GreedyTrace> track_continuously(
    const ReflectionConfig& initial, const std::function<FeedbackChannel(std::size_t)>& schedule,
    std::size_t epochs, std::size_t sweeps_per_epoch);

}  // namespace risim
