#include "risim/greedy.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "risim/rng.hpp"
#include "risim/text.hpp"

namespace risim {

FeedbackChannel::FeedbackChannel(PowerFn true_power, double quantization_step_db,
                                 double noise_std_db, std::uint64_t rng_seed)
    : true_power_(std::move(true_power)),
      step_db_(quantization_step_db),
      noise_db_(noise_std_db),
      rng_(rng_seed) {
    if (!true_power_) {
        throw std::invalid_argument("FeedbackChannel: power contract must be callable");
    }
    if (!(step_db_ >= 0.0) || !(noise_db_ >= 0.0)) {
        throw std::invalid_argument(
            "FeedbackChannel: quantization step and noise deviation must be nonnegative");
    }
}

FeedbackChannel::Measurement FeedbackChannel::measure(const ReflectionConfig& config) {
    const double power = true_power_(config);
    if (!std::isfinite(power) || power < 0.0) {
        throw std::runtime_error("FeedbackChannel: power contract returned " +
                                 format_double(power) + ", expected a finite nonnegative value");
    }
    double reported = power;
    if (noise_db_ > 0.0) {
        // Draw even for zero power so the noise stream stays aligned with the
        // measurement sequence.
        const double jitter_db = normal(rng_, noise_db_);
        if (power > 0.0) {
            reported = power * std::pow(10.0, jitter_db / 10.0);
        }
    }
    if (step_db_ > 0.0 && reported > 0.0) {
        const double db = 10.0 * std::log10(reported);
        reported = std::pow(10.0, step_db_ * std::round(db / step_db_) / 10.0);
    }
    return {reported, power};
}

GreedyTrace greedy_beamform(const ReflectionConfig& initial, FeedbackChannel& fb,
                            std::size_t sweeps) {
    if (!initial.is_binary()) {
        throw std::invalid_argument("greedy_beamform: initial config must be binary");
    }
    GreedyTrace trace;
    ReflectionConfig current = initial;
    const auto first = fb.measure(current);
    trace.initial_power = first.reported;
    trace.initial_true = first.true_power;
    trace.steps.reserve(sweeps * (current.cols() + current.row_groups()));

    double best = first.reported;
    double best_true = first.true_power;
    std::size_t step = 0;
    auto try_flip = [&](std::size_t sweep, FlipKind kind, std::size_t index, auto&& flip) {
        flip();
        const auto meas = fb.measure(current);
        const bool accepted = meas.reported > best;  // strict improvement only
        if (accepted) {
            best = meas.reported;
            best_true = meas.true_power;
        } else {
            flip();  // negation is an exact involution, so this restores bitwise
        }
        trace.steps.push_back(
            {++step, sweep, kind, index, meas.reported, meas.true_power, accepted, best});
    };

    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t n = 0; n < current.cols(); ++n) {
            try_flip(sweep, FlipKind::column, n, [&] { current.flip_column(n); });
        }
        for (std::size_t r = 0; r < current.row_groups(); ++r) {
            try_flip(sweep, FlipKind::row, r, [&] { current.flip_row_group(r); });
        }
    }
    trace.sweep_count = sweeps;
    trace.final_config = std::move(current);
    trace.final_power = best;
    trace.final_true = best_true;
    return trace;
}

void GreedyTrace::write_csv(std::ostream& out) const {
    out << "step,flip_type,flip_index,candidate_power_db,accepted,running_best_db\n";
    out << "0,init,-1," << format_double(to_db(initial_power)) << ",true,"
        << format_double(to_db(initial_power)) << '\n';
    for (const GreedyStep& s : steps) {
        out << s.step << ',' << (s.kind == FlipKind::column ? "column" : "row") << ',' << s.index
            << ',' << format_double(to_db(s.candidate_power)) << ','
            << (s.accepted ? "true" : "false") << ',' << format_double(to_db(s.running_best))
            << '\n';
    }
}

std::vector<GreedyTrace> track_continuously(
    const ReflectionConfig& initial, const std::function<FeedbackChannel(std::size_t)>& schedule,
    std::size_t epochs, std::size_t sweeps_per_epoch) {
    if (!schedule) {
        throw std::invalid_argument("track_continuously: schedule must be callable");
    }
    std::vector<GreedyTrace> traces;
    traces.reserve(epochs);
    ReflectionConfig current = initial;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        FeedbackChannel fb = schedule(epoch);
        traces.push_back(greedy_beamform(current, fb, sweeps_per_epoch));
        current = traces.back().final_config;
    }
    return traces;
}

}  // namespace risim
