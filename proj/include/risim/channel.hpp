#pragma once

#include <complex>
#include <random>
#include <span>
#include <vector>

#include "risim/config.hpp"
#include "risim/element_model.hpp"
#include "risim/geometry.hpp"
#include "risim/rng.hpp"

namespace risim {

/// One geometric propagation path between a terminal and the surface.
struct PropagationPath {
    PropagationPath(std::complex<double> gain_, AngularPosition direction_, double delay_s_);

    std::complex<double> gain;  // complex path gain
    AngularPosition direction;  // direction seen from the array
    double delay_s;             // propagation delay, seconds, >= 0
};

/// The subcarrier frequencies a wideband link is evaluated on.
class SubcarrierGrid {
public:
    /// Frequencies must be strictly increasing, positive, and non-empty.
    explicit SubcarrierGrid(std::vector<double> frequencies_hz);

    /// count subcarriers spaced spacing_hz apart, centered on center_hz.
    static SubcarrierGrid uniform(std::size_t count, double center_hz, double spacing_hz);

    std::size_t count() const noexcept { return frequencies_.size(); }
    const std::vector<double>& frequencies() const noexcept { return frequencies_; }

private:
    std::vector<double> frequencies_;
};

/// Per-subcarrier channel vectors between one terminal and the surface,
/// stored as an (elements x subcarriers) matrix, column-major by subcarrier.
class ChannelMatrix {
public:
    ChannelMatrix(std::size_t elements, std::size_t subcarriers);

    std::size_t elements() const noexcept { return elements_; }
    std::size_t subcarriers() const noexcept { return subcarriers_; }

    std::complex<double>& at(std::size_t element, std::size_t subcarrier);
    const std::complex<double>& at(std::size_t element, std::size_t subcarrier) const;

    /// Channel vector of one subcarrier (length elements()).
    std::span<const std::complex<double>> column(std::size_t subcarrier) const;

private:
    std::size_t elements_;
    std::size_t subcarriers_;
    cvec data_;  // data_[k * elements_ + i]
};

/// Delay steering vector: entry k = exp(-j 2pi f_k tau).
cvec delay_response(const SubcarrierGrid& grid, double delay_s);

/// Multipath channel matrix: sum over paths of
/// gain * upa_response(direction) * delay_response(delay)^T.
/// Throws std::invalid_argument on an empty path list (degenerate scenario).
ChannelMatrix synthesize_channel(const RisGeometry& geom,
                                 const std::vector<PropagationPath>& paths,
                                 const SubcarrierGrid& grid);

/// Narrowband received sample on one subcarrier:
/// (g ⊙ h)^T omega * x + noise, with omega the column-major coefficients of
/// config. Vector lengths must match config.elements().
std::complex<double> received_symbol(std::span<const std::complex<double>> g,
                                     std::span<const std::complex<double>> h,
                                     const ReflectionConfig& config,
                                     std::complex<double> x,
                                     std::complex<double> noise);

/// End-to-end power gain |(g ⊙ h)^T omega|^2 on one subcarrier. For
/// single-path channels the value is the same on every subcarrier.
double end_to_end_gain(std::span<const std::complex<double>> g,
                       std::span<const std::complex<double>> h,
                       const ReflectionConfig& config);

struct ReciprocityReport {
    bool reciprocal;       // max_deviation <= 1e-12
    double max_deviation;  // worst relative forward/reverse mismatch over subcarriers
};

/// Evaluates the scalar cascaded channel in both link directions under one
/// fixed configuration and reports their worst relative deviation. The two
/// directions are accumulated in opposite element order so the comparison is
/// a genuine numerical check rather than a syntactic identity.
ReciprocityReport reciprocity_check(const RisGeometry& geom,
                                    const std::vector<PropagationPath>& ap_paths,
                                    const std::vector<PropagationPath>& ue_paths,
                                    const SubcarrierGrid& grid,
                                    const ReflectionConfig& config);

/// Same check with the element coefficients mapped through a response model
/// (the incident angle is the first AP path's direction).
ReciprocityReport reciprocity_check(const RisGeometry& geom,
                                    const std::vector<PropagationPath>& ap_paths,
                                    const std::vector<PropagationPath>& ue_paths,
                                    const SubcarrierGrid& grid,
                                    const ReflectionConfig& config,
                                    const ElementResponseModel& model);

/// Circularly-symmetric complex gaussian receiver noise sample.
inline std::complex<double> sample_noise(std::mt19937_64& rng, double variance) {
    return variance > 0.0 ? complex_normal(rng, variance) : std::complex<double>{0.0, 0.0};
}

}  // namespace risim
