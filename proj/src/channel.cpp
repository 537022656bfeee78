#include "risim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risim {

PropagationPath::PropagationPath(std::complex<double> gain_, AngularPosition direction_,
                                 double delay_s_)
    : gain(gain_), direction(direction_), delay_s(delay_s_) {
    if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag())) {
        throw std::invalid_argument("PropagationPath: gain must be finite");
    }
    if (!(delay_s >= 0.0) || !std::isfinite(delay_s)) {
        throw std::invalid_argument("PropagationPath: delay must be nonnegative and finite");
    }
}

SubcarrierGrid::SubcarrierGrid(std::vector<double> frequencies_hz)
    : frequencies_(std::move(frequencies_hz)) {
    if (frequencies_.empty()) {
        throw std::invalid_argument("SubcarrierGrid: at least one subcarrier required");
    }
    for (std::size_t k = 0; k < frequencies_.size(); ++k) {
        if (!(frequencies_[k] > 0.0) || !std::isfinite(frequencies_[k])) {
            throw std::invalid_argument("SubcarrierGrid: frequencies must be positive and finite");
        }
        if (k > 0 && !(frequencies_[k] > frequencies_[k - 1])) {
            throw std::invalid_argument("SubcarrierGrid: frequencies must be strictly increasing");
        }
    }
}

SubcarrierGrid SubcarrierGrid::uniform(std::size_t count, double center_hz, double spacing_hz) {
    if (count < 1) {
        throw std::invalid_argument("SubcarrierGrid: at least one subcarrier required");
    }
    if (!(spacing_hz > 0.0) && count > 1) {
        throw std::invalid_argument("SubcarrierGrid: spacing must be positive");
    }
    std::vector<double> freqs(count);
    const double offset = 0.5 * static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        freqs[k] = center_hz + (static_cast<double>(k) - offset) * spacing_hz;
    }
    return SubcarrierGrid(std::move(freqs));
}

ChannelMatrix::ChannelMatrix(std::size_t elements, std::size_t subcarriers)
    : elements_(elements), subcarriers_(subcarriers), data_(elements * subcarriers) {
    if (elements_ < 1 || subcarriers_ < 1) {
        throw std::invalid_argument("ChannelMatrix: dimensions must be at least 1");
    }
}

std::complex<double>& ChannelMatrix::at(std::size_t element, std::size_t subcarrier) {
    if (element >= elements_ || subcarrier >= subcarriers_) {
        throw std::out_of_range("ChannelMatrix: index out of range");
    }
    return data_[subcarrier * elements_ + element];
}

const std::complex<double>& ChannelMatrix::at(std::size_t element, std::size_t subcarrier) const {
    if (element >= elements_ || subcarrier >= subcarriers_) {
        throw std::out_of_range("ChannelMatrix: index out of range");
    }
    return data_[subcarrier * elements_ + element];
}

std::span<const std::complex<double>> ChannelMatrix::column(std::size_t subcarrier) const {
    if (subcarrier >= subcarriers_) {
        throw std::out_of_range("ChannelMatrix: subcarrier index out of range");
    }
    return {data_.data() + subcarrier * elements_, elements_};
}

cvec delay_response(const SubcarrierGrid& grid, double delay_s) {
    if (!(delay_s >= 0.0) || !std::isfinite(delay_s)) {
        throw std::invalid_argument("delay_response: delay must be nonnegative and finite");
    }
    cvec out(grid.count());
    for (std::size_t k = 0; k < grid.count(); ++k) {
        // Reduce f*tau modulo 1 before scaling by 2pi: f_k*tau can reach 1e2
        // cycles and the phase only matters modulo a full turn.
        const double cycles = grid.frequencies()[k] * delay_s;
        out[k] = std::polar(1.0, -2.0 * M_PI * (cycles - std::floor(cycles)));
    }
    return out;
}

ChannelMatrix synthesize_channel(const RisGeometry& geom,
                                 const std::vector<PropagationPath>& paths,
                                 const SubcarrierGrid& grid) {
    if (paths.empty()) {
        throw std::invalid_argument("synthesize_channel: degenerate scenario with no paths");
    }
    ChannelMatrix out(geom.elements(), grid.count());
    for (const PropagationPath& path : paths) {
        const cvec steering = upa_response(geom, path.direction);
        const cvec delays = delay_response(grid, path.delay_s);
        for (std::size_t k = 0; k < grid.count(); ++k) {
            const std::complex<double> scale = path.gain * delays[k];
            for (std::size_t i = 0; i < geom.elements(); ++i) {
                out.at(i, k) += steering[i] * scale;
            }
        }
    }
    return out;
}

namespace {

void check_lengths(std::span<const std::complex<double>> g,
                   std::span<const std::complex<double>> h,
                   const ReflectionConfig& config) {
    if (g.size() != config.elements() || h.size() != config.elements()) {
        throw std::invalid_argument("cascaded channel: vector lengths must equal element count");
    }
}

}  // namespace

std::complex<double> received_symbol(std::span<const std::complex<double>> g,
                                     std::span<const std::complex<double>> h,
                                     const ReflectionConfig& config,
                                     std::complex<double> x,
                                     std::complex<double> noise) {
    check_lengths(g, h, config);
    std::complex<double> acc{0.0, 0.0};
    const cvec& omega = config.coefficients();
    for (std::size_t i = 0; i < omega.size(); ++i) {
        acc += g[i] * h[i] * omega[i];
    }
    return acc * x + noise;
}

double end_to_end_gain(std::span<const std::complex<double>> g,
                       std::span<const std::complex<double>> h,
                       const ReflectionConfig& config) {
    check_lengths(g, h, config);
    std::complex<double> acc{0.0, 0.0};
    const cvec& omega = config.coefficients();
    for (std::size_t i = 0; i < omega.size(); ++i) {
        acc += g[i] * h[i] * omega[i];
    }
    return std::norm(acc);
}

namespace {

ReciprocityReport reciprocity_on_coefficients(const RisGeometry& geom,
                                              const std::vector<PropagationPath>& ap_paths,
                                              const std::vector<PropagationPath>& ue_paths,
                                              const SubcarrierGrid& grid,
                                              const cvec& omega) {
    if (omega.size() != geom.elements()) {
        throw std::invalid_argument("reciprocity_check: config does not match geometry");
    }
    const ChannelMatrix h = synthesize_channel(geom, ap_paths, grid);
    const ChannelMatrix g = synthesize_channel(geom, ue_paths, grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.count(); ++k) {
        const auto hk = h.column(k);
        const auto gk = g.column(k);
        std::complex<double> forward{0.0, 0.0};
        std::complex<double> reverse{0.0, 0.0};
        double scale = 0.0;
        for (std::size_t i = 0; i < omega.size(); ++i) {
            forward += gk[i] * hk[i] * omega[i];
            scale += std::abs(gk[i]) * std::abs(hk[i]) * std::abs(omega[i]);
        }
        for (std::size_t r = omega.size(); r-- > 0;) {
            reverse += hk[r] * gk[r] * omega[r];
        }
        const double deviation = std::abs(forward - reverse) /
                                 std::max(scale, std::numeric_limits<double>::min());
        worst = std::max(worst, deviation);
    }
    return {worst <= 1e-12, worst};
}

}  // namespace

ReciprocityReport reciprocity_check(const RisGeometry& geom,
                                    const std::vector<PropagationPath>& ap_paths,
                                    const std::vector<PropagationPath>& ue_paths,
                                    const SubcarrierGrid& grid,
                                    const ReflectionConfig& config) {
    return reciprocity_on_coefficients(geom, ap_paths, ue_paths, grid, config.coefficients());
}

ReciprocityReport reciprocity_check(const RisGeometry& geom,
                                    const std::vector<PropagationPath>& ap_paths,
                                    const std::vector<PropagationPath>& ue_paths,
                                    const SubcarrierGrid& grid,
                                    const ReflectionConfig& config,
                                    const ElementResponseModel& model) {
    if (ap_paths.empty()) {
        throw std::invalid_argument("reciprocity_check: at least one AP path required");
    }
    const cvec omega = effective_coefficients(config, model, ap_paths.front().direction);
    return reciprocity_on_coefficients(geom, ap_paths, ue_paths, grid, omega);
}

}  // namespace risim
