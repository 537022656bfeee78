#include "risim/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

RisGeometry::RisGeometry(std::size_t rows, std::size_t cols, double spacing_y_m,
                         double spacing_z_m, double wavelength_m)
    : rows_(rows),
      cols_(cols),
      spacing_y_(spacing_y_m),
      spacing_z_(spacing_z_m),
      wavelength_(wavelength_m) {
    if (rows_ < 1 || cols_ < 1) {
        throw std::invalid_argument("RisGeometry: element counts must be at least 1");
    }
    if (!(spacing_y_ > 0.0) || !(spacing_z_ > 0.0)) {
        throw std::invalid_argument("RisGeometry: element spacings must be positive");
    }
    if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_)) {
        throw std::invalid_argument("RisGeometry: wavelength must be positive and finite");
    }
}

RisGeometry RisGeometry::from_carrier(std::size_t rows, std::size_t cols,
                                      double spacing_y_m, double spacing_z_m,
                                      double carrier_hz) {
    if (!(carrier_hz > 0.0)) {
        throw std::invalid_argument("RisGeometry: carrier frequency must be positive");
    }
    return RisGeometry(rows, cols, spacing_y_m, spacing_z_m, kSpeedOfLight / carrier_hz);
}

std::vector<std::string> RisGeometry::warnings() const {
    std::vector<std::string> notes;
    const double half = 0.5 * wavelength_;
    if (spacing_y_ > half) {
        notes.push_back("column spacing exceeds half a wavelength; grating lobes enter visible space");
    }
    if (spacing_z_ > half) {
        notes.push_back("row spacing exceeds half a wavelength; grating lobes enter visible space");
    }
    return notes;
}

namespace {

// Wrap an angle into [-pi, pi).
double wrap_azimuth(double phi) {
    double a = std::fmod(phi + M_PI, 2.0 * M_PI);
    if (a < 0.0) {
        a += 2.0 * M_PI;
    }
    return a - M_PI;
}

}  // namespace

AngularPosition::AngularPosition(double zenith_rad, double azimuth_rad)
    : zenith_(zenith_rad), azimuth_(wrap_azimuth(azimuth_rad)) {
    if (!std::isfinite(zenith_rad) || !std::isfinite(azimuth_rad)) {
        throw std::invalid_argument("AngularPosition: angles must be finite");
    }
    if (!(zenith_ > 0.0) || !(zenith_ < M_PI)) {
        throw std::invalid_argument("AngularPosition: zenith must lie strictly inside (0, pi)");
    }
}

AngularPosition AngularPosition::from_degrees(double zenith_deg, double azimuth_deg) {
    return AngularPosition(zenith_deg * M_PI / 180.0, azimuth_deg * M_PI / 180.0);
}

double AngularPosition::zenith_deg() const noexcept { return zenith_ * 180.0 / M_PI; }

double AngularPosition::azimuth_deg() const noexcept { return azimuth_ * 180.0 / M_PI; }

namespace {

// Progressive-phase vector exp(-j * slope * index), index 0 .. count-1.
// Index 0 is emitted as an exact 1 so downstream exactness tests hold.
cvec progressive_phase(std::size_t count, double slope) {
    cvec out(count);
    out[0] = {1.0, 0.0};
    for (std::size_t i = 1; i < count; ++i) {
        out[i] = std::polar(1.0, -slope * static_cast<double>(i));
    }
    return out;
}

}  // namespace

cvec ula_response_y(const RisGeometry& geom, const AngularPosition& dir) {
    const double slope = 2.0 * M_PI / geom.wavelength() * geom.spacing_y() *
                         std::sin(dir.zenith()) * std::sin(dir.azimuth());
    return progressive_phase(geom.cols(), slope);
}

cvec ula_response_z(const RisGeometry& geom, const AngularPosition& dir) {
    const double slope = 2.0 * M_PI / geom.wavelength() * geom.spacing_z() *
                         std::cos(dir.zenith());
    return progressive_phase(geom.rows(), slope);
}

cvec upa_response(const RisGeometry& geom, const AngularPosition& dir) {
    const cvec ay = ula_response_y(geom, dir);
    const cvec az = ula_response_z(geom, dir);
    cvec out(geom.elements());
    for (std::size_t n = 0; n < geom.cols(); ++n) {
        for (std::size_t m = 0; m < geom.rows(); ++m) {
            out[n * geom.rows() + m] = ay[n] * az[m];
        }
    }
    return out;
}

}  // namespace risim
