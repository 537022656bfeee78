#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace risim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

using cvec = std::vector<std::complex<double>>;

/// Uniform planar array lattice. Rows run along the z axis, columns along the
/// y axis, and element (0, 0) sits at the origin. Every vectorized per-element
/// quantity in this library is ordered column by column: flat index
/// i = n * rows + m for row m, column n.
class RisGeometry {
public:
    /// Throws std::invalid_argument on non-positive counts or lengths.
    /// Spacings above half a wavelength are legal but reported by warnings().
    RisGeometry(std::size_t rows, std::size_t cols, double spacing_y_m,
                double spacing_z_m, double wavelength_m);

    /// Convenience constructor taking a carrier frequency instead of a
    /// wavelength.
    static RisGeometry from_carrier(std::size_t rows, std::size_t cols,
                                    double spacing_y_m, double spacing_z_m,
                                    double carrier_hz);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t elements() const noexcept { return rows_ * cols_; }
    double spacing_y() const noexcept { return spacing_y_; }
    double spacing_z() const noexcept { return spacing_z_; }
    double wavelength() const noexcept { return wavelength_; }

    /// Non-fatal advisories, e.g. element spacing above half a wavelength
    /// (grating lobes become visible). Empty when nothing is noteworthy.
    std::vector<std::string> warnings() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    double spacing_y_;
    double spacing_z_;
    double wavelength_;
};

/// Far-field direction seen from the array. Zenith is measured from the +z
/// axis and must lie strictly inside (0, pi); the poles are rejected because
/// azimuth is undefined there. Azimuth is wrapped into [-pi, pi).
class AngularPosition {
public:
    AngularPosition(double zenith_rad, double azimuth_rad);

    static AngularPosition from_degrees(double zenith_deg, double azimuth_deg);

    double zenith() const noexcept { return zenith_; }
    double azimuth() const noexcept { return azimuth_; }
    double zenith_deg() const noexcept;
    double azimuth_deg() const noexcept;

private:
    double zenith_;
    double azimuth_;
};

/// Column-axis (y) array response: entry n = exp(-j 2pi/lambda * d_y * n *
/// sin(zenith) * sin(azimuth)), n = 0 .. cols-1. Entry 0 is exactly 1.
cvec ula_response_y(const RisGeometry& geom, const AngularPosition& dir);

/// Row-axis (z) array response: entry m = exp(-j 2pi/lambda * d_z * m *
/// cos(zenith)), m = 0 .. rows-1. Entry 0 is exactly 1.
cvec ula_response_z(const RisGeometry& geom, const AngularPosition& dir);

/// Full planar response, the Kronecker product ula_response_y (x)
/// ula_response_z: entry n * rows + m equals a_y[n] * a_z[m].
cvec upa_response(const RisGeometry& geom, const AngularPosition& dir);

}  // namespace risim
