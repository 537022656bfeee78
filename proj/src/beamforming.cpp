#include "risim/beamforming.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "risim/text.hpp"

namespace risim {

ReflectionConfig optimal_continuous(const RisGeometry& geom, const AngularPosition& ue_dir,
                                    const AngularPosition& ap_dir) {
    const cvec a_ue = upa_response(geom, ue_dir);
    const cvec a_ap = upa_response(geom, ap_dir);
    cvec omega(geom.elements());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        omega[i] = std::conj(a_ue[i] * a_ap[i]);
    }
    return ReflectionConfig::from_coefficients(geom.rows(), geom.cols(), std::move(omega));
}

ReflectionConfig desired_factored(const RisGeometry& geom, const AngularPosition& ue_dir,
                                  const AngularPosition& ap_dir) {
    // Combined direction terms of the cascaded profile; conjugation flips the
    // sign of the response phases, hence the positive slopes below.
    const double combined_y = std::sin(ue_dir.zenith()) * std::sin(ue_dir.azimuth()) +
                              std::sin(ap_dir.zenith()) * std::sin(ap_dir.azimuth());
    const double combined_z = std::cos(ue_dir.zenith()) + std::cos(ap_dir.zenith());
    const double slope_y = 2.0 * M_PI / geom.wavelength() * geom.spacing_y() * combined_y;
    const double slope_z = 2.0 * M_PI / geom.wavelength() * geom.spacing_z() * combined_z;
    cvec omega(geom.elements());
    for (std::size_t n = 0; n < geom.cols(); ++n) {
        const std::complex<double> column_factor =
            std::polar(1.0, slope_y * static_cast<double>(n));
        for (std::size_t m = 0; m < geom.rows(); ++m) {
            omega[n * geom.rows() + m] =
                column_factor * std::polar(1.0, slope_z * static_cast<double>(m));
        }
    }
    return ReflectionConfig::from_coefficients(geom.rows(), geom.cols(), std::move(omega));
}

namespace {

// exp(-j 2pi k / denom) with exact values on quarter turns, so small DFT
// codebooks (and their quantizations) come out bit-exact.
std::complex<double> dft_root(std::size_t k, std::size_t denom) {
    const std::size_t r = k % denom;
    if (r == 0) return {1.0, 0.0};
    if (4 * r == denom) return {0.0, -1.0};
    if (2 * r == denom) return {-1.0, 0.0};
    if (4 * r == 3 * denom) return {0.0, 1.0};
    return std::polar(1.0, -2.0 * M_PI * static_cast<double>(r) / static_cast<double>(denom));
}

}  // namespace

Codeword dft_codeword(const RisGeometry& geom, std::size_t p, std::size_t q) {
    if (p >= geom.rows() || q >= geom.cols()) {
        throw std::invalid_argument("dft_codeword: DFT index out of range");
    }
    Codeword cw;
    cw.row_index = p;
    cw.col_index = q;
    cw.coefficients.resize(geom.elements());
    for (std::size_t n = 0; n < geom.cols(); ++n) {
        const std::complex<double> column_factor = dft_root(q * n, geom.cols());
        for (std::size_t m = 0; m < geom.rows(); ++m) {
            cw.coefficients[n * geom.rows() + m] = column_factor * dft_root(p * m, geom.rows());
        }
    }
    return cw;
}

std::vector<Codeword> dft_codebook(const RisGeometry& geom) {
    std::vector<Codeword> book;
    book.reserve(geom.elements());
    for (std::size_t p = 0; p < geom.rows(); ++p) {
        for (std::size_t q = 0; q < geom.cols(); ++q) {
            book.push_back(dft_codeword(geom, p, q));
        }
    }
    return book;
}

namespace {

std::size_t wrap_index(long long value, std::size_t size) {
    const long long m = static_cast<long long>(size);
    return static_cast<std::size_t>(((value % m) + m) % m);
}

}  // namespace

Codeword nearest_codeword(const RisGeometry& geom, const AngularPosition& ue_dir,
                          const AngularPosition& ap_dir) {
    const double combined_y = std::sin(ue_dir.zenith()) * std::sin(ue_dir.azimuth()) +
                              std::sin(ap_dir.zenith()) * std::sin(ap_dir.azimuth());
    const double combined_z = std::cos(ue_dir.zenith()) + std::cos(ap_dir.zenith());
    // Desired per-element slope is +2pi d c / lambda (conjugate profile);
    // codeword (p, q) realizes -2pi p/M and -2pi q/N, so negate and round.
    const double p_real = -static_cast<double>(geom.rows()) * geom.spacing_z() * combined_z /
                          geom.wavelength();
    const double q_real = -static_cast<double>(geom.cols()) * geom.spacing_y() * combined_y /
                          geom.wavelength();
    const std::size_t p = wrap_index(std::llround(p_real), geom.rows());
    const std::size_t q = wrap_index(std::llround(q_real), geom.cols());
    return dft_codeword(geom, p, q);
}

ReflectionConfig to_config(const RisGeometry& geom, const Codeword& codeword) {
    if (codeword.coefficients.size() != geom.elements()) {
        throw std::invalid_argument("to_config: codeword does not match geometry");
    }
    return ReflectionConfig::from_coefficients(geom.rows(), geom.cols(), codeword.coefficients);
}

ReflectionConfig quantize_1bit(const ReflectionConfig& config) {
    if (config.is_binary()) {
        throw std::invalid_argument("quantize_1bit: config is already binary");
    }
    std::vector<int> states;
    states.reserve(config.elements());
    for (const auto& c : config.coefficients()) {
        const double a = std::arg(c);  // (-pi, pi]
        // Phase in [0, pi) -> -j (state 0); [-pi, 0) and the +pi edge -> +j.
        states.push_back(a >= 0.0 && a < M_PI ? 0 : 1);
    }
    ReflectionConfig out = ReflectionConfig::from_states(config.rows(), config.cols(), states);
    if (config.grouping()) {
        out = out.with_grouping(*config.grouping());
    }
    return out;
}

ReflectionConfig apply_grouping(const ReflectionConfig& config, std::size_t g) {
    if (g < 1 || config.rows() % g != 0) {
        throw std::invalid_argument("apply_grouping: rows must be divisible by the group size");
    }
    const std::size_t rows = config.rows();
    if (config.is_binary()) {
        std::vector<int> states(config.elements());
        for (std::size_t n = 0; n < config.cols(); ++n) {
            for (std::size_t group = 0; group < rows / g; ++group) {
                std::size_t ones = 0;
                for (std::size_t k = 0; k < g; ++k) {
                    ones += config.states()[n * rows + group * g + k];
                }
                const int majority = 2 * ones > g ? 1 : 0;  // ties toward state 0
                for (std::size_t k = 0; k < g; ++k) {
                    states[n * rows + group * g + k] = majority;
                }
            }
        }
        return ReflectionConfig::from_states(rows, config.cols(), states).with_grouping(g);
    }
    // Continuous: replace each group by its circular-mean phase, then 1-bit
    // quantize the group-constant profile.
    cvec mean(config.elements());
    for (std::size_t n = 0; n < config.cols(); ++n) {
        for (std::size_t group = 0; group < rows / g; ++group) {
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t k = 0; k < g; ++k) {
                const auto c = config.coefficients()[n * rows + group * g + k];
                const double mag = std::abs(c);
                if (mag > 0.0) {
                    sum += c / mag;
                }
            }
            const std::complex<double> value = std::polar(1.0, std::arg(sum));
            for (std::size_t k = 0; k < g; ++k) {
                mean[n * rows + group * g + k] = value;
            }
        }
    }
    const ReflectionConfig averaged =
        ReflectionConfig::from_coefficients(rows, config.cols(), std::move(mean))
            .with_grouping(g);
    return quantize_1bit(averaged);
}

void write_codeword_csv(std::ostream& out, const RisGeometry& geom, const Codeword& codeword) {
    if (codeword.coefficients.size() != geom.elements()) {
        throw std::invalid_argument("write_codeword_csv: codeword does not match geometry");
    }
    out << "row_index,col_index,m,n,phase_deg\n";
    for (std::size_t n = 0; n < geom.cols(); ++n) {
        for (std::size_t m = 0; m < geom.rows(); ++m) {
            const double deg =
                std::arg(codeword.coefficients[n * geom.rows() + m]) * 180.0 / M_PI;
            out << codeword.row_index << ',' << codeword.col_index << ',' << m << ',' << n << ','
                << format_double(deg) << '\n';
        }
    }
}

void write_bias_states(std::ostream& out, const ReflectionConfig& config) {
    if (!config.is_binary()) {
        throw std::invalid_argument("write_bias_states: bias listing requires a binary config");
    }
    const std::size_t g = config.grouping().value_or(1);
    out << "column,group,state\n";
    for (std::size_t n = 0; n < config.cols(); ++n) {
        for (std::size_t group = 0; group < config.row_groups(); ++group) {
            out << n << ',' << group << ',' << config.state_at(group * g, n) << '\n';
        }
    }
}

}  // namespace risim
