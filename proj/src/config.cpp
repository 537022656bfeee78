#include "risim/config.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

namespace {

constexpr std::complex<double> kStateCoefficient[2] = {{0.0, -1.0}, {0.0, 1.0}};

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("ReflectionConfig: element counts must be at least 1");
    }
}

}  // namespace

ReflectionConfig ReflectionConfig::homogeneous(std::size_t rows, std::size_t cols, int state) {
    return from_states(rows, cols, std::vector<int>(rows * cols, state));
}

ReflectionConfig ReflectionConfig::from_states(std::size_t rows, std::size_t cols,
                                               const std::vector<int>& states) {
    check_shape(rows, cols);
    if (states.size() != rows * cols) {
        throw std::invalid_argument("ReflectionConfig: state count does not match rows * cols");
    }
    ReflectionConfig cfg;
    cfg.rows_ = rows;
    cfg.cols_ = cols;
    cfg.binary_ = true;
    cfg.states_.reserve(states.size());
    cfg.coefficients_.reserve(states.size());
    for (int s : states) {
        if (s != 0 && s != 1) {
            throw std::invalid_argument("ReflectionConfig: binary states must be 0 or 1");
        }
        cfg.states_.push_back(static_cast<std::uint8_t>(s));
        cfg.coefficients_.push_back(kStateCoefficient[s]);
    }
    return cfg;
}

ReflectionConfig ReflectionConfig::from_coefficients(std::size_t rows, std::size_t cols,
                                                     cvec coefficients) {
    check_shape(rows, cols);
    if (coefficients.size() != rows * cols) {
        throw std::invalid_argument(
            "ReflectionConfig: coefficient count does not match rows * cols");
    }
    for (const auto& c : coefficients) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("ReflectionConfig: coefficients must be finite");
        }
    }
    ReflectionConfig cfg;
    cfg.rows_ = rows;
    cfg.cols_ = cols;
    cfg.binary_ = false;
    cfg.coefficients_ = std::move(coefficients);
    return cfg;
}

std::complex<double> ReflectionConfig::at(std::size_t m, std::size_t n) const {
    if (m >= rows_ || n >= cols_) {
        throw std::out_of_range("ReflectionConfig: element index out of range");
    }
    return coefficients_[n * rows_ + m];
}

const std::vector<std::uint8_t>& ReflectionConfig::states() const {
    if (!binary_) {
        throw std::logic_error("ReflectionConfig: continuous config has no binary states");
    }
    return states_;
}

int ReflectionConfig::state_at(std::size_t m, std::size_t n) const {
    if (m >= rows_ || n >= cols_) {
        throw std::out_of_range("ReflectionConfig: element index out of range");
    }
    return static_cast<int>(states().at(n * rows_ + m));
}

void ReflectionConfig::flip_column(std::size_t n) {
    if (n >= cols_) {
        throw std::out_of_range("ReflectionConfig: column index out of range");
    }
    for (std::size_t m = 0; m < rows_; ++m) {
        const std::size_t i = n * rows_ + m;
        coefficients_[i] = -coefficients_[i];
        if (binary_) {
            states_[i] ^= 1u;
        }
    }
}

void ReflectionConfig::flip_row(std::size_t m) {
    if (grouping_ && *grouping_ > 1) {
        throw std::logic_error(
            "ReflectionConfig: single rows of a grouped config cannot be flipped");
    }
    if (m >= rows_) {
        throw std::out_of_range("ReflectionConfig: row index out of range");
    }
    for (std::size_t n = 0; n < cols_; ++n) {
        const std::size_t i = n * rows_ + m;
        coefficients_[i] = -coefficients_[i];
        if (binary_) {
            states_[i] ^= 1u;
        }
    }
}

void ReflectionConfig::flip_row_group(std::size_t group_index) {
    const std::size_t g = grouping_.value_or(1);
    if (group_index >= rows_ / g) {
        throw std::out_of_range("ReflectionConfig: row-group index out of range");
    }
    for (std::size_t n = 0; n < cols_; ++n) {
        for (std::size_t m = group_index * g; m < (group_index + 1) * g; ++m) {
            const std::size_t i = n * rows_ + m;
            coefficients_[i] = -coefficients_[i];
            if (binary_) {
                states_[i] ^= 1u;
            }
        }
    }
}

ReflectionConfig ReflectionConfig::with_grouping(std::size_t g) const {
    if (g < 1 || rows_ % g != 0) {
        throw std::invalid_argument("ReflectionConfig: rows must be divisible by the group size");
    }
    for (std::size_t n = 0; n < cols_; ++n) {
        for (std::size_t group = 0; group < rows_ / g; ++group) {
            const std::size_t head = n * rows_ + group * g;
            for (std::size_t k = 1; k < g; ++k) {
                const bool same = binary_ ? states_[head + k] == states_[head]
                                          : coefficients_[head + k] == coefficients_[head];
                if (!same) {
                    throw std::invalid_argument(
                        "ReflectionConfig: vertical groups must hold identical states");
                }
            }
        }
    }
    ReflectionConfig cfg = *this;
    cfg.grouping_ = g;
    return cfg;
}

ReflectionConfig ReflectionConfig::ungrouped() const {
    ReflectionConfig cfg = *this;
    cfg.grouping_.reset();
    return cfg;
}

}  // namespace risim
