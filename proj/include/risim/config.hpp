#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "risim/geometry.hpp"

namespace risim {

/// Per-element reflection configuration of a rows x cols surface, stored
/// column-major (flat index n * rows + m). Two flavors share the type:
///
///  - binary: each element is a 1-bit state, 0 -> coefficient exactly -j,
///    1 -> exactly +j (the two bias states of a 1-bit element);
///  - continuous: arbitrary finite complex coefficients, normally
///    unit-modulus phase profiles.
///
/// An optional vertical grouping tag g asserts that every g consecutive
/// elements of each column hold identical values (shared bias lines). The
/// tag is validated on attachment and preserved by the group-aware mutators.
class ReflectionConfig {
public:
    /// Empty placeholder (0 x 0); every real config comes from a factory.
    ReflectionConfig() = default;

    /// All elements in the same binary state (default 0, i.e. all -j).
    static ReflectionConfig homogeneous(std::size_t rows, std::size_t cols, int state = 0);

    /// Binary config from column-major states (each 0 or 1).
    static ReflectionConfig from_states(std::size_t rows, std::size_t cols,
                                        const std::vector<int>& states);

    /// Continuous config from column-major complex coefficients.
    static ReflectionConfig from_coefficients(std::size_t rows, std::size_t cols,
                                              cvec coefficients);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t elements() const noexcept { return rows_ * cols_; }
    bool is_binary() const noexcept { return binary_; }

    /// Vertical group size when the grouping tag is attached.
    std::optional<std::size_t> grouping() const noexcept { return grouping_; }
    /// Number of independently controllable row blocks (rows / group size;
    /// equals rows when ungrouped).
    std::size_t row_groups() const noexcept { return rows_ / grouping_.value_or(1); }

    /// Column-major complex coefficients (materialized +/-j for binary).
    const cvec& coefficients() const noexcept { return coefficients_; }
    std::complex<double> at(std::size_t m, std::size_t n) const;

    /// Column-major binary states; throws std::logic_error on continuous configs.
    const std::vector<std::uint8_t>& states() const;
    int state_at(std::size_t m, std::size_t n) const;

    /// Negate every coefficient of column n (binary: toggle the column's states).
    void flip_column(std::size_t n);
    /// Negate every coefficient of row m. Refused on grouped configs, where
    /// single rows are not independently controllable.
    void flip_row(std::size_t m);
    /// Negate rows [g*index, g*(index+1)) where g is the group size (1 when
    /// ungrouped, so this degenerates to flip_row).
    void flip_row_group(std::size_t group_index);

    /// Copy with the grouping tag attached; throws std::invalid_argument if
    /// rows % g != 0 or any vertical group is not constant.
    ReflectionConfig with_grouping(std::size_t g) const;
    /// Copy with the grouping tag removed.
    ReflectionConfig ungrouped() const;

    bool operator==(const ReflectionConfig& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    bool binary_ = false;
    std::optional<std::size_t> grouping_;
    cvec coefficients_;
    std::vector<std::uint8_t> states_;  // populated only for binary configs
};

}  // namespace risim
