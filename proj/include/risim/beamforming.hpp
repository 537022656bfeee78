#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "risim/config.hpp"
#include "risim/geometry.hpp"

namespace risim {

/// Phase-conjugate optimum: the elementwise conjugate of
/// upa_response(ue_dir) ⊙ upa_response(ap_dir). Aligns every element of the
/// cascaded single-path channel, reaching gain L^2 on unit path gains.
ReflectionConfig optimal_continuous(const RisGeometry& geom, const AngularPosition& ue_dir,
                                    const AngularPosition& ap_dir);

/// The same optimum built from its separable row/column factorization using
/// the combined angle terms sin(t_h)sin(p_h) + sin(t_g)sin(p_g) (columns)
/// and cos(t_h) + cos(t_g) (rows). Algebraically identical to
/// optimal_continuous; exists so the identity is testable.
ReflectionConfig desired_factored(const RisGeometry& geom, const AngularPosition& ue_dir,
                                  const AngularPosition& ap_dir);

/// One column of the planar DFT codebook F(rows) (x) F(cols).
struct Codeword {
    std::size_t row_index;  // DFT index p along rows (z axis)
    std::size_t col_index;  // DFT index q along columns (y axis)
    cvec coefficients;      // column-major; entry (m, n) = xi_M^(p m) * xi_N^(q n)
};

/// Single codeword (p, q) with xi_K = exp(-j 2pi / K).
Codeword dft_codeword(const RisGeometry& geom, std::size_t p, std::size_t q);

/// All rows*cols codewords, enumerated with the column DFT index varying
/// fastest: entry k is (p, q) = (k / cols, k % cols).
std::vector<Codeword> dft_codebook(const RisGeometry& geom);

/// The codeword whose phase slopes round-trip closest to the conjugate of the
/// cascaded single-path steering profile for the given pair of directions.
Codeword nearest_codeword(const RisGeometry& geom, const AngularPosition& ue_dir,
                          const AngularPosition& ap_dir);

/// Codeword coefficients as a continuous ReflectionConfig.
ReflectionConfig to_config(const RisGeometry& geom, const Codeword& codeword);

/// 1-bit quantization of a continuous config, element by element:
/// coefficient phase in [0, pi) -> exp(-j pi/2), phase in [-pi, 0) ->
/// exp(+j pi/2) (a phase of exactly pi belongs to the second case). The
/// output is a binary config; a grouping tag is preserved (group-constant
/// phases quantize to group-constant states).
ReflectionConfig quantize_1bit(const ReflectionConfig& config);

/// Forces every vertical group of g elements to one shared value: binary
/// configs take the group's majority state (ties toward state 0); continuous
/// configs take the circular-mean phase of the group and are then 1-bit
/// quantized. The result carries the grouping tag. Throws when rows % g != 0.
ReflectionConfig apply_grouping(const ReflectionConfig& config, std::size_t g);

/// CSV export of one codeword: header plus one row per element (column-major)
/// with the index pair and the element phase in degrees.
void write_codeword_csv(std::ostream& out, const RisGeometry& geom, const Codeword& codeword);

/// Bias-state listing of a grouped binary config: header plus one row per
/// (column, row-group) control signal. Throws on continuous configs.
void write_bias_states(std::ostream& out, const ReflectionConfig& config);

}  // namespace risim
