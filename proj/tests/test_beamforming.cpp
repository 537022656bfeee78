#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "risim/beamforming.hpp"
#include "risim/channel.hpp"
#include "risim/rng.hpp"

using namespace risim;

namespace {

std::complex<double> inner(const cvec& a, const cvec& b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

AngularPosition random_direction(std::mt19937_64& rng) {
    return AngularPosition(uniform_range(rng, 0.3, M_PI - 0.3), uniform_range(rng, -M_PI, M_PI));
}

}  // namespace

TEST_CASE("the phase-conjugate profile aligns the cascaded channel exactly") {
    const RisGeometry geom(4, 5, 0.0103, 0.0143, 0.0517);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const AngularPosition ue = random_direction(rng);
        const AngularPosition ap = random_direction(rng);
        const ReflectionConfig omega = optimal_continuous(geom, ue, ap);
        const cvec a_ue = upa_response(geom, ue);
        const cvec a_ap = upa_response(geom, ap);

        // Elementwise: the conjugate of the cascade.
        for (std::size_t i = 0; i < geom.elements(); ++i) {
            CHECK(std::abs(omega.coefficients()[i] - std::conj(a_ue[i] * a_ap[i])) <= 1e-12);
        }

        // Single unit-gain path on each side: the aligned link delivers L^2.
        const double gain = end_to_end_gain(a_ap, a_ue, omega);
        const double L = static_cast<double>(geom.elements());
        CHECK(gain == doctest::Approx(L * L).epsilon(1e-12));
    }
}

TEST_CASE("the factored construction reproduces the elementwise optimum") {
    const RisGeometry geom(6, 9, 0.0103, 0.0143, 0.0517);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const AngularPosition ue = random_direction(rng);
        const AngularPosition ap = random_direction(rng);
        const ReflectionConfig direct = optimal_continuous(geom, ue, ap);
        const ReflectionConfig factored = desired_factored(geom, ue, ap);
        for (std::size_t i = 0; i < geom.elements(); ++i) {
            CHECK(std::abs(direct.coefficients()[i] - factored.coefficients()[i]) <= 1e-11);
        }
    }
}

TEST_CASE("no random continuous profile beats the aligned one") {
    const RisGeometry geom(2, 4, 0.0103, 0.0143, 0.0517);
    std::mt19937_64 rng(7);
    const AngularPosition ue = random_direction(rng);
    const AngularPosition ap = random_direction(rng);
    const cvec a_ue = upa_response(geom, ue);
    const cvec a_ap = upa_response(geom, ap);
    const double best = end_to_end_gain(a_ap, a_ue, optimal_continuous(geom, ue, ap));

    cvec coeffs(geom.elements());
    for (int trial = 0; trial < 100000; ++trial) {
        for (auto& c : coeffs) c = std::polar(1.0, uniform_range(rng, -M_PI, M_PI));
        const double gain = end_to_end_gain(
            a_ap, a_ue, ReflectionConfig::from_coefficients(geom.rows(), geom.cols(), coeffs));
        CHECK(gain <= best * (1.0 + 1e-12));
    }
}

TEST_CASE("tiny codebooks are exactly orthogonal") {
    // On a 2x2 surface every DFT root is a quarter turn, which the
    // constructor produces exactly, so the Gram matrix is exactly 4I.
    const RisGeometry geom(2, 2, 0.0103, 0.0143, 0.0517);
    const auto book = dft_codebook(geom);
    REQUIRE(book.size() == 4);
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = 0; j < book.size(); ++j) {
            const std::complex<double> dot = inner(book[i].coefficients, book[j].coefficients);
            if (i == j) {
                CHECK(dot.real() == 4.0);
                CHECK(dot.imag() == 0.0);
            } else {
                CHECK(dot.real() == 0.0);
                CHECK(dot.imag() == 0.0);
            }
        }
    }
}

TEST_CASE("larger codebooks stay orthogonal to rounding error") {
    const RisGeometry geom(4, 4, 0.0103, 0.0143, 0.0517);
    const auto book = dft_codebook(geom);
    REQUIRE(book.size() == 16);
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = i + 1; j < book.size(); ++j) {
            CHECK(std::abs(inner(book[i].coefficients, book[j].coefficients)) <= 1e-9);
        }
    }
}

TEST_CASE("codeword entries follow the two-axis DFT formula") {
    const RisGeometry geom(3, 5, 0.0103, 0.0143, 0.0517);
    const Codeword cw = dft_codeword(geom, 2, 4);
    CHECK(cw.row_index == 2);
    CHECK(cw.col_index == 4);
    for (std::size_t n = 0; n < geom.cols(); ++n) {
        for (std::size_t m = 0; m < geom.rows(); ++m) {
            const double phase = -2.0 * M_PI * (2.0 * static_cast<double>(m) / 3.0 +
                                                4.0 * static_cast<double>(n) / 5.0);
            CHECK(std::abs(cw.coefficients[n * geom.rows() + m] - std::polar(1.0, phase)) <=
                  1e-12);
        }
    }
    CHECK_THROWS_AS(dft_codeword(geom, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(dft_codeword(geom, 0, 5), std::invalid_argument);

    // Quarter-turn entries are bitwise exact.
    const RisGeometry quad(4, 4, 0.0103, 0.0143, 0.0517);
    const Codeword q = dft_codeword(quad, 1, 0);
    CHECK(q.coefficients[1] == std::complex<double>(0.0, -1.0));   // m=1: exp(-j pi/2)
    CHECK(q.coefficients[2] == std::complex<double>(-1.0, 0.0));   // m=2: exp(-j pi)
    CHECK(q.coefficients[3] == std::complex<double>(0.0, 1.0));    // m=3: exp(-j 3pi/2)
}

TEST_CASE("codebook enumeration walks the column index fastest") {
    const RisGeometry geom(3, 4, 0.0103, 0.0143, 0.0517);
    const auto book = dft_codebook(geom);
    REQUIRE(book.size() == 12);
    for (std::size_t k = 0; k < book.size(); ++k) {
        CHECK(book[k].row_index == k / geom.cols());
        CHECK(book[k].col_index == k % geom.cols());
    }
}

TEST_CASE("the selected codeword is the whole codebook's best correlate") {
    const RisGeometry geom(4, 8, 0.0103, 0.0143, 0.0517);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const AngularPosition ue = random_direction(rng);
        const AngularPosition ap = random_direction(rng);
        const cvec desired = optimal_continuous(geom, ue, ap).coefficients();
        const Codeword picked = nearest_codeword(geom, ue, ap);

        double best = 0.0;
        for (const auto& cw : dft_codebook(geom)) {
            best = std::max(best, std::abs(inner(cw.coefficients, desired)));
        }
        CHECK(std::abs(inner(picked.coefficients, desired)) >= best - 1e-9);
    }
}

TEST_CASE("the anechoic-geometry codeword lands on the column grid") {
    // 20x55 surface at 5.8 GHz with the pattern-sweep direction pair: the
    // column slope rounds to index q = 46 with no vertical tilt (p = 0).
    // Frozen from two independent evaluations of the index formula.
    const RisGeometry geom(20, 55, 10.27e-3, 14.3e-3, kSpeedOfLight / 5.8e9);
    const Codeword cw = nearest_codeword(geom, AngularPosition::from_degrees(90.0, 30.0),
                                         AngularPosition::from_degrees(90.0, 18.879141));
    CHECK(cw.row_index == 0);
    CHECK(cw.col_index == 46);
}

TEST_CASE("two-state rounding follows the half-plane rule exactly") {
    // Upper half-plane phases (0 included, pi excluded) take state 0 = -j;
    // the rest take state 1 = +j.
    const cvec coeffs = {
        {1.0, 0.0},    // arg 0        -> 0
        {0.0, 1.0},    // arg pi/2     -> 0
        {-1.0, 1e-12}, // arg ~pi      -> 0 (still upper half)
        {-1.0, 0.0},   // arg exactly pi -> 1
        {0.0, -1.0},   // arg -pi/2    -> 1
        {1.0, -1e-12}, // arg ~-0      -> 1
    };
    const ReflectionConfig quantized =
        quantize_1bit(ReflectionConfig::from_coefficients(6, 1, coeffs));
    REQUIRE(quantized.is_binary());
    CHECK(quantized.states()[0] == 0);
    CHECK(quantized.states()[1] == 0);
    CHECK(quantized.states()[2] == 0);
    CHECK(quantized.states()[3] == 1);
    CHECK(quantized.states()[4] == 1);
    CHECK(quantized.states()[5] == 1);

    CHECK_THROWS_AS(quantize_1bit(quantized), std::invalid_argument);
}

TEST_CASE("quantization preserves a grouping tag") {
    cvec coeffs(8);
    for (std::size_t i = 0; i < 8; ++i)
        coeffs[i] = std::polar(1.0, (i / 2 % 2 == 0) ? 0.4 : -2.0);
    const ReflectionConfig grouped =
        ReflectionConfig::from_coefficients(4, 2, coeffs).with_grouping(2);
    const ReflectionConfig quantized = quantize_1bit(grouped);
    CHECK(quantized.grouping() == 2);
    CHECK(quantized.state_at(0, 0) == 0);
    CHECK(quantized.state_at(2, 0) == 1);
}

TEST_CASE("the rounded profile maximizes the real part of the correlation") {
    // Among all 2^L two-state profiles, the half-plane rule maximizes
    // |Re(<desired, candidate>)|; verified exhaustively on small surfaces.
    std::mt19937_64 rng(17);
    const std::size_t L = 8;
    for (int trial = 0; trial < 20; ++trial) {
        cvec desired(L);
        for (auto& c : desired) c = std::polar(1.0, uniform_range(rng, -M_PI, M_PI));
        const ReflectionConfig rounded =
            quantize_1bit(ReflectionConfig::from_coefficients(L, 1, desired));
        const double achieved = std::abs(inner(desired, rounded.coefficients()).real());

        double best = 0.0;
        for (std::uint32_t code = 0; code < (1u << L); ++code) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t i = 0; i < L; ++i) {
                const std::complex<double> w{0.0, (code >> i) & 1u ? 1.0 : -1.0};
                s += std::conj(desired[i]) * w;
            }
            best = std::max(best, std::abs(s.real()));
        }
        CHECK(achieved >= best - 1e-9);
    }
}

TEST_CASE("grouping resolves binary groups by majority with ties to zero") {
    // One column, two groups of four.
    const ReflectionConfig tie =
        ReflectionConfig::from_states(4, 1, {1, 1, 0, 0});
    CHECK(apply_grouping(tie, 4).states() == std::vector<std::uint8_t>({0, 0, 0, 0}));

    const ReflectionConfig majority1 =
        ReflectionConfig::from_states(4, 1, {1, 1, 1, 0});
    CHECK(apply_grouping(majority1, 4).states() == std::vector<std::uint8_t>({1, 1, 1, 1}));

    const ReflectionConfig majority0 =
        ReflectionConfig::from_states(4, 1, {1, 0, 0, 0});
    CHECK(apply_grouping(majority0, 4).states() == std::vector<std::uint8_t>({0, 0, 0, 0}));

    // Independent groups settle independently.
    const ReflectionConfig two =
        ReflectionConfig::from_states(4, 1, {1, 1, 0, 1});
    const ReflectionConfig grouped = apply_grouping(two, 2);
    CHECK(grouped.states() == std::vector<std::uint8_t>({1, 1, 0, 0}));
    CHECK(grouped.grouping() == 2);

    CHECK_THROWS_AS(apply_grouping(two, 3), std::invalid_argument);
}

TEST_CASE("grouping continuous profiles takes the circular mean before rounding") {
    // Phases 170 and -170 degrees average to 180, which rounds to state 1.
    const cvec wrap = {std::polar(1.0, 170.0 * M_PI / 180.0),
                       std::polar(1.0, -170.0 * M_PI / 180.0)};
    const ReflectionConfig wrapped =
        apply_grouping(ReflectionConfig::from_coefficients(2, 1, wrap), 2);
    CHECK(wrapped.is_binary());
    CHECK(wrapped.states() == std::vector<std::uint8_t>({1, 1}));

    // Phases near zero average to zero, which rounds to state 0.
    const cvec flat = {std::polar(1.0, 0.2), std::polar(1.0, -0.2)};
    CHECK(apply_grouping(ReflectionConfig::from_coefficients(2, 1, flat), 2).states() ==
          std::vector<std::uint8_t>({0, 0}));

    // Zero-amplitude entries do not pull the mean.
    const cvec holey = {{0.0, 0.0}, std::polar(1.0, -2.0)};
    CHECK(apply_grouping(ReflectionConfig::from_coefficients(2, 1, holey), 2).states() ==
          std::vector<std::uint8_t>({1, 1}));
}

TEST_CASE("rounding to two states keeps or breaks orthogonality by size") {
    auto worst_cross = [](const RisGeometry& geom) {
        const auto book = dft_codebook(geom);
        double worst = 0.0;
        for (std::size_t i = 0; i < book.size(); ++i) {
            for (std::size_t j = i + 1; j < book.size(); ++j) {
                const cvec a = quantize_1bit(to_config(geom, book[i])).coefficients();
                const cvec b = quantize_1bit(to_config(geom, book[j])).coefficients();
                worst = std::max(worst, std::abs(inner(a, b)));
            }
        }
        return worst;
    };

    // Power-of-two sizes only have quarter-turn phases, and rounding those
    // produces Walsh sign patterns: the rounded book is still orthogonal.
    CHECK(worst_cross(RisGeometry(4, 4, 0.0103, 0.0143, 0.0517)) == 0.0);

    // Odd sizes have phases between the states, and rounding collapses
    // distinct codewords onto nearly identical sign patterns.
    CHECK(worst_cross(RisGeometry(3, 5, 0.0103, 0.0143, 0.0517)) > 7.5);  // L = 15
}

TEST_CASE("codeword exports list every element in column-major order") {
    const RisGeometry geom(2, 2, 0.0103, 0.0143, 0.0517);
    std::ostringstream oss;
    write_codeword_csv(oss, geom, dft_codeword(geom, 1, 1));
    CHECK(oss.str() ==
          "row_index,col_index,m,n,phase_deg\n"
          "1,1,0,0,0\n"
          "1,1,1,0,180\n"
          "1,1,0,1,180\n"
          "1,1,1,1,0\n");
}

TEST_CASE("bias listings cover every control line of a grouped config") {
    const ReflectionConfig config =
        ReflectionConfig::from_states(4, 2, {0, 0, 1, 1, 1, 1, 1, 1}).with_grouping(2);
    std::ostringstream oss;
    write_bias_states(oss, config);
    CHECK(oss.str() ==
          "column,group,state\n"
          "0,0,0\n"
          "0,1,1\n"
          "1,0,1\n"
          "1,1,1\n");

    std::ostringstream other;
    CHECK_THROWS_AS(
        write_bias_states(other, ReflectionConfig::from_coefficients(2, 1, {{1, 0}, {0, 1}})),
        std::invalid_argument);
}
