#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "risim/element_model.hpp"

using namespace risim;

namespace {
const AngularPosition kAt30 = AngularPosition::from_degrees(30.0, 0.0);
}

TEST_CASE("element states validate and wrap") {
    CHECK_THROWS_AS(ElementState::binary(2), std::invalid_argument);
    CHECK_THROWS_AS(ElementState::binary(-1), std::invalid_argument);
    CHECK(ElementState::binary(1).bit() == 1);
    CHECK_THROWS_AS(ElementState::binary(0).phase(), std::logic_error);
    CHECK_THROWS_AS(ElementState::phase(1.0).bit(), std::logic_error);
    // Phase targets wrap into [-pi, pi).
    CHECK(ElementState::phase(M_PI).phase() == doctest::Approx(-M_PI).epsilon(1e-12));
    CHECK(ElementState::phase(3.0 * M_PI / 2.0).phase() ==
          doctest::Approx(-M_PI / 2.0).epsilon(1e-12));
}

TEST_CASE("ideal two-state elements are exact quarter-turn devices") {
    const ElementResponseModel model = ElementResponseModel::ideal_1bit();
    const auto r0 = reflection_coefficient(model, ElementState::binary(0), kAt30);
    const auto r1 = reflection_coefficient(model, ElementState::binary(1), kAt30);
    // Bitwise exact: the two states are precisely -j and +j.
    CHECK(r0.value == std::complex<double>(0.0, -1.0));
    CHECK(r1.value == std::complex<double>(0.0, 1.0));
    CHECK_FALSE(r0.incidence_clamped);
    CHECK_THROWS_AS(reflection_coefficient(model, ElementState::phase(0.3), kAt30),
                    std::invalid_argument);
}

TEST_CASE("continuous elements realize arbitrary phase targets") {
    const ElementResponseModel model = ElementResponseModel::ideal_continuous();
    const auto r = reflection_coefficient(model, ElementState::phase(0.7), kAt30);
    CHECK(std::abs(r.value - std::polar(1.0, 0.7)) <= 1e-15);
    // Binary states still mean exactly -j / +j under the continuous model.
    CHECK(reflection_coefficient(model, ElementState::binary(1), kAt30).value ==
          std::complex<double>(0.0, 1.0));
}

TEST_CASE("span table interpolates, clamps, and flags extrapolation") {
    const ElementResponseModel model = ElementResponseModel::angle_dependent();
    CHECK(model.span_at(15.0).span_deg == doctest::Approx(276.0));
    CHECK_FALSE(model.span_at(15.0).clamped);
    CHECK(model.span_at(45.0).span_deg == doctest::Approx(250.0));
    // Midpoint between the 15 and 30 degree samples.
    CHECK(model.span_at(22.5).span_deg == doctest::Approx(270.5));
    // Outside the table: clamp to the nearest endpoint and say so.
    CHECK(model.span_at(10.0).span_deg == doctest::Approx(276.0));
    CHECK(model.span_at(10.0).clamped);
    CHECK(model.span_at(60.0).span_deg == doctest::Approx(250.0));
    CHECK(model.span_at(60.0).clamped);
}

TEST_CASE("measured spans always achieve the full 180 degree separation") {
    // The normalization anchors a 250-degree span to exactly 180 degrees of
    // usable two-state separation, and wider spans saturate there.
    const ElementResponseModel model = ElementResponseModel::angle_dependent();
    CHECK(model.separation_deg(15.0) == doctest::Approx(180.0));
    CHECK(model.separation_deg(30.0) == doctest::Approx(180.0));
    CHECK(model.separation_deg(45.0) == doctest::Approx(180.0));
    // A narrower hypothetical span scales linearly below the cap.
    const ElementResponseModel narrow =
        ElementResponseModel::angle_dependent({{10.0, 200.0}, {50.0, 125.0}}, 0.0);
    CHECK(narrow.separation_deg(10.0) == doctest::Approx(144.0));
    CHECK(narrow.separation_deg(50.0) == doctest::Approx(90.0));
}

TEST_CASE("angle-dependent states sit symmetrically inside the span") {
    const double ripple = 6.5;
    const ElementResponseModel model =
        ElementResponseModel::angle_dependent({{10.0, 200.0}, {50.0, 125.0}}, ripple);
    const AngularPosition at10 = AngularPosition::from_degrees(10.0, 0.0);

    const double sep = model.separation_deg(10.0);  // 144 degrees
    const auto r0 = reflection_coefficient(model, ElementState::binary(0), at10);
    const auto r1 = reflection_coefficient(model, ElementState::binary(1), at10);
    CHECK(std::arg(r1.value) == doctest::Approx(0.5 * sep * M_PI / 180.0).epsilon(1e-12));
    CHECK(std::arg(r0.value) == doctest::Approx(-0.5 * sep * M_PI / 180.0).epsilon(1e-12));
    // Phase separation between the states equals the achievable separation.
    CHECK(std::arg(r1.value) - std::arg(r0.value) ==
          doctest::Approx(sep * M_PI / 180.0).epsilon(1e-12));

    // Amplitudes follow the loss ramp at u = 0.5 +/- sep / (2 span).
    const double u1 = 0.5 + sep / (2.0 * 200.0);
    const double u0 = 0.5 - sep / (2.0 * 200.0);
    CHECK(std::abs(r1.value) == doctest::Approx(std::pow(10.0, -ripple * u1 / 20.0)));
    CHECK(std::abs(r0.value) == doctest::Approx(std::pow(10.0, -ripple * u0 / 20.0)));
    CHECK(std::abs(r1.value) < std::abs(r0.value));  // deeper into the lossy end

    CHECK_THROWS_AS(reflection_coefficient(model, ElementState::phase(0.1), at10),
                    std::invalid_argument);
}

TEST_CASE("angle-dependent model validates its inputs") {
    CHECK_THROWS_AS(ElementResponseModel::angle_dependent({}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ElementResponseModel::angle_dependent({{30.0, 265.0}, {15.0, 276.0}}, 0.0),
                    std::invalid_argument);  // not increasing
    CHECK_THROWS_AS(ElementResponseModel::angle_dependent({{15.0, 0.0}}, 0.0),
                    std::invalid_argument);  // empty span
    CHECK_THROWS_AS(ElementResponseModel::angle_dependent({{15.0, 400.0}}, 0.0),
                    std::invalid_argument);  // beyond a full turn
    CHECK_THROWS_AS(
        ElementResponseModel::angle_dependent(ElementResponseModel::measured_phase_spans(), -1.0),
        std::invalid_argument);
}

TEST_CASE("whole configurations map through the model element by element") {
    const ReflectionConfig config = ReflectionConfig::from_states(2, 2, {0, 1, 1, 0});

    // Ideal model: identical to the materialized coefficients, bitwise.
    const cvec ideal =
        effective_coefficients(config, ElementResponseModel::ideal_1bit(), kAt30);
    for (std::size_t i = 0; i < ideal.size(); ++i) CHECK(ideal[i] == config.coefficients()[i]);

    // Impaired model: every element moves off the ideal +/-j states.
    const ElementResponseModel impaired =
        ElementResponseModel::angle_dependent(ElementResponseModel::measured_phase_spans(),
                                              ElementResponseModel::kMeasuredRippleDb);
    const cvec mapped = effective_coefficients(config, impaired, kAt30);
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        CHECK(std::abs(mapped[i]) < 1.0);
        CHECK(std::abs(mapped[i] - config.coefficients()[i]) > 1e-3);
    }

    // Continuous configs are already coefficient targets: pass through.
    const cvec raw = {{0.3, 0.4}, {1.0, 0.0}, {0.0, 1.0}, {-0.7, 0.1}};
    const ReflectionConfig cont = ReflectionConfig::from_coefficients(2, 2, raw);
    const cvec through = effective_coefficients(cont, impaired, kAt30);
    for (std::size_t i = 0; i < raw.size(); ++i) CHECK(through[i] == raw[i]);
}
