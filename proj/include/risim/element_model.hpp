#pragma once

#include <complex>
#include <vector>

#include "risim/config.hpp"
#include "risim/geometry.hpp"

namespace risim {

/// Control input of a single reflecting element: either one bit (the two
/// bias states of a 1-bit element) or a continuous phase target.
class ElementState {
public:
    static ElementState binary(int bit);
    /// Continuous phase target in radians, wrapped to [-pi, pi).
    static ElementState phase(double radians);

    bool is_binary() const noexcept { return binary_; }
    int bit() const;       // throws std::logic_error on continuous states
    double phase() const;  // throws std::logic_error on binary states

private:
    ElementState() = default;
    bool binary_ = false;
    int bit_ = 0;
    double phase_ = 0.0;
};

enum class ElementResponseMode { ideal_1bit, ideal_continuous, angle_dependent };

/// One measured achievable-phase-span sample: at the given incidence zenith
/// angle, the element's reflection phase can be tuned over span_deg degrees.
struct PhaseSpanPoint {
    double incidence_deg;
    double span_deg;
};

/// Maps a per-element control state (and incident zenith angle) to a complex
/// reflection coefficient. The ideal modes are exact phase devices; the
/// angle_dependent mode is a phenomenological impairment model built from a
/// table of measured achievable phase spans versus incidence angle.
class ElementResponseModel {
public:
    static ElementResponseModel ideal_1bit();
    static ElementResponseModel ideal_continuous();
    /// Table must be non-empty with strictly increasing incidence angles and
    /// spans in (0, 360]; ripple must be nonnegative dB.
    static ElementResponseModel angle_dependent(
        std::vector<PhaseSpanPoint> table = measured_phase_spans(),
        double amplitude_ripple_db = 0.0);

    /// The prototype's measured spans: 276 deg at 15 deg incidence, 265 at 30,
    /// 250 at 45.
    static std::vector<PhaseSpanPoint> measured_phase_spans();
    /// Worst-case measured amplitude fluctuation across a bias sweep.
    static constexpr double kMeasuredRippleDb = 6.5;

    ElementResponseMode mode() const noexcept { return mode_; }
    const std::vector<PhaseSpanPoint>& phase_range_table() const noexcept { return table_; }
    double amplitude_ripple_db() const noexcept { return ripple_db_; }

    struct SpanLookup {
        double span_deg;
        bool clamped;  // incidence fell outside the table and was clamped
    };
    /// Linear interpolation of the span table at the given incidence zenith
    /// angle; out-of-range angles clamp to the nearest endpoint.
    SpanLookup span_at(double incidence_deg) const;

    /// Achievable two-state phase separation at the given incidence:
    /// min(180, span * 180/250) degrees. The 180/250 normalization anchors
    /// the worst tabulated span to exactly 180 degrees, the separation the
    /// bias pair was calibrated to in that geometry.
    double separation_deg(double incidence_deg) const;

private:
    ElementResponseModel() = default;
    ElementResponseMode mode_ = ElementResponseMode::ideal_1bit;
    std::vector<PhaseSpanPoint> table_;
    double ripple_db_ = 0.0;
};

struct ElementReflection {
    std::complex<double> value;
    bool incidence_clamped;  // true when the span table was extrapolated
};

/// Complex reflection coefficient of one element.
///
/// ideal_1bit: state 0 -> exactly -j, state 1 -> exactly +j, incidence ignored.
/// ideal_continuous: binary states as above, phase states -> exp(j*phase).
/// angle_dependent (binary states only): the two states sit at +/-(sep/2)
/// where sep = separation_deg(incidence); amplitude is 10^(-ripple*u/20) with
/// the state-dependent loss position u = 0.5 +/- sep/(2*span), placing the
/// two bias points symmetrically inside the achievable span.
ElementReflection reflection_coefficient(const ElementResponseModel& model,
                                         const ElementState& state,
                                         const AngularPosition& incident);

/// Effective per-element coefficients of a whole configuration under a model.
/// Binary configs map each state through reflection_coefficient; continuous
/// configs pass through unchanged (they already are coefficient targets).
cvec effective_coefficients(const ReflectionConfig& config,
                            const ElementResponseModel& model,
                            const AngularPosition& incident);

}  // namespace risim
