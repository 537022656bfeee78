#include "risim/element_model.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

ElementState ElementState::binary(int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("ElementState: binary state must be 0 or 1");
    }
    ElementState s;
    s.binary_ = true;
    s.bit_ = bit;
    return s;
}

ElementState ElementState::phase(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("ElementState: phase must be finite");
    }
    double a = std::fmod(radians + M_PI, 2.0 * M_PI);
    if (a < 0.0) {
        a += 2.0 * M_PI;
    }
    ElementState s;
    s.binary_ = false;
    s.phase_ = a - M_PI;
    return s;
}

int ElementState::bit() const {
    if (!binary_) {
        throw std::logic_error("ElementState: continuous state has no bit value");
    }
    return bit_;
}

double ElementState::phase() const {
    if (binary_) {
        throw std::logic_error("ElementState: binary state has no continuous phase");
    }
    return phase_;
}

ElementResponseModel ElementResponseModel::ideal_1bit() {
    ElementResponseModel m;
    m.mode_ = ElementResponseMode::ideal_1bit;
    return m;
}

ElementResponseModel ElementResponseModel::ideal_continuous() {
    ElementResponseModel m;
    m.mode_ = ElementResponseMode::ideal_continuous;
    return m;
}

ElementResponseModel ElementResponseModel::angle_dependent(std::vector<PhaseSpanPoint> table,
                                                           double amplitude_ripple_db) {
    if (table.empty()) {
        throw std::invalid_argument("ElementResponseModel: span table must not be empty");
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].span_deg > 0.0) || !(table[i].span_deg <= 360.0)) {
            throw std::invalid_argument(
                "ElementResponseModel: phase spans must lie in (0, 360] degrees");
        }
        if (i > 0 && !(table[i].incidence_deg > table[i - 1].incidence_deg)) {
            throw std::invalid_argument(
                "ElementResponseModel: table incidence angles must be strictly increasing");
        }
    }
    if (!(amplitude_ripple_db >= 0.0)) {
        throw std::invalid_argument("ElementResponseModel: amplitude ripple must be nonnegative");
    }
    ElementResponseModel m;
    m.mode_ = ElementResponseMode::angle_dependent;
    m.table_ = std::move(table);
    m.ripple_db_ = amplitude_ripple_db;
    return m;
}

std::vector<PhaseSpanPoint> ElementResponseModel::measured_phase_spans() {
    return {{15.0, 276.0}, {30.0, 265.0}, {45.0, 250.0}};
}

ElementResponseModel::SpanLookup ElementResponseModel::span_at(double incidence_deg) const {
    if (table_.empty()) {
        throw std::logic_error("ElementResponseModel: no span table in this mode");
    }
    if (incidence_deg <= table_.front().incidence_deg) {
        return {table_.front().span_deg, incidence_deg != table_.front().incidence_deg};
    }
    if (incidence_deg >= table_.back().incidence_deg) {
        return {table_.back().span_deg, incidence_deg != table_.back().incidence_deg};
    }
    for (std::size_t i = 1; i < table_.size(); ++i) {
        if (incidence_deg <= table_[i].incidence_deg) {
            const auto& lo = table_[i - 1];
            const auto& hi = table_[i];
            const double t = (incidence_deg - lo.incidence_deg) /
                             (hi.incidence_deg - lo.incidence_deg);
            return {lo.span_deg + t * (hi.span_deg - lo.span_deg), false};
        }
    }
    return {table_.back().span_deg, false};  // unreachable
}

double ElementResponseModel::separation_deg(double incidence_deg) const {
    const double span = span_at(incidence_deg).span_deg;
    return std::min(180.0, span * (180.0 / 250.0));
}

ElementReflection reflection_coefficient(const ElementResponseModel& model,
                                         const ElementState& state,
                                         const AngularPosition& incident) {
    switch (model.mode()) {
        case ElementResponseMode::ideal_1bit: {
            if (!state.is_binary()) {
                throw std::invalid_argument(
                    "reflection_coefficient: ideal_1bit model accepts only binary states");
            }
            return {{0.0, state.bit() ? 1.0 : -1.0}, false};
        }
        case ElementResponseMode::ideal_continuous: {
            if (state.is_binary()) {
                return {{0.0, state.bit() ? 1.0 : -1.0}, false};
            }
            return {std::polar(1.0, state.phase()), false};
        }
        case ElementResponseMode::angle_dependent: {
            if (!state.is_binary()) {
                throw std::invalid_argument(
                    "reflection_coefficient: angle_dependent model accepts only binary states");
            }
            const auto lookup = model.span_at(incident.zenith_deg());
            const double sep = model.separation_deg(incident.zenith_deg());
            const double half = 0.5 * sep * M_PI / 180.0;
            const double sign = state.bit() ? 1.0 : -1.0;
            // Loss position inside the achievable span: the states sit
            // symmetrically about the span center, sep/(2*span) away.
            const double u = 0.5 + sign * sep / (2.0 * lookup.span_deg);
            const double amplitude = std::pow(10.0, -model.amplitude_ripple_db() * u / 20.0);
            return {std::polar(amplitude, sign * half), lookup.clamped};
        }
    }
    throw std::logic_error("reflection_coefficient: unknown model mode");
}

cvec effective_coefficients(const ReflectionConfig& config, const ElementResponseModel& model,
                            const AngularPosition& incident) {
    if (!config.is_binary()) {
        return config.coefficients();
    }
    cvec out;
    out.reserve(config.elements());
    for (std::uint8_t s : config.states()) {
        out.push_back(reflection_coefficient(model, ElementState::binary(s), incident).value);
    }
    return out;
}

}  // namespace risim
