#include "pwlab/mode_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace pwlab::mode {

namespace {
constexpr cplx kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

double ModeState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

ModeState ModeState::normalized() const {
    ModeState out = *this;
    double n = std::sqrt(norm_sq());
    if (n > 0.0)
        for (auto& a : out.amps) a /= n;
    return out;
}

ModeState make_bell_state() {
    ModeState s;
    s.at(1, 4) = kInvSqrt2;
    s.at(2, 3) = kInvSqrt2;
    return s;
}

ModeState apply_phase(const ModeState& s, int m, double phi) {
    if (m < 1 || m > 4) throw std::invalid_argument("apply_phase: mode index must be in 1..4");
    const cplx f = std::exp(kI * phi);
    ModeState out = s;
    for (int a = 1; a <= 2; ++a)
        for (int b = 3; b <= 4; ++b)
            if (a == m || b == m) out.at(a, b) *= f;
    return out;
}

ModeState apply_beamsplitter(const ModeState& s, Side side) {
    ModeState out;
    if (side == Side::alice) {
        for (int b = 3; b <= 4; ++b) {
            out.at(1, b) = kInvSqrt2 * (s.at(1, b) + kI * s.at(2, b));
            out.at(2, b) = kInvSqrt2 * (kI * s.at(1, b) + s.at(2, b));
        }
    } else {
        for (int a = 1; a <= 2; ++a) {
            out.at(a, 3) = kInvSqrt2 * (s.at(a, 3) + kI * s.at(a, 4));
            out.at(a, 4) = kInvSqrt2 * (kI * s.at(a, 3) + s.at(a, 4));
        }
    }
    return out;
}

CoincidenceTable detection_probs(const ModeState& s) {
    CoincidenceTable t;
    for (int i = 0; i < 4; ++i) t.p[i] = std::norm(s.amps[i]);
    return t;
}

double correlator(double x, double y) {
    ModeState s = make_bell_state();
    s = apply_phase(s, 1, x);
    s = apply_phase(s, 4, y);
    s = apply_beamsplitter(s, Side::alice);
    s = apply_beamsplitter(s, Side::bob);
    CoincidenceTable t = detection_probs(s);
    return t.at(1, 3) + t.at(2, 4) - t.at(1, 4) - t.at(2, 3);
}

double chsh(double x, double xp, double y, double yp) {
    return correlator(x, y) + correlator(x, yp) + correlator(xp, y) - correlator(xp, yp);
}

}  // namespace pwlab::mode
