#pragma once

#include <array>
#include <complex>

namespace pwlab::mode {

using cplx = std::complex<double>;

// Two particles over four interferometer modes, one particle on each
// side: `a` is the mode of Alice's particle (1 or 2), `b` Bob's (3 or
// 4). Basis order is fixed as (1,3),(1,4),(2,3),(2,4).
struct ModeState {
    std::array<cplx, 4> amps{};

    static int index(int a, int b) { return (a - 1) * 2 + (b - 3); }
    cplx& at(int a, int b) { return amps[index(a, b)]; }
    const cplx& at(int a, int b) const { return amps[index(a, b)]; }

    double norm_sq() const;
    ModeState normalized() const;
};

enum class Side { alice, bob };

// (|1,4> + |2,3>)/sqrt(2): the entangled source state.
ModeState make_bell_state();

// Multiplies every amplitude whose index contains `m` by e^{i phi}.
// m in {1,2} acts on Alice's particle, {3,4} on Bob's.
ModeState apply_phase(const ModeState& s, int m, double phi);

// 50/50 beam splitter with transmission 1 and reflection i: Alice's
// splitter mixes a=1,2, Bob's mixes b=3,4, both with
// (1/sqrt2) [[1, i], [i, 1]]. Mode numbering follows the no-crossing
// convention (mode n goes to detector n).
ModeState apply_beamsplitter(const ModeState& s, Side side);

struct CoincidenceTable {
    std::array<double, 4> p{};  // same basis order as ModeState

    double& at(int a, int b) { return p[ModeState::index(a, b)]; }
    const double& at(int a, int b) const { return p[ModeState::index(a, b)]; }
    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

// P_ab = |<a,b|s>|^2 for the four detector coincidences.
CoincidenceTable detection_probs(const ModeState& s);

// Runs the full source -> phases -> beam splitters -> detectors
// pipeline and returns E = P13 + P24 - P14 - P23 (= cos(x+y)).
double correlator(double x, double y);

// S = E(x,y) + E(x,y') + E(x',y) - E(x',y').
double chsh(double x, double xp, double y, double yp);

}  // namespace pwlab::mode
