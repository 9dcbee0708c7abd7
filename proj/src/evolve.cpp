#include "pwlab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwlab/errors.hpp"
#include "pwlab/kernels.hpp"

namespace pwlab::wave {

namespace {
constexpr cplx kI{0.0, 1.0};
constexpr double kLeakageBand = 0.9;     // of nyquist
constexpr double kLeakageLimit = 1e-6;   // energy fraction
}  // namespace

SplitStepEvolver::SplitStepEvolver(WaveField initial, std::vector<double> potential)
    : field_(std::move(initial)), potential_(std::move(potential)) {
    const Grid& g = field_.grid;
    g.validate();
    if (!potential_.empty() && potential_.size() != g.size())
        throw std::invalid_argument("evolver: potential array size mismatch");

    kin_x_.resize(g.nx());
    for (int i = 0; i < g.nx(); ++i) {
        const double k = g.wavenumber(0, i);
        kin_x_[i] = std::exp(-kI * (g.hbar * k * k * g.dt / (2.0 * g.axis[0].mass)));
    }
    if (g.dims == 2) {
        kin_y_.resize(g.ny());
        for (int i = 0; i < g.ny(); ++i) {
            const double k = g.wavenumber(1, i);
            kin_y_[i] = std::exp(-kI * (g.hbar * k * k * g.dt / (2.0 * g.axis[1].mass)));
        }
    }
    if (!potential_.empty()) {
        pot_half_.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            pot_half_[i] = std::exp(-kI * (potential_[i] * g.dt / (2.0 * g.hbar)));
    }
    spec_.resize(g.size());
}

void SplitStepEvolver::add_kick(const KickSpec& kick) {
    pending_kicks_.push_back(kick);
    std::sort(pending_kicks_.begin(), pending_kicks_.end(),
              [](const KickSpec& a, const KickSpec& b) { return a.t_apply < b.t_apply; });
}

void SplitStepEvolver::apply_pending_kicks() {
    while (!pending_kicks_.empty() &&
           pending_kicks_.front().t_apply <= field_.time + 0.5 * field_.grid.dt) {
        apply_kick_inplace(field_, pending_kicks_.front());
        pending_kicks_.erase(pending_kicks_.begin());
        spec_valid_ = false;
    }
}

void SplitStepEvolver::do_step() {
    const Grid& g = field_.grid;
    const std::size_t n = g.size();

    if (!potential_.empty()) kernels::cmul(field_.amps.data(), pot_half_.data(), n);

    std::copy(field_.amps.begin(), field_.amps.end(), spec_.begin());
    if (g.dims == 1) {
        fft::forward_1d(spec_.data(), g.nx());
        kernels::cmul(spec_.data(), kin_x_.data(), n);
    } else {
        fft::forward_2d(spec_.data(), g.nx(), g.ny());
        kernels::phase2d(spec_.data(), kin_x_.data(), kin_y_.data(), g.nx(), g.ny());
    }

    std::copy(spec_.begin(), spec_.end(), field_.amps.begin());
    if (g.dims == 1)
        fft::inverse_1d(field_.amps.data(), g.nx());
    else
        fft::inverse_2d(field_.amps.data(), g.nx(), g.ny());
    kernels::scale(field_.amps.data(), 1.0 / static_cast<double>(n), field_.amps.size());

    if (!potential_.empty()) {
        kernels::cmul(field_.amps.data(), pot_half_.data(), n);
        spec_valid_ = false;  // spec_ no longer matches the field
    } else {
        spec_valid_ = true;   // spec_ holds the new field's unnormalized spectrum
    }

    field_.time += g.dt;
    ++steps_;
}

void SplitStepEvolver::step(int n) {
    for (int i = 0; i < n; ++i) {
        apply_pending_kicks();
        do_step();
    }
}

const fft::avector<cplx>& SplitStepEvolver::spectrum() {
    if (!spec_valid_) {
        apply_pending_kicks();
        std::copy(field_.amps.begin(), field_.amps.end(), spec_.begin());
        if (field_.grid.dims == 1)
            fft::forward_1d(spec_.data(), field_.grid.nx());
        else
            fft::forward_2d(spec_.data(), field_.grid.nx(), field_.grid.ny());
        spec_valid_ = true;
    }
    return spec_;
}

double SplitStepEvolver::spectral_leakage() {
    const fft::avector<cplx>& s = spectrum();
    const Grid& g = field_.grid;
    const int nx = g.nx(), ny = g.ny();
    double total = 0.0, band = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const bool ox = std::abs(g.wavenumber(0, ix)) >= kLeakageBand * g.nyquist(0);
        for (int iy = 0; iy < ny; ++iy) {
            const double w = std::norm(s[static_cast<std::size_t>(ix) * ny + iy]);
            total += w;
            bool hot = ox;
            if (g.dims == 2)
                hot = hot || std::abs(g.wavenumber(1, iy)) >= kLeakageBand * g.nyquist(1);
            if (hot) band += w;
        }
    }
    return total > 0.0 ? band / total : 0.0;
}

WaveField evolve(const WaveField& f, int n_steps) {
    if (n_steps < 0) throw std::invalid_argument("evolve: negative step count");
    if (n_steps == 0) return f;
    SplitStepEvolver ev(f);
    ev.step(n_steps);
    if (ev.spectral_leakage() > kLeakageLimit)
        throw PhysicsError("evolve: spectral leakage above 1e-6 (bandwidth violation)");
    return ev.field();
}

}  // namespace pwlab::wave
