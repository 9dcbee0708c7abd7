#include "pwlab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pwlab/errors.hpp"
#include "pwlab/parallel.hpp"

namespace pwlab::traj {

namespace {

// Velocity linearly interpolated in time between two snapshots.
struct LerpField {
    const VelocitySnapshot* a;
    const VelocitySnapshot* b;

    bool velocity(double t, const Point& p, std::array<double, 2>& v, double node_frac) const {
        const double span = b->time - a->time;
        const double w = span > 0.0 ? std::clamp((t - a->time) / span, 0.0, 1.0) : 0.0;
        std::array<double, 2> va{}, vb{};
        if (!a->velocity(p, va, node_frac) || !b->velocity(p, vb, node_frac)) return false;
        for (int k = 0; k < 2; ++k) v[k] = (1.0 - w) * va[k] + w * vb[k];
        return true;
    }
};

struct StepContext {
    const VelocitySnapshot* s0;
    const VelocitySnapshot* sh;
    const VelocitySnapshot* s1;
    double node_frac;
    int dims;
    double spread_limit;  // max allowed stage-velocity spread * h, in grid cells
};

inline void axpy_pt(Point& out, const Point& x, double c, const std::array<double, 2>& v,
                    int dims) {
    out = x;
    for (int k = 0; k < dims; ++k) out[k] = x[k] + c * v[k];
}

// The RK4 map can lose monotonicity where the guidance field varies on
// scales shorter than one step (velocity spikes near interference
// nodes). If the four stage velocities disagree by more than
// spread_limit grid cells over the step, the step is rejected and
// retried with micro steps, same as on node proximity.
bool stages_coherent(const std::array<double, 2> k[4], double h, const Grid& g, int dims,
                     double limit) {
    for (int ax = 0; ax < dims; ++ax) {
        double lo = k[0][ax], hi = k[0][ax];
        for (int s = 1; s < 4; ++s) {
            lo = std::min(lo, k[s][ax]);
            hi = std::max(hi, k[s][ax]);
        }
        if ((hi - lo) * h > limit * g.dx(ax)) return false;
    }
    return true;
}

// One RK4 step against the three snapshots. Returns false on node
// proximity or stage incoherence.
bool rk4_step(const StepContext& c, const Point& x, double h, Point& out) {
    std::array<double, 2> k[4] = {};
    Point p{};
    if (!c.s0->velocity(x, k[0], c.node_frac)) return false;
    axpy_pt(p, x, 0.5 * h, k[0], c.dims);
    if (!c.sh->velocity(p, k[1], c.node_frac)) return false;
    axpy_pt(p, x, 0.5 * h, k[1], c.dims);
    if (!c.sh->velocity(p, k[2], c.node_frac)) return false;
    axpy_pt(p, x, h, k[2], c.dims);
    if (!c.s1->velocity(p, k[3], c.node_frac)) return false;
    if (!stages_coherent(k, h, c.s0->grid, c.dims, c.spread_limit)) return false;
    out = x;
    for (int ax = 0; ax < c.dims; ++ax)
        out[ax] = x[ax] + h / 6.0 * (k[0][ax] + 2.0 * k[1][ax] + 2.0 * k[2][ax] + k[3][ax]);
    return true;
}

// RK4 with time-interpolated velocity; used by the shrunken micro steps.
bool rk4_lerp_step(const LerpField& f, double t, const Point& x, double h, double node_frac,
                   int dims, double spread_limit, Point& out) {
    std::array<double, 2> k[4] = {};
    Point p{};
    if (!f.velocity(t, x, k[0], node_frac)) return false;
    axpy_pt(p, x, 0.5 * h, k[0], dims);
    if (!f.velocity(t + 0.5 * h, p, k[1], node_frac)) return false;
    axpy_pt(p, x, 0.5 * h, k[1], dims);
    if (!f.velocity(t + 0.5 * h, p, k[2], node_frac)) return false;
    axpy_pt(p, x, h, k[2], dims);
    if (!f.velocity(t + h, p, k[3], node_frac)) return false;
    if (!stages_coherent(k, h, f.a->grid, dims, spread_limit)) return false;
    out = x;
    for (int ax = 0; ax < dims; ++ax)
        out[ax] = x[ax] + h / 6.0 * (k[0][ax] + 2.0 * k[1][ax] + 2.0 * k[2][ax] + k[3][ax]);
    return true;
}

// Recursive shrink policy: split [t, t+h] into `shrink` micro steps,
// descending at most `levels` times before giving up. The deepest
// level drops the stage-coherence gate and fails only on nodes.
bool advance_shrunk(const VelocitySnapshot& s0, const VelocitySnapshot& sh,
                    const VelocitySnapshot& s1, double t, const Point& x, double h,
                    double node_frac, int dims, int shrink, int levels, double spread_limit,
                    Point& out) {
    const double hm = h / shrink;
    const double limit = levels > 0 ? spread_limit : std::numeric_limits<double>::infinity();
    Point cur = x;
    for (int m = 0; m < shrink; ++m) {
        const double tm = t + m * hm;
        const double tmid = tm + 0.5 * hm;
        const LerpField f = tmid <= sh.time ? LerpField{&s0, &sh} : LerpField{&sh, &s1};
        Point next{};
        if (!rk4_lerp_step(f, tm, cur, hm, node_frac, dims, limit, next)) {
            if (levels <= 0) return false;
            if (!advance_shrunk(s0, sh, s1, tm, cur, hm, node_frac, dims, shrink, levels - 1,
                                spread_limit, next))
                return false;
        }
        cur = next;
    }
    out = cur;
    return true;
}

void wrap_position(const wave::Grid& g, Point& p, SampleFlags& fl) {
    for (int ax = 0; ax < g.dims; ++ax) {
        const double lo = g.origin(ax), L = g.axis[ax].extent;
        if (p[ax] < lo || p[ax] >= lo + L) {
            p[ax] -= L * std::floor((p[ax] - lo) / L);
            fl.wrapped = true;
        }
    }
}

long count_inversions(std::vector<int>& perm) {
    // merge-sort inversion count
    std::vector<int> tmp(perm.size());
    long inv = 0;
    for (std::size_t width = 1; width < perm.size(); width *= 2) {
        for (std::size_t lo = 0; lo + width < perm.size(); lo += 2 * width) {
            const std::size_t mid = lo + width, hi = std::min(lo + 2 * width, perm.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (perm[i] <= perm[j])
                    tmp[k++] = perm[i++];
                else {
                    inv += static_cast<long>(mid - i);
                    tmp[k++] = perm[j++];
                }
            }
            while (i < mid) tmp[k++] = perm[i++];
            while (j < hi) tmp[k++] = perm[j++];
            std::copy(tmp.begin() + lo, tmp.begin() + hi, perm.begin() + lo);
        }
    }
    return inv;
}

}  // namespace

History integrate(Ensemble& e, wave::SplitStepEvolver& ev, const IntegrateOptions& opts) {
    const wave::Grid& grid = ev.field().grid;
    const double h = 2.0 * grid.dt;
    const double t0 = ev.field().time;
    if (opts.t_final <= t0) throw std::invalid_argument("integrate: t_final before field time");
    const long n_steps = std::lround((opts.t_final - t0) / h);
    if (n_steps < 1) throw std::invalid_argument("integrate: no steps to take");

    // step indices at which to record (stride + snapped checkpoints + final)
    std::vector<char> record_at(n_steps + 1, 0);
    record_at[0] = 1;
    record_at[n_steps] = 1;
    for (long s = 0; s <= n_steps; s += std::max(1, opts.record_stride)) record_at[s] = 1;
    std::vector<long> checkpoint_steps;
    for (double tc : opts.checkpoint_times) {
        long s = std::clamp<long>(std::lround((tc - t0) / h), 0, n_steps);
        record_at[s] = 1;
        checkpoint_steps.push_back(s);
    }
    std::sort(checkpoint_steps.begin(), checkpoint_steps.end());
    checkpoint_steps.erase(std::unique(checkpoint_steps.begin(), checkpoint_steps.end()),
                           checkpoint_steps.end());

    History hist;
    const long n = e.size();

    auto record = [&](long step_idx) {
        hist.times.push_back(t0 + step_idx * h);
        hist.positions.push_back(e.position);
        if (std::find(checkpoint_steps.begin(), checkpoint_steps.end(), step_idx) !=
            checkpoint_steps.end()) {
            History::FieldMarginal m;
            m.time = ev.field().time;
            m.cell_mass[0] = wave::density_marginal(ev.field(), 0);
            if (grid.dims == 2) m.cell_mass[1] = wave::density_marginal(ev.field(), 1);
            hist.marginals.push_back(std::move(m));
        }
    };

    VelocitySnapshot s0 = make_snapshot(ev);
    record(0);

    for (long step = 0; step < n_steps; ++step) {
        ev.step();
        VelocitySnapshot sh = make_snapshot(ev);
        ev.step();
        VelocitySnapshot s1 = make_snapshot(ev);

        const StepContext ctx{&s0, &sh, &s1, opts.node_frac, grid.dims, opts.spread_limit};
        const double t = s0.time;

#pragma omp parallel for schedule(static) if (pwlab::parallel_enabled())
        for (long i = 0; i < n; ++i) {
            if (e.flags[i].trapped) continue;
            Point next{};
            if (!rk4_step(ctx, e.position[i], h, next)) {
                e.flags[i].node_events += 1;
                if (!advance_shrunk(s0, sh, s1, t, e.position[i], h, opts.node_frac, grid.dims,
                                    opts.shrink_factor, opts.max_shrink_levels,
                                    opts.spread_limit, next)) {
                    e.flags[i].trapped = true;
                    continue;
                }
            }
            wrap_position(grid, next, e.flags[i]);
            e.position[i] = next;
        }

        s0 = std::move(s1);
        if (record_at[step + 1]) record(step + 1);
    }
    return hist;
}

CrossingReport check_no_crossing(const Ensemble& e, const History& h) {
    CrossingReport rep;
    rep.min_pair_distance = std::numeric_limits<double>::infinity();
    const long n = e.size();
    const long nt = h.n_times();
    if (nt == 0 || n < 2) return rep;

    // active samples: not trapped, distinct starts
    std::vector<long> active;
    for (long i = 0; i < n; ++i) {
        if (e.flags[i].trapped) continue;
        active.push_back(i);
    }
    for (long i = 0; i < n; ++i)
        if (e.flags[i].duplicate_start) ++rep.degenerate_pairs;
    rep.degenerate_pairs /= 2;

    if (e.dims == 1) {
        // exact order preservation against the initial ordering
        std::vector<long> order(active);
        std::sort(order.begin(), order.end(), [&](long a, long b) {
            return h.positions[0][a][0] < h.positions[0][b][0];
        });
        for (long ti = 1; ti < nt; ++ti) {
            const auto& pos = h.positions[ti];
            for (std::size_t j = 1; j < order.size(); ++j)
                if (pos[order[j - 1]][0] > pos[order[j]][0]) ++rep.config_space_crossings;
        }
        return rep;
    }

    // 2D: pairwise distinctness at every recorded time (x-sorted sweep)
    const double tol = 1e-9;
    for (long ti = 0; ti < nt; ++ti) {
        const auto& pos = h.positions[ti];
        std::vector<long> idx(active);
        std::sort(idx.begin(), idx.end(),
                  [&](long a, long b) { return pos[a][0] < pos[b][0]; });
        for (std::size_t j = 0; j < idx.size(); ++j) {
            for (std::size_t k = j + 1; k < idx.size(); ++k) {
                const double dx = pos[idx[k]][0] - pos[idx[j]][0];
                if (dx > rep.min_pair_distance) break;
                const double dy = pos[idx[k]][1] - pos[idx[j]][1];
                const double d = std::hypot(dx, dy);
                if (e.flags[idx[j]].duplicate_start && e.flags[idx[k]].duplicate_start) continue;
                rep.min_pair_distance = std::min(rep.min_pair_distance, d);
                if (d < tol) ++rep.config_space_crossings;
            }
        }
    }

    // shadow crossings: inversions of the particle-axis order between
    // the first and last recorded time
    {
        std::vector<long> start_order(active);
        std::sort(start_order.begin(), start_order.end(), [&](long a, long b) {
            return h.positions[0][a][0] < h.positions[0][b][0];
        });
        std::vector<long> rank(n, 0);
        for (std::size_t r = 0; r < start_order.size(); ++r) rank[start_order[r]] = r;
        std::vector<long> final_order(active);
        std::sort(final_order.begin(), final_order.end(), [&](long a, long b) {
            return h.positions[nt - 1][a][0] < h.positions[nt - 1][b][0];
        });
        std::vector<int> perm(final_order.size());
        for (std::size_t j = 0; j < final_order.size(); ++j)
            perm[j] = static_cast<int>(rank[final_order[j]]);
        rep.shadow_crossings = count_inversions(perm);
    }
    return rep;
}

BounceLabel classify_bounce(double x_initial, double x_final, double meeting_point,
                            double window_halfwidth) {
    if (std::abs(x_final - meeting_point) < window_halfwidth) return BounceLabel::inconclusive;
    const bool side0 = x_initial < meeting_point;
    const bool side1 = x_final < meeting_point;
    return side0 == side1 ? BounceLabel::bounced : BounceLabel::crossed;
}

}  // namespace pwlab::traj
