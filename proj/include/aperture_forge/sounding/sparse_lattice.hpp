#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/random.hpp"
#include "lattice.hpp"

namespace aperture_forge {

// Boresight array-factor evaluator on an n x n sine-space grid spanning [-1, 1] (both ends
// included). Sidelobes are visible points outside the square mainlobe |u| < lambda/(Nx dx),
// |v| < lambda/(Ny dy).
class PslEvaluator {
public:
    PslEvaluator(const SamplingLattice& L, double f, Eigen::Index n) : L_(L) {
        if (n < 3) throw std::invalid_argument("PSL grid needs at least 3 points");
        const double k = two_pi * f / speed_of_light;
        const double lam = speed_of_light / f;
        const double ex = lam / (static_cast<double>(L.nx) * L.dx), ey = lam / (static_cast<double>(L.ny) * L.dy);
        std::vector<double> us(static_cast<size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) us[static_cast<size_t>(i)] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        Ex_.resize(L.nx, n);
        Ey_.resize(L.ny, n);
        for (Eigen::Index m = 0; m < L.nx; ++m)
            for (Eigen::Index i = 0; i < n; ++i) Ex_(m, i) = std::polar(1.0, k * L.x(m) * us[static_cast<size_t>(i)]);
        for (Eigen::Index q = 0; q < L.ny; ++q)
            for (Eigen::Index i = 0; i < n; ++i) Ey_(q, i) = std::polar(1.0, k * L.y(q) * us[static_cast<size_t>(i)]);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index q = 0; q < n; ++q) {
                const double u = us[static_cast<size_t>(i)], v = us[static_cast<size_t>(q)];
                if (u * u + v * v > 1.0 + 1e-12) continue;
                if (std::abs(u) < ex && std::abs(v) < ey) continue;
                side_.push_back(i + n * q);
                side_i_.push_back(i);
                side_q_.push_back(q);
            }
        n_ = n;
    }

    // Complex array factor of a mask (uniform unit weights), n x n.
    Eigen::MatrixXcd pattern(const std::vector<bool>& mask) const {
        Eigen::MatrixXd W = Eigen::MatrixXd::Zero(L_.nx, L_.ny);
        for (Eigen::Index p = 0; p < L_.total(); ++p)
            if (mask[static_cast<size_t>(p)]) W(p % L_.nx, p / L_.nx) = 1.0;
        return Ex_.transpose() * W.cast<cplx>() * Ey_;
    }

    // PSL in dB relative to the boresight peak (= element count).
    double psl_db(const Eigen::MatrixXcd& B, double count) const {
        double worst = 0.0;
        const cplx* d = B.data();
        for (Eigen::Index idx : side_) worst = std::max(worst, std::norm(d[idx]));
        return 10.0 * std::log10(std::max(worst, 1e-300) / (count * count));
    }

    double psl_db(const std::vector<bool>& mask) const {
        const double count = static_cast<double>(std::count(mask.begin(), mask.end(), true));
        return psl_db(pattern(mask), count);
    }

    // Pattern change from toggling element p: +/- Ex(m, :)^T Ey(n, :).
    void add_element(Eigen::MatrixXcd& B, Eigen::Index p, double sign) const {
        const Eigen::Index mx = p % L_.nx, my = p / L_.nx;
        for (Eigen::Index q = 0; q < n_; ++q) {
            const cplx ey = sign * Ey_(my, q);
            cplx* col = B.col(q).data();
            for (Eigen::Index i = 0; i < n_; ++i) col[i] += Ex_(mx, i) * ey;
        }
    }

    // PSL after swapping element `off_elem` out and `on_elem` in, without touching B.
    double psl_db_swap(const Eigen::MatrixXcd& B, Eigen::Index off_elem, Eigen::Index on_elem, double count) const {
        const Eigen::Index ax = off_elem % L_.nx, ay = off_elem / L_.nx, bx = on_elem % L_.nx, by = on_elem / L_.nx;
        const cplx* d = B.data();
        double worst = 0.0;
        for (size_t s = 0; s < side_.size(); ++s) {
            const Eigen::Index i = side_i_[s], q = side_q_[s];
            const cplx v = d[side_[s]] - Ex_(ax, i) * Ey_(ay, q) + Ex_(bx, i) * Ey_(by, q);
            worst = std::max(worst, std::norm(v));
        }
        return 10.0 * std::log10(std::max(worst, 1e-300) / (count * count));
    }

private:
    SamplingLattice L_;
    Eigen::MatrixXcd Ex_, Ey_;
    std::vector<Eigen::Index> side_, side_i_, side_q_;
    Eigen::Index n_ = 0;
};

inline double peak_sidelobe_db(const SamplingLattice& L, double f, Eigen::Index grid_points = 129) {
    L.validate();
    std::vector<bool> mask(static_cast<size_t>(L.total()));
    for (Eigen::Index p = 0; p < L.total(); ++p) mask[static_cast<size_t>(p)] = L.is_active(p);
    return PslEvaluator(L, f, grid_points).psl_db(mask);
}

struct AnnealSchedule {
    int proposals = 20000;
    int stage_length = 100;    // proposals per temperature step
    double cooling = 0.95;     // geometric factor per stage
    std::optional<double> initial_temperature;  // dB; default = PSL spread of 20 random masks
    Eigen::Index grid_points = 129;
    double psl_target_db = -13.0;
};

struct SparseLatticeResult {
    SamplingLattice lattice;
    double psl_db = 0.0;
    double initial_psl_db = 0.0;
    double initial_temperature = 0.0;
    bool met_target = false;
    int accepted = 0;
};

// Thins the active elements of `full` to round(keep_fraction * count) by simulated annealing on
// the boresight peak sidelobe level at frequency f. Proposals swap one active and one inactive
// element; uphill moves are accepted with probability exp(-dPSL / T).
inline SparseLatticeResult optimize_sparse_lattice(const SamplingLattice& full, double keep_fraction, double f,
                                                   const AnnealSchedule& sched, std::uint64_t seed) {
    full.validate();
    if (!(keep_fraction > 0.0) || keep_fraction > 1.0) throw std::invalid_argument("keep fraction must lie in (0, 1]");
    if (sched.proposals < 0 || sched.stage_length < 1 || !(sched.cooling > 0.0) || sched.cooling > 1.0)
        throw std::invalid_argument("bad annealing schedule");
    const PslEvaluator eval(full, f, sched.grid_points);
    const auto candidates = full.active_indices();
    const auto n_cand = static_cast<Eigen::Index>(candidates.size());
    const auto keep = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(keep_fraction * static_cast<double>(n_cand))));
    Rng rng(seed);

    auto random_mask = [&]() {
        std::vector<Eigen::Index> order = candidates;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<bool> m(static_cast<size_t>(full.total()), false);
        for (Eigen::Index i = 0; i < keep; ++i) m[static_cast<size_t>(order[static_cast<size_t>(i)])] = true;
        return m;
    };

    SparseLatticeResult res;
    std::vector<bool> mask = random_mask();
    res.initial_psl_db = eval.psl_db(mask);
    if (sched.initial_temperature) {
        res.initial_temperature = *sched.initial_temperature;
    } else {
        double lo = res.initial_psl_db, hi = res.initial_psl_db;
        for (int i = 1; i < 20; ++i) {
            const double p = eval.psl_db(random_mask());
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        res.initial_temperature = hi > lo ? hi - lo : 1.0;
    }

    const double count = static_cast<double>(keep);
    Eigen::MatrixXcd B = eval.pattern(mask);
    double cur = eval.psl_db(B, count);
    std::vector<bool> best_mask = mask;
    double best = cur;
    std::vector<Eigen::Index> on, off;
    for (Eigen::Index p : candidates) (mask[static_cast<size_t>(p)] ? on : off).push_back(p);

    double T = res.initial_temperature;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (!off.empty() && !on.empty()) {
        for (int it = 0; it < sched.proposals; ++it) {
            if (it > 0 && it % sched.stage_length == 0) T *= sched.cooling;
            std::uniform_int_distribution<size_t> pick_on(0, on.size() - 1), pick_off(0, off.size() - 1);
            const size_t a = pick_on(rng), b = pick_off(rng);
            const double next = eval.psl_db_swap(B, on[a], off[b], count);
            const double delta = next - cur;
            if (delta <= 0.0 || unit(rng) < std::exp(-delta / T)) {
                eval.add_element(B, on[a], -1.0);
                eval.add_element(B, off[b], 1.0);
                mask[static_cast<size_t>(on[a])] = false;
                mask[static_cast<size_t>(off[b])] = true;
                std::swap(on[a], off[b]);
                cur = next;
                ++res.accepted;
                if (cur < best) {
                    best = cur;
                    best_mask = mask;
                }
                if (res.accepted % 2000 == 0) B = eval.pattern(mask);  // bound round-off drift
            }
        }
    }
    res.lattice = full;
    res.lattice.active = best_mask;
    res.psl_db = eval.psl_db(best_mask);
    res.met_target = res.psl_db <= sched.psl_target_db;
    return res;
}

// Keeps every `factor`-th column of the lattice (periodic thinning along x).
inline SamplingLattice decimate_columns(const SamplingLattice& full, Eigen::Index factor) {
    if (factor < 1) throw std::invalid_argument("decimation factor must be positive");
    SamplingLattice L = full;
    L.active.assign(static_cast<size_t>(full.total()), false);
    for (Eigen::Index p = 0; p < full.total(); ++p)
        L.active[static_cast<size_t>(p)] = full.is_active(p) && (p % full.nx) % factor == 0;
    return L;
}

}  // namespace aperture_forge
