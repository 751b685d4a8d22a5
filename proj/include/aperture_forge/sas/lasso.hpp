#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "../core/random.hpp"
#include "model.hpp"

namespace aperture_forge {

enum class LassoSolver { ista, fista };

struct LassoOptions {
    double mu = 1.0;
    LassoSolver solver = LassoSolver::fista;
    int max_iter = 500;
    double tol = 1e-6;             // stop when |s_k+1 - s_k| <= tol |s_k+1|
    std::optional<double> step;    // default 1 / L_hat
    std::optional<double> lipschitz;  // reuse a known L_hat (e.g. across a mu sweep)
    std::optional<Eigen::VectorXcd> warm_start;
};

struct LassoResult {
    Eigen::VectorXcd s;
    std::vector<double> objective;  // entry 0 is the starting point
    int iterations = 0;
    bool converged = false;
    double lipschitz = 0.0;         // L_hat used for the step
};

// Largest eigenvalue of a Hermitian PSD matrix G (= A^H A) by power iteration from a fixed start;
// the estimate is inflated by 1% so that 1 / L_hat stays a valid step.
inline double lipschitz_estimate_gram(const Eigen::MatrixXcd& G, int iterations = 200) {
    if (G.size() == 0 || G.rows() != G.cols()) throw std::invalid_argument("Gram matrix must be square and non-empty");
    Rng rng(0x5a5);
    Eigen::VectorXcd x = complex_gaussian_vector(rng, G.cols());
    x.normalize();
    double lambda = 0.0;
    for (int i = 0; i < iterations; ++i) {
        const Eigen::VectorXcd y = G * x;
        const double nrm = y.norm();
        if (nrm == 0.0) return 0.0;
        const double next = x.dot(y).real();
        x = y / nrm;
        if (i > 0 && std::abs(next - lambda) <= 1e-10 * next) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return 1.01 * lambda;
}

inline double lipschitz_estimate(const Eigen::MatrixXcd& A) { return lipschitz_estimate_gram(A.adjoint() * A); }

inline Eigen::VectorXcd soft_threshold(const Eigen::VectorXcd& z, double t) {
    Eigen::VectorXcd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double a = std::abs(z(i));
        out(i) = a > t ? z(i) * ((a - t) / a) : cplx{};
    }
    return out;
}

inline double lasso_objective(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& d, const Eigen::VectorXcd& s, double mu) {
    return 0.5 * (A * s - d).squaredNorm() + mu * s.cwiseAbs().sum();
}

// Normal-equation form of the problem: G = A^H A, b = A^H d, |d|^2.
struct LassoSystem {
    Eigen::MatrixXcd G;
    Eigen::VectorXcd b;
    double d2 = 0.0;

    static LassoSystem from(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& d) {
        if (A.rows() != d.size()) throw std::invalid_argument("data length does not match the operator");
        LassoSystem sys;
        sys.G.noalias() = A.adjoint() * A;
        sys.b.noalias() = A.adjoint() * d;
        sys.d2 = d.squaredNorm();
        return sys;
    }
    // 0.5 |A s - d|^2 from the normal equations; gs = G s.
    double half_residual(const Eigen::VectorXcd& s, const Eigen::VectorXcd& gs) const {
        return std::max(0.0, 0.5 * (s.dot(gs).real() - 2.0 * b.dot(s).real() + d2));
    }
};

// min 0.5 |A s - d|^2 + mu |s|_1 by proximal gradient on the normal equations. ISTA is monotone for
// step <= 1/L; FISTA returns the best iterate seen.
inline LassoResult lasso(const LassoSystem& sys, const LassoOptions& o) {
    const Eigen::Index N = sys.G.rows();
    if (!(o.mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (o.max_iter < 1) throw std::invalid_argument("need at least one iteration");
    LassoResult r;
    r.lipschitz = o.lipschitz ? *o.lipschitz : lipschitz_estimate_gram(sys.G);
    if (!(r.lipschitz > 0.0)) throw std::invalid_argument("zero operator");
    const double t = o.step.value_or(1.0 / r.lipschitz);
    if (!(t > 0.0) || t > 1.0 / r.lipschitz * (1.0 + 1e-12)) throw std::invalid_argument("step must lie in (0, 1/L]");

    Eigen::VectorXcd s = o.warm_start ? *o.warm_start : Eigen::VectorXcd::Zero(N);
    if (s.size() != N) throw std::invalid_argument("warm start has the wrong length");
    Eigen::VectorXcd gs = sys.G * s;
    double obj = sys.half_residual(s, gs) + o.mu * s.cwiseAbs().sum();
    r.objective.push_back(obj);
    Eigen::VectorXcd best = s;
    double best_obj = obj;

    Eigen::VectorXcd y = s, gy = gs, s_prev = s, gs_prev = gs;
    double theta = 1.0;
    for (int k = 0; k < o.max_iter; ++k) {
        Eigen::VectorXcd next;
        if (o.solver == LassoSolver::ista) {
            next = soft_threshold(s - t * (gs - sys.b), o.mu * t);
        } else {
            next = soft_threshold(y - t * (gy - sys.b), o.mu * t);
        }
        s_prev = s;
        gs_prev = gs;
        s = std::move(next);
        gs.noalias() = sys.G * s;
        if (o.solver == LassoSolver::fista) {
            const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
            const double beta = (theta - 1.0) / theta_next;
            y = s + beta * (s - s_prev);
            gy = gs + beta * (gs - gs_prev);
            theta = theta_next;
        }
        obj = sys.half_residual(s, gs) + o.mu * s.cwiseAbs().sum();
        r.objective.push_back(obj);
        r.iterations = k + 1;
        if (obj < best_obj) {
            best_obj = obj;
            best = s;
        }
        if ((s - s_prev).norm() <= o.tol * std::max(s.norm(), 1e-300)) {
            r.converged = true;
            break;
        }
    }
    r.s = o.solver == LassoSolver::ista ? s : best;
    return r;
}

inline LassoResult lasso(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& d, const LassoOptions& o) {
    return lasso(LassoSystem::from(A, d), o);
}

inline LassoResult sas_sparse(const SasData& data, const SensingModel& m, const LassoOptions& o) {
    check_dimensions(data, m);
    return lasso(m.A, data.d, o);
}

// Smallest mu for which s = 0 is optimal: |A^H d|_inf.
inline double lasso_mu_max(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& d) { return (A.adjoint() * d).cwiseAbs().maxCoeff(); }

// Noise-level choice: for unimodular columns and noise CN(0, sigma^2), P(max_j |a_j^H n| > mu) <= alpha
// when mu = sigma sqrt(R ln(N / alpha)), so a pure-noise input returns s = 0 with probability >= 1 - alpha.
inline double lasso_mu_noise(double sigma, Eigen::Index rows, Eigen::Index cols, double alpha = 0.01) {
    if (!(sigma > 0.0) || rows < 1 || cols < 1 || !(alpha > 0.0) || alpha >= 1.0) throw std::invalid_argument("bad noise-level mu inputs");
    return sigma * std::sqrt(static_cast<double>(rows) * std::log(static_cast<double>(cols) / alpha));
}

struct MuSearch {
    double mu = 0.0;
    LassoResult result;
    std::vector<double> mus;
    std::vector<double> residuals;  // |A s - d|^2 per tried mu
    bool satisfied = false;         // false: no mu on the grid met the discrepancy bound
};

// Logarithmic grid mu_k = mu_max * ratio^(k / (points - 1)) searched from large to small with warm
// starts. Returns the largest mu whose residual energy falls to `target` (the discrepancy
// principle uses target = rows * sigma^2).
inline MuSearch select_mu_discrepancy(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& d, double target, LassoOptions o,
                                      int points = 16, double ratio = 1e-3) {
    if (points < 2 || !(ratio > 0.0) || ratio >= 1.0) throw std::invalid_argument("bad mu grid");
    if (!(target > 0.0)) throw std::invalid_argument("residual target must be positive");
    const auto sys = LassoSystem::from(A, d);
    const double mmax = sys.b.cwiseAbs().maxCoeff();
    if (!(mmax > 0.0)) throw std::invalid_argument("zero data");
    MuSearch out;
    if (!o.lipschitz) o.lipschitz = lipschitz_estimate_gram(sys.G);
    for (int k = 0; k < points; ++k) {
        o.mu = mmax * std::pow(ratio, static_cast<double>(k) / static_cast<double>(points - 1));
        auto res = lasso(sys, o);
        const double r2 = (A * res.s - d).squaredNorm();
        out.mus.push_back(o.mu);
        out.residuals.push_back(r2);
        o.warm_start = res.s;
        out.mu = o.mu;
        out.result = std::move(res);
        if (r2 <= target) {
            out.satisfied = true;
            break;
        }
    }
    return out;
}

}  // namespace aperture_forge
