#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "../core/random.hpp"
#include "problem.hpp"

namespace aperture_forge {

struct SpectralInit {
    Eigen::VectorXcd x;
    bool zero_measurements = false;  // y == 0: x is the zero vector
};

// Leading eigenvector of (1/m) sum_i y_i a_i a_i^H by power iteration, scaled so that
// |x|^2 = n sum(y) / sum_i |a_i|^2 (the energy of x for an isotropic sampling frame).
inline SpectralInit spectral_init(const Eigen::VectorXd& y, const PhaselessOperator& op, int iterations = 100, std::uint64_t seed = 0) {
    if (y.size() != op.m()) throw std::invalid_argument("measurement length does not match the operator");
    if ((y.array() < 0.0).any() || !y.allFinite()) throw std::invalid_argument("measurements must be finite and nonnegative");
    if (iterations < 1) throw std::invalid_argument("need at least one power iteration");
    SpectralInit out;
    const double total = y.sum();
    if (total == 0.0) {
        out.x = Eigen::VectorXcd::Zero(op.n());
        out.zero_measurements = true;
        return out;
    }
    const Eigen::VectorXcd w = y.cast<cplx>() / static_cast<double>(op.m());
    Rng rng(seed);
    Eigen::VectorXcd v = complex_gaussian_vector(rng, op.n());
    v.normalize();
    for (int k = 0; k < iterations; ++k) {
        v = op.adjoint(w.cwiseProduct(op.apply(v)));
        const double nv = v.norm();
        if (nv == 0.0) break;
        v /= nv;
    }
    out.x = v * std::sqrt(static_cast<double>(op.n()) * total / op.frobenius2());
    return out;
}

// f(x) = (1/m) sum_i (sqrt(y_i) - |<a_i, x>|)^2
inline double amplitude_objective(const Eigen::VectorXcd& x, const Eigen::VectorXd& y, const PhaselessOperator& op) {
    const Eigen::VectorXd r = op.apply(x).cwiseAbs() - y.cwiseSqrt();
    return r.squaredNorm() / static_cast<double>(op.m());
}

// Real gradient of f packed as a complex vector, g = 2 df/d(conj x), so that the directional
// derivative along v is Re(g^H v). The subgradient at <a_i, x> = 0 is taken as zero.
inline Eigen::VectorXcd amplitude_gradient(const Eigen::VectorXcd& x, const Eigen::VectorXd& y, const PhaselessOperator& op) {
    const Eigen::VectorXcd z = op.apply(x);
    Eigen::VectorXcd r(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double a = std::abs(z(i));
        r(i) = a > 0.0 ? (a - std::sqrt(y(i))) * (z(i) / a) : cplx{};
    }
    return (2.0 / static_cast<double>(op.m())) * op.adjoint(r);
}

struct AmplitudeFlowOptions {
    int steps = 1000;
    double lr = 0.1;            // step = lr / |A|^2 on the unnormalised sum; see amplitude_flow
    bool backtracking = false;  // Armijo search starting from 10x the fixed step
    double tol = 0.0;           // stop once |x_k+1 - x_k| <= tol |x_k+1|
    bool keep_iterates = false;
};

struct AmplitudeFlowResult {
    Eigen::VectorXcd x;
    std::vector<double> objective;  // entry 0 is the initial point
    std::vector<Eigen::VectorXcd> iterates;
    int iterations = 0;
    bool aborted = false;  // non-finite or runaway objective; x is the last finite iterate
};

// Gradient descent on the amplitude objective. The fixed step moves by lr / |A|_2^2 along
// A^H[(|z| - sqrt(y)) z / |z|], i.e. lr m / (2 |A|_2^2) along the gradient of f.
inline AmplitudeFlowResult amplitude_flow(const Eigen::VectorXd& y, const PhaselessOperator& op, const Eigen::VectorXcd& init,
                                          const AmplitudeFlowOptions& o = {}) {
    if (y.size() != op.m()) throw std::invalid_argument("measurement length does not match the operator");
    if (init.size() != op.n()) throw std::invalid_argument("initial point has the wrong length");
    if (o.steps < 0 || !(o.lr > 0.0)) throw std::invalid_argument("need nonnegative steps and a positive learning rate");
    const double base = o.lr * static_cast<double>(op.m()) / (2.0 * op.norm2());
    AmplitudeFlowResult r;
    r.x = init;
    double f = amplitude_objective(r.x, y, op);
    if (!std::isfinite(f)) throw std::invalid_argument("objective is not finite at the initial point");
    r.objective.push_back(f);
    if (o.keep_iterates) r.iterates.push_back(r.x);
    const double runaway = 1e6 * std::max(f, 1e-300);
    for (int k = 0; k < o.steps; ++k) {
        const Eigen::VectorXcd g = amplitude_gradient(r.x, y, op);
        Eigen::VectorXcd next;
        double fn = 0.0;
        if (o.backtracking) {
            double t = 10.0 * base;
            const double g2 = g.squaredNorm();
            for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
                next = r.x - t * g;
                fn = amplitude_objective(next, y, op);
                if (fn <= f - 1e-4 * t * g2) break;
            }
        } else {
            next = r.x - base * g;
            fn = amplitude_objective(next, y, op);
        }
        if (!std::isfinite(fn) || !next.allFinite() || fn > runaway) {
            r.aborted = true;
            break;
        }
        const double dx = (next - r.x).norm();
        r.x = std::move(next);
        f = fn;
        r.objective.push_back(f);
        if (o.keep_iterates) r.iterates.push_back(r.x);
        r.iterations = k + 1;
        if (dx <= o.tol * r.x.norm()) break;
    }
    return r;
}

struct ErrorReductionOptions {
    int iterations = 200;
    std::optional<Eigen::Array<bool, Eigen::Dynamic, 1>> support;  // x_j forced to zero where false
};

struct ErrorReductionResult {
    Eigen::VectorXcd x;
    std::vector<double> residual;  // |sqrt(y) - |A x||, entry 0 is the initial point
};

// Alternating projections: replace |A x| by sqrt(y) keeping the phase, then project back onto the
// range of A over the support by least squares. The residual cannot increase.
inline ErrorReductionResult error_reduction(const Eigen::VectorXd& y, const PhaselessOperator& op, const Eigen::VectorXcd& init,
                                            const ErrorReductionOptions& o = {}) {
    if (y.size() != op.m()) throw std::invalid_argument("measurement length does not match the operator");
    if (init.size() != op.n()) throw std::invalid_argument("initial point has the wrong length");
    if (o.iterations < 0) throw std::invalid_argument("iteration count must be nonnegative");
    if (o.support && o.support->size() != op.n()) throw std::invalid_argument("support mask has the wrong length");
    const Eigen::VectorXd amp = y.cwiseSqrt();

    // Explicit operators with a support need a least-squares solve over the retained columns.
    std::vector<Eigen::Index> cols;
    std::optional<Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>> sub_qr;
    if (o.support) {
        for (Eigen::Index j = 0; j < op.n(); ++j)
            if ((*o.support)(j)) cols.push_back(j);
        if (cols.empty()) throw std::invalid_argument("support is empty");
        if (!op.is_coded()) {
            Eigen::MatrixXcd As(op.m(), static_cast<Eigen::Index>(cols.size()));
            for (size_t c = 0; c < cols.size(); ++c) As.col(static_cast<Eigen::Index>(c)) = op.matrix().col(cols[c]);
            sub_qr.emplace(As);
        }
    }
    auto project = [&](const Eigen::VectorXcd& z) -> Eigen::VectorXcd {
        if (!o.support) return op.pseudo_inverse(z);
        if (op.is_coded()) {
            // A^H A is diagonal, so restricting the least-squares solution is a plain mask.
            Eigen::VectorXcd x = op.pseudo_inverse(z);
            for (Eigen::Index j = 0; j < x.size(); ++j)
                if (!(*o.support)(j)) x(j) = 0.0;
            return x;
        }
        const Eigen::VectorXcd xs = sub_qr->solve(z);
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(op.n());
        for (size_t c = 0; c < cols.size(); ++c) x(cols[c]) = xs(static_cast<Eigen::Index>(c));
        return x;
    };

    ErrorReductionResult r;
    r.x = init;
    Eigen::VectorXcd z = op.apply(r.x);
    r.residual.push_back((amp - z.cwiseAbs()).norm());
    for (int k = 0; k < o.iterations; ++k) {
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            const double a = std::abs(z(i));
            z(i) = a > 0.0 ? amp(i) * (z(i) / a) : cplx{amp(i), 0.0};
        }
        r.x = project(z);
        z = op.apply(r.x);
        r.residual.push_back((amp - z.cwiseAbs()).norm());
    }
    return r;
}

}  // namespace aperture_forge
