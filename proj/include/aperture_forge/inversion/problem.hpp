#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>

#include "../core/constants.hpp"
#include "../core/fft.hpp"
#include "../core/random.hpp"

namespace aperture_forge {

// Linear sampling operator z = A x behind phaseless data y = |z|^2. Either an explicit m x n matrix
// whose row i is a_i^H, or L coded masks: block l of z is the unitary DFT of D_l x.
class PhaselessOperator {
public:
    static PhaselessOperator explicit_vectors(Eigen::MatrixXcd A) {
        if (A.size() == 0) throw std::invalid_argument("sampling matrix is empty");
        PhaselessOperator op;
        op.A_ = std::move(A);
        return op;
    }

    // masks: n x L, column l is the diagonal of D_l.
    static PhaselessOperator coded(Eigen::MatrixXcd masks) {
        if (masks.size() == 0) throw std::invalid_argument("need at least one mask of positive length");
        PhaselessOperator op;
        op.masks_ = std::move(masks);
        op.coded_ = true;
        return op;
    }

    bool is_coded() const { return coded_; }
    Eigen::Index n() const { return coded_ ? masks_.rows() : A_.cols(); }
    Eigen::Index m() const { return coded_ ? masks_.rows() * masks_.cols() : A_.rows(); }
    Eigen::Index masks() const { return coded_ ? masks_.cols() : 0; }
    const Eigen::MatrixXcd& matrix() const { return A_; }
    const Eigen::MatrixXcd& mask_matrix() const { return masks_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const {
        if (x.size() != n()) throw std::invalid_argument("signal length does not match the operator");
        if (!coded_) return A_ * x;
        const Eigen::Index N = n();
        const double s = 1.0 / std::sqrt(static_cast<double>(N));
        Eigen::VectorXcd z(m());
        for (Eigen::Index l = 0; l < masks_.cols(); ++l) z.segment(l * N, N) = s * fft::forward(Eigen::VectorXcd(masks_.col(l).cwiseProduct(x)));
        return z;
    }

    Eigen::VectorXcd adjoint(const Eigen::VectorXcd& z) const {
        if (z.size() != m()) throw std::invalid_argument("measurement length does not match the operator");
        if (!coded_) return A_.adjoint() * z;
        const Eigen::Index N = n();
        const double s = std::sqrt(static_cast<double>(N));
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
        for (Eigen::Index l = 0; l < masks_.cols(); ++l)
            x += masks_.col(l).conjugate().cwiseProduct(s * fft::inverse(Eigen::VectorXcd(z.segment(l * N, N))));
        return x;
    }

    // sum_i |a_i|^2
    double frobenius2() const { return coded_ ? masks_.squaredNorm() : A_.squaredNorm(); }

    // |A|_2^2. Coded: A^H A = diag(sum_l |d_l|^2) exactly; explicit: power iteration, inflated 1%.
    double norm2() const {
        if (coded_) return masks_.cwiseAbs2().rowwise().sum().maxCoeff();
        Rng rng(0x9e3779b9);
        Eigen::VectorXcd v = complex_gaussian_vector(rng, n());
        v.normalize();
        double lam = 0.0;
        for (int i = 0; i < 300; ++i) {
            const Eigen::VectorXcd w = A_.adjoint() * (A_ * v);
            const double nw = w.norm();
            if (nw == 0.0) return 0.0;
            const double next = v.dot(w).real();
            v = w / nw;
            if (i > 0 && std::abs(next - lam) <= 1e-12 * next) {
                lam = next;
                break;
            }
            lam = next;
        }
        return 1.01 * lam;
    }

    // Least-squares inverse argmin_x |A x - z|. Exact for coded masks; QR solve otherwise.
    Eigen::VectorXcd pseudo_inverse(const Eigen::VectorXcd& z) const {
        if (coded_) {
            const Eigen::VectorXd w = masks_.cwiseAbs2().rowwise().sum();
            if (w.minCoeff() <= 0.0) throw std::domain_error("masks leave a coordinate unobserved");
            return adjoint(z).cwiseQuotient(w.cast<cplx>());
        }
        if (z.size() != m()) throw std::invalid_argument("measurement length does not match the operator");
        if (!qr_) qr_ = std::make_shared<Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>>(A_);
        return qr_->solve(z);
    }

private:
    Eigen::MatrixXcd A_;
    Eigen::MatrixXcd masks_;
    bool coded_ = false;
    mutable std::shared_ptr<Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>> qr_;
};

// a_i ~ CN(0, I): row i of the returned operator is a_i^H.
inline PhaselessOperator gaussian_sampling(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("sampling dimensions must be positive");
    Rng rng(seed);
    return PhaselessOperator::explicit_vectors(complex_gaussian_matrix(rng, m, n));
}

// Unimodular masks with phases uniform on the circle.
inline PhaselessOperator random_coded_masks(Eigen::Index n, Eigen::Index L, std::uint64_t seed) {
    if (n < 1 || L < 1) throw std::invalid_argument("mask dimensions must be positive");
    Rng rng(seed);
    Eigen::MatrixXcd D(n, L);
    for (Eigen::Index l = 0; l < L; ++l)
        for (Eigen::Index i = 0; i < n; ++i) D(i, l) = random_phasor(rng);
    return PhaselessOperator::coded(std::move(D));
}

// y_i = |<a_i, x>|^2 + eta_i with eta_i ~ N(0, sigma^2), clipped at zero so y stays nonnegative.
inline Eigen::VectorXd pr_forward(const Eigen::VectorXcd& x, const PhaselessOperator& op, double noise_sigma = 0.0, std::uint64_t seed = 0) {
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
    Eigen::VectorXd y = op.apply(x).cwiseAbs2();
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        std::normal_distribution<double> g(0.0, noise_sigma);
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = std::max(0.0, y(i) + g(rng));
    }
    return y;
}

// min over alpha of |xh - e^{j alpha} x| / |x|
inline double pr_distance(const Eigen::VectorXcd& xh, const Eigen::VectorXcd& x) {
    if (xh.size() != x.size()) throw std::invalid_argument("vectors differ in length");
    const double nx = x.norm();
    if (nx == 0.0) throw std::invalid_argument("reference signal is zero");
    const cplx c = x.dot(xh);  // x^H xh
    const cplx phase = std::abs(c) > 0.0 ? c / std::abs(c) : cplx{1.0, 0.0};
    return (xh - phase * x).norm() / nx;
}

// |<xh, x>| / (|xh| |x|)
inline double pr_correlation(const Eigen::VectorXcd& xh, const Eigen::VectorXcd& x) {
    const double d = xh.norm() * x.norm();
    return d > 0.0 ? std::abs(xh.dot(x)) / d : 0.0;
}

}  // namespace aperture_forge
