#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/grid.hpp"

namespace aperture_forge {

// Z(m, n): sensor m at (x_m, 0) observing at frequency f_n; a scatterer at (x, y) contributes
// sigma exp(-j 4 pi f_n R_m / c), R_m = |(x - x_m, y)|.
struct CaponProblem {
    Eigen::MatrixXcd Z;
    std::vector<double> positions;
    std::vector<double> frequencies;
    double speed = speed_of_light;
    double loading = 0.0;        // alpha
    int block_divisor = 4;       // subaperture / subband length = size / divisor
    double overlap = 0.75;

    void validate() const {
        if (Z.rows() != static_cast<Eigen::Index>(positions.size()) ||
            Z.cols() != static_cast<Eigen::Index>(frequencies.size()))
            throw std::invalid_argument("data shape does not match positions x frequencies");
        if (loading < 0.0) throw std::invalid_argument("loading must be non-negative");
        if (block_divisor < 1 || overlap < 0.0 || overlap >= 1.0) throw std::invalid_argument("bad partition");
    }
};

struct CaponImage {
    RealGrid capon;         // sigma^2 = 1 / (v^H (R + alpha I)^-1 v)
    RealGrid conventional;  // v^H R v
};

// Capon power for one covariance and unit-norm steering vector.
inline double capon_power(const Eigen::MatrixXcd& R, const Eigen::VectorXcd& v, double alpha) {
    const Eigen::Index l = R.rows();
    if (R.cols() != l || v.size() != l) throw std::invalid_argument("dimension mismatch");
    if (alpha < 0.0) throw std::invalid_argument("loading must be non-negative");
    Eigen::MatrixXcd A = R;
    A.diagonal().array() += alpha;
    if (alpha == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
        const auto ev = es.eigenvalues();
        if (ev.minCoeff() <= 1e-10 * std::max(ev.maxCoeff(), 1e-300))
            throw std::invalid_argument("sample covariance is rank deficient; use diagonal loading (alpha > 0)");
    }
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    const cplx q = v.dot(ldlt.solve(v));
    return 1.0 / q.real();
}

// Overlapped subaperture x subband snapshots of the pixel-focused data.
inline Eigen::MatrixXcd capon_covariance(const Eigen::MatrixXcd& focused, int divisor, double overlap) {
    const Eigen::Index M = focused.rows(), N = focused.cols();
    const Eigen::Index bm = std::max<Eigen::Index>(1, M / divisor), bn = std::max<Eigen::Index>(1, N / divisor);
    const Eigen::Index sm = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(bm * (1.0 - overlap))));
    const Eigen::Index sn = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(bn * (1.0 - overlap))));
    const Eigen::Index l = bm * bn;
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(l, l);
    Eigen::VectorXcd z(l);
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i + bm <= M; i += sm)
        for (Eigen::Index k = 0; k + bn <= N; k += sn) {
            for (Eigen::Index a = 0; a < bm; ++a)
                for (Eigen::Index b = 0; b < bn; ++b) z(a * bn + b) = focused(i + a, k + b);
            R.noalias() += z * z.adjoint();
            ++count;
        }
    return R / static_cast<double>(count);
}

inline CaponImage capon_image(const CaponProblem& P, const Axis& xaxis, Eigen::Index nx, const Axis& yaxis,
                              Eigen::Index ny) {
    P.validate();
    CaponImage out{RealGrid(nx, ny, xaxis, yaxis), RealGrid(nx, ny, xaxis, yaxis)};
    const Eigen::Index M = P.Z.rows(), N = P.Z.cols();
    Eigen::MatrixXcd focused(M, N);
    for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index k = 0; k < ny; ++k) {
            const double x = xaxis[i], y = yaxis[k];
            for (Eigen::Index m = 0; m < M; ++m) {
                const double dx = x - P.positions[static_cast<size_t>(m)];
                const double R = std::sqrt(dx * dx + y * y);
                for (Eigen::Index n = 0; n < N; ++n)
                    focused(m, n) = P.Z(m, n) * std::polar(1.0, 4.0 * pi * P.frequencies[static_cast<size_t>(n)] * R / P.speed);
            }
            const Eigen::MatrixXcd R = capon_covariance(focused, P.block_divisor, P.overlap);
            const Eigen::VectorXcd v = Eigen::VectorXcd::Constant(R.rows(), 1.0 / std::sqrt(double(R.rows())));
            out.capon.data(i, k) = capon_power(R, v, P.loading);
            out.conventional.data(i, k) = v.dot(R * v).real();
        }
    return out;
}

}  // namespace aperture_forge
