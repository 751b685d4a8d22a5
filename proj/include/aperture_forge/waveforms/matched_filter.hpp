#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "../core/fft.hpp"

namespace aperture_forge {

// values(i) is the correlation at lag first_lag + i.
struct CompressedPulse {
    Eigen::VectorXcd values;
    Eigen::Index first_lag = 0;

    Eigen::Index lag_of(Eigen::Index i) const { return first_lag + i; }
};

// y[l] = sum_n x[n + l] conj(h[n]) for every lag with overlap.
inline CompressedPulse matched_filter(const Eigen::VectorXcd& signal, const Eigen::VectorXcd& reference) {
    if (signal.size() == 0 || reference.size() == 0) throw std::invalid_argument("empty input");
    if (reference.size() > signal.size()) throw std::invalid_argument("reference longer than signal");
    if (!signal.allFinite() || !reference.allFinite()) throw std::invalid_argument("non-finite input");
    const Eigen::Index ns = signal.size(), nr = reference.size();
    const Eigen::Index n = ns + nr - 1;
    fft::cvec a(static_cast<size_t>(n), cplx{}), b(static_cast<size_t>(n), cplx{});
    for (Eigen::Index i = 0; i < ns; ++i) a[static_cast<size_t>(i)] = signal(i);
    for (Eigen::Index i = 0; i < nr; ++i) b[static_cast<size_t>(i)] = reference(i);
    auto A = fft::forward(a);
    auto B = fft::forward(b);
    for (size_t k = 0; k < A.size(); ++k) A[k] *= std::conj(B[k]);
    const auto c = fft::inverse(A);  // c[l mod n] for lags -(nr-1)..ns-1
    CompressedPulse out;
    out.first_lag = -(nr - 1);
    out.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index lag = out.first_lag + i;
        out.values(i) = c[static_cast<size_t>((lag + n) % n)];
    }
    return out;
}

}  // namespace aperture_forge
