#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <complex>
#include <vector>

#include "constants.hpp"

// Forward transforms are unscaled; inverse transforms carry 1/N.
namespace aperture_forge::fft {

using cvec = std::vector<cplx>;

inline Eigen::FFT<double>& engine() {
    thread_local Eigen::FFT<double> e;
    return e;
}

inline cvec forward(const cvec& x) {
    cvec y;
    if (x.empty()) return y;
    engine().fwd(y, x);
    return y;
}

inline cvec inverse(const cvec& x) {
    cvec y;
    if (x.empty()) return y;
    engine().inv(y, x);
    return y;
}

inline Eigen::VectorXcd forward(const Eigen::VectorXcd& x) {
    cvec in(x.data(), x.data() + x.size());
    cvec out = forward(in);
    return Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

inline Eigen::VectorXcd inverse(const Eigen::VectorXcd& x) {
    cvec in(x.data(), x.data() + x.size());
    cvec out = inverse(in);
    return Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

// Transform every column in place.
inline void forward_cols(Eigen::MatrixXcd& m) {
    cvec in(static_cast<size_t>(m.rows())), out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) in[static_cast<size_t>(r)] = m(r, c);
        engine().fwd(out, in);
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = out[static_cast<size_t>(r)];
    }
}

inline void inverse_cols(Eigen::MatrixXcd& m) {
    cvec in(static_cast<size_t>(m.rows())), out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) in[static_cast<size_t>(r)] = m(r, c);
        engine().inv(out, in);
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = out[static_cast<size_t>(r)];
    }
}

inline void forward_rows(Eigen::MatrixXcd& m) {
    cvec in(static_cast<size_t>(m.cols())), out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) in[static_cast<size_t>(c)] = m(r, c);
        engine().fwd(out, in);
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = out[static_cast<size_t>(c)];
    }
}

inline void inverse_rows(Eigen::MatrixXcd& m) {
    cvec in(static_cast<size_t>(m.cols())), out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) in[static_cast<size_t>(c)] = m(r, c);
        engine().inv(out, in);
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = out[static_cast<size_t>(c)];
    }
}

inline Eigen::MatrixXcd forward2(Eigen::MatrixXcd m) {
    forward_cols(m);
    forward_rows(m);
    return m;
}

inline Eigen::MatrixXcd inverse2(Eigen::MatrixXcd m) {
    inverse_cols(m);
    inverse_rows(m);
    return m;
}

// Signed DFT bin frequencies for n samples at spacing d.
inline Eigen::VectorXd frequencies(Eigen::Index n, double d) {
    Eigen::VectorXd f(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index s = (k < (n + 1) / 2) ? k : k - n;
        f(k) = static_cast<double>(s) / (static_cast<double>(n) * d);
    }
    return f;
}

template <typename Derived>
Derived shift(const Derived& x, bool inverse_shift) {
    // Works for vectors and matrices; shifts both dimensions of a matrix.
    Derived y(x.rows(), x.cols());
    const Eigen::Index R = x.rows(), C = x.cols();
    const Eigen::Index sr = inverse_shift ? R - R / 2 : R / 2;
    const Eigen::Index sc = (C == 1) ? 0 : (inverse_shift ? C - C / 2 : C / 2);
    for (Eigen::Index c = 0; c < C; ++c)
        for (Eigen::Index r = 0; r < R; ++r) y((r + sr) % R, (c + sc) % C) = x(r, c);
    return y;
}

template <typename Derived>
Derived fftshift(const Derived& x) { return shift(x, false); }

template <typename Derived>
Derived ifftshift(const Derived& x) { return shift(x, true); }

}  // namespace aperture_forge::fft
