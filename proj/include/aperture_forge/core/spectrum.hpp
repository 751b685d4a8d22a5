#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "grid.hpp"

namespace aperture_forge {

// S(k, f) = sum_x sum_t s(x, t) exp(-j 2 pi (f t - k x)) on a space (axis0) x time (axis1) grid.
// Output axes are centred: axis0 is k in cycles per unit of axis0, axis1 is f.
inline ComplexGrid wavenumber_spectrum(const ComplexGrid& s) {
    s.validate();
    if (s.rows() < 1 || s.cols() < 1) throw std::invalid_argument("empty field");
    const Eigen::Index nx = s.rows(), nt = s.cols();
    Eigen::MatrixXcd m = s.data;
    fft::forward_rows(m);  // time: exp(-j 2 pi f t)
    fft::inverse_cols(m);  // space: exp(+j 2 pi k x), rescaled to unnormalised below
    m *= static_cast<double>(nx);
    const Eigen::VectorXd k = fft::frequencies(nx, s.axis0.step);
    const Eigen::VectorXd f = fft::frequencies(nt, s.axis1.step);
    for (Eigen::Index c = 0; c < nt; ++c)
        for (Eigen::Index r = 0; r < nx; ++r)
            m(r, c) *= std::polar(1.0, two_pi * (k(r) * s.axis0.start - f(c) * s.axis1.start));
    ComplexGrid out;
    out.data = fft::fftshift(m);
    const double dk = 1.0 / (static_cast<double>(nx) * s.axis0.step);
    const double df = 1.0 / (static_cast<double>(nt) * s.axis1.step);
    out.axis0 = {-static_cast<double>(nx / 2) * dk, dk, "1/" + s.axis0.unit};
    out.axis1 = {-static_cast<double>(nt / 2) * df, df, "1/" + s.axis1.unit};
    return out;
}

inline Axis uniform_axis(const std::vector<double>& x, const std::string& unit) {
    if (x.size() < 2) throw std::invalid_argument("lattice needs at least two samples");
    const double step = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    if (!(step > 0.0)) throw std::invalid_argument("lattice must be increasing");
    for (size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i] - (x.front() + static_cast<double>(i) * step)) > 1e-9 * std::abs(step) * x.size())
            throw std::invalid_argument("non-uniform lattice");
    return {x.front(), step, unit};
}

inline ComplexGrid wavenumber_spectrum(const std::vector<double>& x, const std::vector<double>& t,
                                       const Eigen::MatrixXcd& s) {
    if (static_cast<Eigen::Index>(x.size()) != s.rows() || static_cast<Eigen::Index>(t.size()) != s.cols())
        throw std::invalid_argument("coordinate vectors do not match the field");
    ComplexGrid g;
    g.data = s;
    g.axis0 = uniform_axis(x, "m");
    g.axis1 = uniform_axis(t, "s");
    return wavenumber_spectrum(g);
}

}  // namespace aperture_forge
