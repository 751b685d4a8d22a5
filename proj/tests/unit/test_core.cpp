// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <aperture_forge/core.hpp>

using namespace aperture_forge;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("sine space to spherical", "[core][direction]") {
    const Direction d(SineSpace{0.4, 0.3});
    CHECK_THAT(rad2deg(d.spherical().theta), WithinAbs(30.0, 1e-9));
    CHECK_THAT(rad2deg(d.spherical().phi), WithinAbs(36.869897645844, 1e-9));
}

TEST_CASE("zenith elevation maps to v = 1", "[core][direction]") {
    const Direction d(AzEl{0.0, deg2rad(90.0)});
    CHECK_THAT(d.sine_space().u, WithinAbs(0.0, 1e-12));
    CHECK_THAT(d.sine_space().v, WithinAbs(1.0, 1e-12));
}

TEST_CASE("invisible direction cosines are rejected", "[core][direction]") {
    CHECK_THROWS_AS(Direction(SineSpace{0.9, 0.5}), std::domain_error);
    CHECK_NOTHROW(Direction(SineSpace{1.0, 0.0}));
}

TEST_CASE("direction round trips and identities", "[core][direction][property]") {
    Rng rng(11);
    std::uniform_real_distribution<double> th(0.0, deg2rad(89.0)), ph(-pi, pi);
    for (int i = 0; i < 500; ++i) {
        const Spherical s{th(rng), ph(rng)};
        const Direction d(s);
        const auto uv = d.sine_space();
        const auto ae = d.az_el();
        CHECK_THAT(uv.u * uv.u + uv.v * uv.v, WithinAbs(std::pow(std::sin(s.theta), 2), 1e-12));
        CHECK_THAT(std::cos(s.theta), WithinAbs(std::cos(ae.el) * std::cos(ae.az), 1e-12));
        CHECK_THAT(std::tan(ae.az), WithinRel(uv.u / std::sqrt(1 - uv.u * uv.u - uv.v * uv.v), 1e-9));

        const Direction back(uv);
        CHECK_THAT(back.spherical().theta, WithinAbs(s.theta, 1e-12));
        if (s.theta > 1e-6) CHECK_THAT(std::remainder(back.spherical().phi - s.phi, two_pi), WithinAbs(0.0, 1e-9));

        const auto uv2 = Direction(ae).sine_space();
        CHECK_THAT(uv2.u, WithinAbs(uv.u, 1e-12));
        CHECK_THAT(uv2.v, WithinAbs(uv.v, 1e-12));
    }
}

TEST_CASE("convert_direction dispatches on target type", "[core][direction]") {
    const Direction d(Spherical{deg2rad(30.0), 0.0});
    CHECK_THAT(convert_direction<SineSpace>(d).u, WithinAbs(0.5, 1e-12));
    CHECK_THAT(rad2deg(convert_direction<AzEl>(d).az), WithinAbs(30.0, 1e-9));
}

TEST_CASE("plane wave phase conventions", "[core][wave]") {
    WaveParams w{10e9, 0.3, Direction(Spherical{0.0, 0.0})};
    const double lam = w.wavelength();
    CHECK_THAT(std::arg(plane_wave_field(w, {0, 0, 0}, 0.0)), WithinAbs(0.3, 1e-12));
    // one wavelength along propagation and one period in time leave the field unchanged
    const cplx a = plane_wave_field(w, {0.01, -0.02, 0.0}, 1e-9);
    const cplx b = plane_wave_field(w, {0.01, -0.02, lam}, 1e-9);
    const cplx c = plane_wave_field(w, {0.01, -0.02, 0.0}, 1e-9 + 1.0 / w.frequency);
    CHECK(std::abs(a - b) < 1e-9);
    CHECK(std::abs(a - c) < 1e-9);
    CHECK_THAT(std::abs(a), WithinAbs(1.0, 1e-15));
    // quarter wavelength along propagation retards the phase by pi/2
    const cplx q = plane_wave_field(w, {0, 0, lam / 4}, 0.0);
    CHECK_THAT(std::remainder(std::arg(q) - 0.3 + pi / 2, two_pi), WithinAbs(0.0, 1e-9));
}

TEST_CASE("spherical wave approaches the plane wave far away", "[core][wave]") {
    WaveParams w{1e9, 0.0, Direction(Spherical{pi, 0.0})};  // travelling toward -z
    const double lam = w.wavelength();
    const Eigen::Vector3d src(0, 0, 1e6 * lam);
    const Eigen::Vector3d x0(0, 0, 0), x1(3 * lam, -2 * lam, 0.5 * lam);
    const double dsph = std::arg(spherical_wave_field(w, src, x1, 0) / spherical_wave_field(w, src, x0, 0));
    const double dpl = std::arg(plane_wave_field(w, x1, 0) / plane_wave_field(w, x0, 0));
    CHECK_THAT(std::remainder(dsph - dpl, two_pi), WithinAbs(0.0, 1e-4));
    CHECK_THROWS_AS(spherical_wave_field(w, src, src, 0.0), std::domain_error);
}

TEST_CASE("Fraunhofer distances", "[core][wave]") {
    CHECK_THAT(far_field_distance(0.102, 40e9), WithinAbs(2.77, 0.01));
    CHECK_THAT(far_field_distance(15.0, 1.4e9), WithinAbs(2101.0, 1.0));
    CHECK_THROWS_AS(far_field_distance(-1.0, 1e9), std::invalid_argument);
}

TEST_CASE("FFT helpers", "[core][fft]") {
    Rng rng(3);
    const Eigen::VectorXcd x = complex_gaussian_vector(rng, 37);
    CHECK((fft::inverse(fft::forward(x)) - x).norm() < 1e-12);
    // forward is unscaled: bin 0 is the plain sum
    CHECK(std::abs(fft::forward(x)(0) - x.sum()) < 1e-12);
    Eigen::VectorXd v(5);
    v << 0, 1, 2, 3, 4;
    const Eigen::VectorXd s = fft::fftshift(v);
    CHECK(s(0) == 3);
    CHECK(s(2) == 0);
    CHECK(fft::ifftshift(s) == v);
    const Eigen::VectorXd f = fft::frequencies(4, 0.5);
    CHECK(f(1) == 0.5);
    CHECK(f(2) == -1.0);
}

TEST_CASE("argmax ties go to the lowest linear index", "[core][measure]") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(2, 0) = 5;
    m(1, 2) = 5;
    const auto a = argmax_abs(m);
    CHECK(a.row == 1);
    CHECK(a.col == 2);
}

TEST_CASE("grid rejects bad axes", "[core][grid]") {
    CHECK_THROWS_AS(ComplexGrid(2, 2, {0, 0.0, "m"}, {0, 1.0, "s"}), std::invalid_argument);
    ComplexGrid g(2, 2, {0, 1.0, "m"}, {0, 1.0, "s"});
    CHECK(g.all_finite());
    g.data(0, 1) = cplx(std::nan(""), 0);
    CHECK_FALSE(g.all_finite());
}

namespace {
cplx brute_spectrum(const ComplexGrid& s, double k, double f) {
    cplx acc = 0;
    for (Eigen::Index r = 0; r < s.rows(); ++r)
        for (Eigen::Index c = 0; c < s.cols(); ++c)
            acc += s.data(r, c) * std::polar(1.0, -two_pi * (f * s.axis1[c] - k * s.axis0[r]));
    return acc;
}
}  // namespace

TEST_CASE("wavenumber spectrum of a plane wave", "[core][spectrum]") {
    const Eigen::Index nx = 32, nt = 48;
    const double dx = 0.01, dt = 1e-3;
    const double k0 = 5.0 / (nx * dx), f0 = -7.0 / (nt * dt);
    ComplexGrid s(nx, nt, {0.2, dx, "m"}, {0.1, dt, "s"});
    for (Eigen::Index r = 0; r < nx; ++r)
        for (Eigen::Index c = 0; c < nt; ++c)
            s.data(r, c) = std::polar(1.0, two_pi * (-k0 * s.axis0[r] + f0 * s.axis1[c]));
    const auto S = wavenumber_spectrum(s);
    const auto pk = argmax_abs(S.data);
    CHECK_THAT(S.axis0[pk.row], WithinAbs(k0, 1e-9));
    CHECK_THAT(S.axis1[pk.col], WithinAbs(f0, 1e-9));
    CHECK(std::norm(S.data(pk.row, pk.col)) / S.data.squaredNorm() >= 0.99);
    // Parseval for the unscaled forward transform
    CHECK_THAT(S.data.squaredNorm(), WithinRel(double(nx * nt) * s.data.squaredNorm(), 1e-12));

    Rng rng(5);
    s.data = complex_gaussian_matrix(rng, nx, nt);
    const auto R = wavenumber_spectrum(s);
    for (auto [r, c] : {std::pair{0, 0}, std::pair{7, 30}, std::pair{31, 47}, std::pair{16, 24}}) {
        const cplx ref = brute_spectrum(s, R.axis0[r], R.axis1[c]);
        CHECK(std::abs(R.data(r, c) - ref) < 1e-9 * std::abs(ref) + 1e-9);
    }
}

TEST_CASE("wavenumber spectrum rejects a non-uniform lattice", "[core][spectrum]") {
    const std::vector<double> x{0.0, 0.1, 0.25, 0.3}, t{0.0, 1.0, 2.0};
    CHECK_THROWS_AS(wavenumber_spectrum(x, t, Eigen::MatrixXcd::Ones(4, 3)), std::invalid_argument);
}
