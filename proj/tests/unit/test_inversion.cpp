// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <aperture_forge/inversion.hpp>

#include <cmath>

using namespace aperture_forge;
using Catch::Approx;

namespace {

Eigen::VectorXcd signal(std::uint64_t seed, Eigen::Index n) {
    Rng rng(seed);
    return complex_gaussian_vector(rng, n);
}

// Smooth real field in [-1, 1]: random spectrum inside a disc of `radius` bins.
Eigen::MatrixXd smooth_field(Rng& rng, Eigen::Index N, double radius) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            if (std::hypot(static_cast<double>(i - N / 2), static_cast<double>(j - N / 2)) <= radius) U(i, j) = complex_gaussian(rng);
    const Eigen::MatrixXd f = fp_object(U).real();
    return f / f.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd fp_test_object(std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::MatrixXd a = smooth_field(rng, 64, 10.0), p = smooth_field(rng, 64, 10.0);
    Eigen::MatrixXcd u(64, 64);
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = std::polar(1.0 + 0.5 * a(i), p(i));
    return u;
}

}  // namespace

TEST_CASE("zero signal gives zero measurements", "[inversion][forward]") {
    CHECK(pr_forward(Eigen::VectorXcd::Zero(16), gaussian_sampling(64, 16, 1)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(pr_forward(Eigen::VectorXcd::Zero(16), random_coded_masks(16, 3, 1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identity mask measures the DFT magnitude", "[inversion][forward]") {
    const Eigen::Index n = 32;
    const auto op = PhaselessOperator::coded(Eigen::MatrixXcd::Ones(n, 1));
    const auto x = signal(2, n);
    const Eigen::VectorXd y = pr_forward(x, op);
    // direct DFT sum as the oracle
    for (Eigen::Index k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (Eigen::Index t = 0; t < n; ++t) acc += x(t) * std::polar(1.0, -two_pi * static_cast<double>(k * t) / static_cast<double>(n));
        CHECK(y(k) == Approx(std::norm(acc) / static_cast<double>(n)).epsilon(1e-10));
    }
}

TEST_CASE("coded measurements obey Parseval per mask", "[inversion][forward]") {
    const Eigen::Index n = 48, L = 5;
    const auto op = random_coded_masks(n, L, 3);
    const auto x = signal(4, n);
    const Eigen::VectorXd y = pr_forward(x, op);
    for (Eigen::Index l = 0; l < L; ++l)
        CHECK(y.segment(l * n, n).sum() == Approx(op.mask_matrix().col(l).cwiseProduct(x).squaredNorm()).epsilon(1e-12));
    CHECK((op.mask_matrix().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("measurements are 2-homogeneous", "[inversion][forward][property]") {
    Rng rng(5);
    const auto gauss = gaussian_sampling(40, 10, 6);
    const auto coded = random_coded_masks(10, 4, 6);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXcd x = complex_gaussian_vector(rng, 10);
        const cplx c = complex_gaussian(rng, 4.0);
        for (const auto* op : {&gauss, &coded}) {
            const Eigen::VectorXd y1 = pr_forward(x, *op), y2 = pr_forward(c * x, *op);
            CHECK((y2 - std::norm(c) * y1).cwiseAbs().maxCoeff() <= 1e-10 * y2.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("operator adjoint and pseudo-inverse", "[inversion][forward][property]") {
    Rng rng(7);
    const auto gauss = gaussian_sampling(60, 12, 8);
    const auto coded = random_coded_masks(12, 3, 8);
    for (const auto* op : {&gauss, &coded}) {
        for (int i = 0; i < 5; ++i) {
            const Eigen::VectorXcd x = complex_gaussian_vector(rng, op->n());
            const Eigen::VectorXcd z = complex_gaussian_vector(rng, op->m());
            CHECK(std::abs(op->apply(x).dot(z) - x.dot(op->adjoint(z))) < 1e-10 * z.norm() * x.norm() * std::sqrt(static_cast<double>(op->m())));
            CHECK((op->pseudo_inverse(op->apply(x)) - x).norm() < 1e-10 * x.norm());
        }
    }
    CHECK(coded.norm2() == Approx(3.0));
    const double exact = Eigen::JacobiSVD<Eigen::MatrixXcd>(gauss.matrix()).singularValues()(0);
    CHECK(gauss.norm2() >= exact * exact);
    CHECK(gauss.norm2() <= 1.011 * exact * exact);
}

TEST_CASE("noisy measurements stay nonnegative and reproducible", "[inversion][forward]") {
    const auto op = gaussian_sampling(200, 20, 9);
    const auto x = signal(10, 20);
    const Eigen::VectorXd a = pr_forward(x, op, 5.0, 11), b = pr_forward(x, op, 5.0, 11);
    CHECK(a == b);
    CHECK(a.minCoeff() >= 0.0);
    CHECK((a - pr_forward(x, op)).cwiseAbs().maxCoeff() > 0.0);
    CHECK_THROWS_AS(pr_forward(x, op, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(pr_forward(Eigen::VectorXcd::Zero(3), op), std::invalid_argument);
}

TEST_CASE("distance metric ignores global phase", "[inversion][metric][property]") {
    Rng rng(12);
    std::uniform_real_distribution<double> ang(0.0, two_pi);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXcd x = complex_gaussian_vector(rng, 16);
        const cplx ph = std::polar(1.0, ang(rng));
        CHECK(pr_distance(ph * x, x) < 1e-14);
        const Eigen::VectorXcd e = complex_gaussian_vector(rng, 16, 0.01);
        CHECK(pr_distance(ph * (x + e), x) == Approx(pr_distance(x + e, x)).epsilon(1e-10));
        // brute-force minimum over a fine phase grid never beats the closed form
        double best = 1e300;
        for (int k = 0; k < 3600; ++k) best = std::min(best, (x + e - std::polar(1.0, two_pi * k / 3600.0) * x).norm() / x.norm());
        CHECK(pr_distance(x + e, x) <= best + 1e-12);
        CHECK(pr_distance(x + e, x) >= best - 1e-3);
    }
}

TEST_CASE("spectral initialisation correlates with the truth at m = 6n", "[inversion][spectral]") {
    const Eigen::Index n = 64;
    double corr = 0.0, scale = 0.0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto x = signal(s, n);
        const auto op = gaussian_sampling(6 * n, n, 1000 + s);
        const auto init = spectral_init(pr_forward(x, op), op);
        corr += pr_correlation(init.x, x);
        scale += init.x.norm() / x.norm();
    }
    CHECK(corr / 20.0 >= 0.5);
    CHECK(scale / 20.0 == Approx(1.0).epsilon(0.2));
}

TEST_CASE("spectral initialisation depends on y only", "[inversion][spectral]") {
    const auto x = signal(21, 32);
    const auto op = gaussian_sampling(192, 32, 22);
    const auto a = spectral_init(pr_forward(x, op), op);
    const auto b = spectral_init(pr_forward(std::polar(1.0, 1.234) * x, op), op);
    CHECK((a.x - b.x).norm() <= 1e-12 * a.x.norm());
    const auto z = spectral_init(Eigen::VectorXd::Zero(192), op);
    CHECK(z.zero_measurements);
    CHECK(z.x.norm() == 0.0);
    CHECK_FALSE(a.zero_measurements);
    CHECK_THROWS_AS(spectral_init(-Eigen::VectorXd::Ones(192), op), std::invalid_argument);
}

TEST_CASE("undersampled spectral initialisation loses the signal", "[inversion][spectral]") {
    // negative control at m = n / 4; random nonnegative weights give the chance-level baseline
    const Eigen::Index n = 64;
    double under = 0.0, chance = 0.0, full = 0.0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto x = signal(s, n);
        const auto op = gaussian_sampling(n / 4, n, 1000 + s);
        under += pr_correlation(spectral_init(pr_forward(x, op), op).x, x);
        Rng rng(500 + s);
        std::exponential_distribution<double> ex(1.0);
        Eigen::VectorXd w(n / 4);
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = ex(rng);
        chance += pr_correlation(spectral_init(w, op).x, x);
        const auto op6 = gaussian_sampling(6 * n, n, 1000 + s);
        full += pr_correlation(spectral_init(pr_forward(x, op6), op6).x, x);
    }
    under /= 20.0;
    chance /= 20.0;
    full /= 20.0;
    CHECK(under < 0.3);
    CHECK(under < 0.5 * full);
    CHECK(under - chance < 0.15);
}

TEST_CASE("amplitude objective vanishes at the truth", "[inversion][amplitude-flow]") {
    const auto x = signal(30, 24);
    const auto op = gaussian_sampling(192, 24, 31);
    const Eigen::VectorXd y = pr_forward(x, op);
    CHECK(amplitude_objective(x, y, op) < 1e-26 * y.sum());
    CHECK(amplitude_objective(std::polar(1.0, 0.7) * x, y, op) < 1e-26 * y.sum());
    CHECK(amplitude_gradient(x, y, op).norm() < 1e-12 * x.norm());
}

TEST_CASE("amplitude gradient matches central differences", "[inversion][amplitude-flow][property]") {
    const Eigen::Index n = 16;
    const auto gauss = gaussian_sampling(128, n, 40);
    const auto coded = random_coded_masks(n, 6, 40);
    Rng rng(41);
    for (const auto* op : {&gauss, &coded}) {
        const Eigen::VectorXd y = pr_forward(complex_gaussian_vector(rng, n), *op);
        for (int i = 0; i < 10; ++i) {
            const Eigen::VectorXcd x = complex_gaussian_vector(rng, n);
            const Eigen::VectorXcd v = complex_gaussian_vector(rng, n).normalized();
            const double h = 1e-6;
            const double fd = (amplitude_objective(x + h * v, y, *op) - amplitude_objective(x - h * v, y, *op)) / (2.0 * h);
            const double an = amplitude_gradient(x, y, *op).dot(v).real();
            CHECK(std::abs(fd - an) <= 1e-5 * std::abs(an));
        }
    }
}

TEST_CASE("amplitude flow recovers Gaussian instances at m = 8n", "[inversion][amplitude-flow]") {
    const Eigen::Index n = 64;
    int recovered = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto x = signal(s, n);
        const auto op = gaussian_sampling(8 * n, n, 1000 + s);
        const Eigen::VectorXd y = pr_forward(x, op);
        AmplitudeFlowOptions o;
        o.steps = 2000;
        const auto r = amplitude_flow(y, op, spectral_init(y, op).x, o);
        CHECK_FALSE(r.aborted);
        CHECK(r.objective.size() == static_cast<size_t>(r.iterations) + 1);
        const double d = pr_distance(r.x, x);
        CHECK(d < 1e-5);
        recovered += d < 1e-5;
    }
    CHECK(recovered == 20);
}

TEST_CASE("amplitude flow aborts on divergence and keeps its history", "[inversion][amplitude-flow]") {
    const auto x = signal(50, 16);
    const auto op = gaussian_sampling(128, 16, 51);
    const Eigen::VectorXd y = pr_forward(x, op);
    AmplitudeFlowOptions o;
    o.lr = 1e4;
    o.steps = 100;
    o.keep_iterates = true;
    const auto r = amplitude_flow(y, op, spectral_init(y, op).x, o);
    CHECK(r.aborted);
    CHECK(r.x.allFinite());
    CHECK(r.iterates.size() == r.objective.size());
    CHECK(r.iterates.back() == r.x);
}

TEST_CASE("backtracking amplitude flow decreases the objective", "[inversion][amplitude-flow]") {
    const auto x = signal(52, 32);
    const auto op = random_coded_masks(32, 6, 53);
    const Eigen::VectorXd y = pr_forward(x, op);
    AmplitudeFlowOptions o;
    o.backtracking = true;
    o.steps = 300;
    const auto r = amplitude_flow(y, op, spectral_init(y, op).x, o);
    for (size_t k = 1; k < r.objective.size(); ++k) CHECK(r.objective[k] <= r.objective[k - 1]);
    CHECK(r.objective.back() < 1e-3 * r.objective.front());
}

TEST_CASE("error reduction keeps the truth fixed", "[inversion][error-reduction]") {
    const auto x = signal(60, 64);
    const auto op = random_coded_masks(64, 4, 61);
    const auto r = error_reduction(pr_forward(x, op), op, x);
    for (double res : r.residual) CHECK(res < 1e-10 * x.norm());
    CHECK((r.x - x).norm() < 1e-10 * x.norm());
}

TEST_CASE("error-reduction residual never increases", "[inversion][error-reduction][property]") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const auto x = signal(70 + s, 64);
        const auto op = random_coded_masks(64, 4, 80 + s);
        const auto r = error_reduction(pr_forward(x, op), op, signal(90 + s, 64));
        REQUIRE(r.residual.size() == 201);
        for (size_t k = 1; k < r.residual.size(); ++k) CHECK(r.residual[k] <= r.residual[k - 1] * (1.0 + 1e-12));
        CHECK(r.residual.back() < r.residual.front());
    }
    // explicit operator with a support constraint
    Eigen::VectorXcd x = signal(99, 32);
    Eigen::Array<bool, Eigen::Dynamic, 1> sup = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(32, true);
    for (Eigen::Index j = 24; j < 32; ++j) {
        sup(j) = false;
        x(j) = 0.0;
    }
    const auto op = gaussian_sampling(128, 32, 100);
    ErrorReductionOptions o;
    o.support = sup;
    const auto r = error_reduction(pr_forward(x, op), op, signal(101, 32), o);
    for (size_t k = 1; k < r.residual.size(); ++k) CHECK(r.residual[k] <= r.residual[k - 1] * (1.0 + 1e-12));
    CHECK(r.x.tail(8).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("error reduction is equivariant to a global phase", "[inversion][error-reduction]") {
    const auto x = signal(110, 32);
    const auto op = random_coded_masks(32, 4, 111);
    const auto init = signal(112, 32);
    const Eigen::VectorXd y = pr_forward(x, op);
    ErrorReductionOptions o;
    o.iterations = 50;
    const auto a = error_reduction(y, op, init, o);
    const auto b = error_reduction(y, op, std::polar(1.0, 2.1) * init, o);
    CHECK((a.x.cwiseAbs() - b.x.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-10 * a.x.cwiseAbs().maxCoeff());
}

TEST_CASE("disc overlap fractions", "[inversion][fp]") {
    CHECK(disc_overlap(0.0, 3.0) == Approx(1.0));
    CHECK(disc_overlap(6.0, 3.0) == 0.0);
    CHECK(disc_overlap(3.0, 3.0) == Approx((2.0 * pi / 3.0 - std::sqrt(3.0) / 2.0) / pi));
    // Monte Carlo oracle
    Rng rng(120);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int in = 0, both = 0;
    for (int i = 0; i < 400000; ++i) {
        const double px = u(rng), py = u(rng);
        if (px * px + py * py > 1.0) continue;
        ++in;
        both += (px - 0.7) * (px - 0.7) + py * py <= 1.0;
    }
    CHECK(disc_overlap(0.7, 1.0) == Approx(static_cast<double>(both) / in).margin(0.005));
}

TEST_CASE("FP images carry the energy of the masked spectrum", "[inversion][fp][property]") {
    FpSystem s;
    s.offsets = fp_led_grid(1, 5);
    const auto u = fp_test_object(1);
    const Eigen::MatrixXcd U = fp_spectrum(u);
    const double g = static_cast<double>(s.lo * s.lo) / std::pow(static_cast<double>(s.hi), 4);
    for (size_t k = 0; k < s.offsets.size(); ++k) {
        const double e_img = fp_acquire(s, u, k).sum();
        CHECK(e_img == Approx(g * fp_masked_spectrum(s, U, k).squaredNorm()).epsilon(1e-9));
    }
}

TEST_CASE("single on-axis LED recovers the low-pass object", "[inversion][fp]") {
    FpSystem s;
    // positive real object band-limited inside the pupil
    Rng rng(130);
    const Eigen::MatrixXd f = smooth_field(rng, 64, 6.0);
    const Eigen::MatrixXcd u = (2.0 + f.array()).cast<cplx>().matrix();
    const auto r = fp_recover(fp_acquire_all(s, u), s, 5);
    Eigen::MatrixXcd lowpass = Eigen::MatrixXcd::Zero(64, 64);
    lowpass.block(16, 16, 32, 32) = fp_masked_spectrum(s, fp_spectrum(u), 0);
    CHECK((r.object - fp_object(lowpass)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((r.object - u).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(r.reliable);
}

TEST_CASE("3 x 3 LED grid recovers the synthetic band", "[inversion][fp]") {
    FpSystem s;
    s.offsets = fp_led_grid(1, 5);
    REQUIRE(fp_min_overlap(s) >= 0.6);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto u = fp_test_object(seed);
        const auto r = fp_recover(fp_acquire_all(s, u), s, 50);
        CHECK(r.reliable);
        CHECK(fp_spectrum_error(r.spectrum, fp_spectrum(u), fp_covered_band(s)) < 0.05);
        CHECK(r.residual.back() < 1e-3 * r.residual.front());
        CHECK(fp_measured_support_radius(r.spectrum) == Approx(s.synthetic_radius()).margin(1.0));
        CHECK(fp_measured_support_radius(r.spectrum) > s.pupil_radius + 5.0);
    }
}

TEST_CASE("disjoint pupils are flagged unreliable", "[inversion][fp]") {
    FpSystem s;
    s.pupil_radius = 4.0;
    s.offsets = fp_led_grid(1, 9);
    CHECK(fp_min_overlap(s) == 0.0);
    const auto r = fp_recover(fp_acquire_all(s, fp_test_object(5)), s, 2);
    CHECK_FALSE(r.reliable);
}

TEST_CASE("FP system validation and optics conversion", "[inversion][fp]") {
    FpSystem s;
    s.pupil_radius = 16.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.pupil_radius = 8.0;
    s.offsets = {{17, 0}};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    // 64 px at 1 um, 0.5 um light, NA 0.0625: 1/(N px) bins put the pupil at 8 bins
    const auto o = fp_system_from_optics(64, 32, 1e-6, 0.5e-6, 0.0625, {{0.0, 0.0}, {std::asin(0.039), 0.0}, {0.0, -std::asin(0.039)}});
    CHECK(o.pupil_radius == Approx(8.0));
    CHECK(o.offsets[1].kx == 5);
    CHECK(o.offsets[2].ky == -5);
    CHECK_THROWS_AS(fp_system_from_optics(64, 32, 1e-6, 0.5e-6, 1.5, {{0.0, 0.0}}), std::invalid_argument);
}
