#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "longwalk/error.hpp"
#include "longwalk/numkit.hpp"

using namespace longwalk;
using namespace longwalk::numkit;

TEST_SUITE("numkit") {

TEST_CASE("tridiagonal eigenvalues, small closed forms") {
    const std::vector<double> z3(3, 0.0), off3{1.0, 1.0};
    auto r = eigh_tridiagonal(z3, off3);
    REQUIRE(r.size() == 3);
    CHECK(r.eigenvalues(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(r.eigenvalues(1)) < 1e-14);
    CHECK(r.eigenvalues(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    const std::vector<double> one{5.0};
    r = eigh_tridiagonal(one, std::vector<double>{});
    CHECK(r.eigenvalues(0) == 5.0);
    CHECK(std::abs(r.eigenvectors(0, 0)) == 1.0);

    const std::vector<double> z5(5, 0.0), off5{1, 2, 2, 1};
    r = eigh_tridiagonal(z5, off5);
    const double want[] = {-3, -1, 0, 1, 3};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(r.eigenvalues(i) - want[i]) < 1e-13);
}

TEST_CASE("tridiagonal vs Eigen on random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {2, 7, 40, 151}) {
        std::vector<double> d(n), e(n - 1);
        for (auto& x : d) x = u(rng);
        for (auto& x : e) x = u(rng);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = d[i];
        for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = e[i];
        const auto ours = eigh_tridiagonal(d, e);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
        CHECK((ours.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXd& v = ours.eigenvectors;
        CHECK((m * v - v * ours.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("dense eigensolver") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    auto r = eigh_dense(m);
    CHECK(r.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(r.eigenvalues(1) == doctest::Approx(1.0));

    const Eigen::MatrixXd diag = Eigen::Vector3d(3, 1, 2).asDiagonal();
    r = eigh_dense(diag);
    CHECK(r.eigenvalues(0) == 1.0);
    CHECK(r.eigenvalues(1) == 2.0);
    CHECK(r.eigenvalues(2) == 3.0);

    Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(5, 5);
    const double off[] = {1, 2, 2, 1};
    for (int i = 0; i < 4; ++i) chain(i, i + 1) = chain(i + 1, i) = off[i];
    const auto dense = eigh_dense(chain);
    const auto tri = eigh_tridiagonal(std::vector<double>(5, 0.0), std::vector<double>(off, off + 4));
    CHECK((dense.eigenvalues - tri.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 0, 0;
    CHECK_THROWS_AS(eigh_dense(asym), Error);
}

TEST_CASE("spectral evolution") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    const auto r = eigh_dense(m);
    const Eigen::VectorXd psi0 = Eigen::Vector2d(1.0, 0.0);
    const auto same = evolve(r, psi0, 0.0);
    CHECK(std::abs(same(0) - 1.0) < 1e-15);
    CHECK(std::abs(same(1)) < 1e-15);

    const auto half = evolve(r, psi0, std::numbers::pi / 2);
    CHECK(std::abs(half(0)) < 1e-15);
    CHECK(std::abs(half(1) - std::complex<double>(0.0, -1.0)) < 1e-15);
}

TEST_CASE("krylov evolution matches the spectral path") {
    const int n = 60;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) m(i, j) = 1.0 / std::pow(std::abs(i - j), 1.3);
    const auto r = eigh_dense(m);
    Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(n);
    psi0(3) = 1.0;
    const LinearOperator apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = m * x; };
    for (double t : {0.0, 0.3, 2.5, 11.0}) {
        const auto a = evolve(r, psi0, t);
        const auto b = evolve_krylov(apply, psi0, t);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("circulant spectrum") {
    const std::vector<double> nn{0, 1, 0, 1};
    auto e = real_dft_circulant(nn);
    const double want_nn[] = {2, 0, -2, 0};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(e[k] - want_nn[k]) < 1e-14);

    const std::vector<double> pl{0, 1, 0.5, 1};
    e = real_dft_circulant(pl);
    const double want_pl[] = {2.5, -0.5, -1.5, -0.5};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(e[k] - want_pl[k]) < 1e-14);

    std::vector<double> row(256);
    row[0] = 0.0;
    for (long r = 1; r < 256; ++r) row[r] = 1.0 / std::pow(static_cast<double>(std::min(r, 256 - r)), 0.8);
    const auto fast = real_dft_circulant(row);
    const auto slow = real_dft_circulant_direct(row);
    double trace = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
        CHECK(std::abs(fast[k] - slow[k]) < 1e-11);
        trace += fast[k];
    }
    CHECK(std::abs(trace) < 1e-10);
}

TEST_CASE("linear fit") {
    const std::vector<double> x{1, 2, 3}, y{4, 7, 10}, zero{0, 0, 0};
    auto f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
    f = linear_fit(x, zero);
    CHECK(f.slope == 0.0);
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
}

TEST_CASE("power law with offset fit") {
    std::vector<double> x, y, flat;
    for (int i = 1; i <= 20; ++i) {
        x.push_back(0.05 * i);
        y.push_back(2.0 * std::sqrt(x.back()) + 1.0);
        flat.push_back(7.0);
    }
    auto f = powerlaw_offset_fit(x, y);
    CHECK(std::abs(f.amplitude - 2.0) < 1e-6);
    CHECK(std::abs(f.exponent - 0.5) < 1e-6);
    CHECK(std::abs(f.offset - 1.0) < 1e-6);
    f = powerlaw_offset_fit(x, flat);
    CHECK(std::abs(f.amplitude) < 1e-9);
    CHECK(std::abs(f.offset - 7.0) < 1e-9);
}

}
