#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "longwalk/chain.hpp"
#include "longwalk/error.hpp"

using namespace longwalk;

namespace {
const std::vector<double> kHand{1, 2, 2, 1};
const std::vector<double> kFlat{1, 1, 1, 1};

double residual(const std::vector<double>& bonds, const ChannelSpectrum& s, int k) {
    const Eigen::MatrixXd h = channel_matrix(bonds);
    const Eigen::VectorXd v = s.amplitudes.row(k).transpose();
    return (h * v - s.energies(k) * v).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_SUITE("chain") {

TEST_CASE("effective chain bonds") {
    auto c = build_effective_chain(1, 1.0, 2);
    CHECK(c.base == 1.0);
    CHECK(c.bonds == kFlat);
    c = build_effective_chain(1, 0.0, 2);
    CHECK(c.base == 2.0);
    CHECK(c.bonds == kHand);
    CHECK(c.distance() == 10.0);
    CHECK(transfer_distance(4) == 46.0);
}

TEST_CASE("effective chain rejects bad input") {
    CHECK_THROWS_AS(build_effective_chain(1, 1.0, 3), Error);
    CHECK_THROWS_AS(build_effective_chain(0, 1.0, 2), Error);
    try {
        build_effective_chain(3, 1.5, 60);
        FAIL("expected the precision guard to fire");
    } catch (const PrecisionGuardError& e) {
        CHECK(e.kind() == ErrorKind::PrecisionGuard);
        CHECK(e.max_admissible_l() == max_admissible_depth(3, 1.5));
        CHECK(e.max_admissible_l() < 60);
        CHECK_NOTHROW(build_effective_chain(3, 1.5, e.max_admissible_l()));
    }
}

TEST_CASE("hand-solved chain [1,2,2,1]") {
    const auto s = channel_spectrum(kHand);
    const double e[] = {3, 1, 0, -1, -3};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(s.energies(k) - e[k]) < 1e-13);
    const double zero[] = {2.0 / 3, 0, -1.0 / 3, 0, 2.0 / 3};
    for (int j = 0; j < 5; ++j) CHECK(std::abs(s.amplitudes(2, j) - zero[j]) < 1e-13);
    CHECK(s.endpoint(0) == doctest::Approx(1.0 / 6).epsilon(1e-13));
    for (int k = 0; k < 5; ++k) {
        CHECK(s.endpoint(k) > 0.0);
        CHECK(residual(kHand, s, k) < 1e-13);
    }

    const auto q = q_factor(s);
    CHECK(q.q * q.q == doctest::Approx(41.0 / 36).epsilon(1e-12));
    CHECK(q.zero_mode_endpoint == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(min_gap(s) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("alpha = d closed forms") {
    const auto s = channel_spectrum(kFlat);
    const auto modes = uniform_chain_analytic(2);
    const double r3 = std::sqrt(3.0);
    const double e[] = {r3, 1, 0, -1, -r3};
    const double ratio[] = {0.5, r3 / 2, 1, r3 / 2, 0.5};
    for (int k = 0; k < 5; ++k) {
        CHECK(std::abs(modes[k].energy - e[k]) < 1e-14);
        CHECK(std::abs(modes[k].endpoint_ratio - ratio[k]) < 1e-14);
        CHECK(std::abs(s.energies(k) - e[k]) < 1e-10);
        CHECK(std::abs(s.endpoint(k) / s.endpoint(2) - ratio[k]) < 1e-10);
    }
    CHECK(std::pow(q_factor(s).q, 2) == doctest::Approx(5.0 / 3).epsilon(1e-12));
    CHECK(min_gap(s) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.endpoint(2) == doctest::Approx(1.0 / r3).epsilon(1e-13));
    for (int l : {4, 10, 30}) {
        const auto m = uniform_chain_analytic(l);
        CHECK(m[l].energy == 0.0);
        CHECK(m[l].endpoint_ratio == 1.0);
    }
}

TEST_CASE("three-site uniform chain") {
    const std::vector<double> b{1, 1};
    CHECK(q_factor(channel_spectrum(b)).q == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("zero mode closed form") {
    auto c = build_effective_chain(1, 0.0, 2);
    const auto z = zero_mode_analytic(c);
    const double want[] = {2.0 / 3, 0, -1.0 / 3, 0, 2.0 / 3};
    for (int j = 0; j < 5; ++j) CHECK(std::abs(z[j] - want[j]) < 1e-14);
    CHECK(1.0 / zero_mode_inverse_endpoint(2.0, 2) == doctest::Approx(2.0 / 3).epsilon(1e-14));

    for (double alpha : {0.3, 0.7, 1.3, 1.8}) {
        for (int l : {2, 8, 20}) {
            c = build_effective_chain(1, alpha, l);
            const auto s = chain_spectrum(c);
            const auto a = zero_mode_analytic(c);
            double worst = 0.0;
            for (int j = 0; j < c.sites(); ++j) worst = std::max(worst, std::abs(a[j] - s.amplitudes(l, j)));
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("spectral invariants across admissible chains") {
    for (int d : {1, 2, 3}) {
        for (double excess : {-0.4, 0.0, 0.3, 0.9}) {
            const double alpha = d + excess;
            const int l = std::min(20, max_admissible_depth(d, alpha));
            const auto c = build_effective_chain(d, alpha, l);
            const auto s = chain_spectrum(c);
            CHECK(std::abs(s.energies.sum()) <= 1e-10 * s.energies.cwiseAbs().maxCoeff());
            CHECK(std::abs(s.energies(l)) <= s.zero_tolerance);
            for (int k = 0; k < s.modes(); ++k) CHECK(residual(c.bonds, s, k) < 1e-10 * s.energies(0));
        }
    }
}

TEST_CASE("gap for a < 1") {
    const std::vector<double> b{1, 0.5, 0.5, 1};
    CHECK(min_gap(channel_spectrum(b)) / 0.25 >= 0.5);
}

TEST_CASE("tunneling matrix layout") {
    const auto m = tunneling_matrix(kHand, 0.1);
    REQUIRE(m.rows() == 7);
    CHECK(m(0, 1) == 0.1);
    CHECK(m(5, 6) == 0.1);
    CHECK(m(2, 3) == 2.0);
    CHECK(m(0, 6) == 0.0);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

}
