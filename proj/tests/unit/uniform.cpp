#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "longwalk/error.hpp"
#include "longwalk/uniform.hpp"

using namespace longwalk;

TEST_SUITE("uniform") {

TEST_CASE("protocol parameters") {
    auto p = build_uniform_protocol(1, 0.0, 4);
    CHECK(p.hop == 1.0);
    CHECK(p.coupling == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p.time == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));

    p = build_uniform_protocol(2, 0.5, 10);
    const double r = 10 * std::sqrt(2.0);
    CHECK(p.sites == 100);
    CHECK(p.hop == doctest::Approx(std::pow(r, -0.5)).epsilon(1e-14));
    CHECK(p.time == doctest::Approx(std::numbers::pi / std::sqrt(2.0) * std::sqrt(r) / std::sqrt(98.0)).epsilon(1e-14));

    CHECK_THROWS_AS(build_uniform_protocol(1, 0.6, 4), Error);
    try {
        build_uniform_protocol(1, 0.6, 4);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("perfect transfer") {
    for (auto [d, alpha, side] : {std::tuple{1, 0.0, 4L}, std::tuple{1, 0.3, 500L}, std::tuple{2, 0.5, 20L},
                                  std::tuple{2, 0.9, 40L}}) {
        const auto p = build_uniform_protocol(d, alpha, side);
        CHECK(simulate_uniform(p) >= 1.0 - 1e-9);
    }
}

TEST_CASE("half-time populations") {
    const auto p = build_uniform_protocol(1, 0.2, 64);
    const auto closed = three_level_populations(p, p.time / 2);
    CHECK(closed.y == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(closed.column == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(closed.x == doctest::Approx(0.25).epsilon(1e-12));
    const auto full = uniform_populations(p, p.time / 2);
    CHECK(std::abs(full.y - 0.25) < 1e-10);
    CHECK(std::abs(full.column - 0.5) < 1e-10);
}

TEST_CASE("reduced three-level model tracks the full model") {
    const auto p = build_uniform_protocol(2, 0.4, 12);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double t = 2.0 * p.time * i / 49.0;
        worst = std::max(worst, std::abs(uniform_fidelity(p, t) - three_level_populations(p, t).y));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("time scaling") {
    const std::vector<double> sides{4e6, 8e6, 1.6e7, 3.2e7, 6.4e7};
    CHECK(uniform_time_scaling(1, 0.25, sides).fit.slope == doctest::Approx(-0.25).epsilon(1e-6));
    const std::vector<double> sides2{4e3, 8e3, 1.6e4, 3.2e4};
    CHECK(uniform_time_scaling(2, 0.9, sides2).fit.slope == doctest::Approx(-0.1).epsilon(1e-5));
    CHECK(std::abs(uniform_time_scaling(1, 0.5 - 1e-9, sides).fit.slope) < 1e-6);
}

TEST_CASE("uniform couplings respect the power-law envelope") {
    CHECK(uniform_envelope_ratio(build_uniform_protocol(2, 0.7, 16)) <= 1.0 + 1e-12);
}

}
