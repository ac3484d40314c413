#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "longwalk/error.hpp"
#include "longwalk/scaling.hpp"
#include "longwalk/series.hpp"
#include "longwalk/uniform.hpp"

using namespace longwalk;

namespace {
ScalingSeries synthetic(const std::vector<double>& sizes, double (*f)(double)) {
    ScalingSeries s;
    for (double x : sizes) s.points.push_back({x, f(x)});
    return s;
}

std::vector<double> doubling(double lo, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(2.0, i));
    return v;
}
}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("lr_exponent regimes") {
    auto e = lr_exponent(1, 0.25);
    CHECK(e.regime == Regime::Uniform);
    CHECK(e.exponent == doctest::Approx(-0.25));
    CHECK(std::string(regime_name(e.regime)) == "uniform");
    e = lr_exponent(2, 2.0);
    CHECK(e.logarithmic);
    CHECK(std::string(regime_name(e.regime)) == "log");
    CHECK(lr_exponent(1, 1.7).exponent == doctest::Approx(0.7));
    CHECK(lr_exponent(1, 2.5).regime == Regime::NearestNeighbour);
    CHECK(lr_exponent(1, 0.7).regime == Regime::Constant);

    for (int d : {1, 2, 3}) {
        CHECK(std::abs(lr_exponent(d, d / 2.0 - 1e-12).exponent) < 1e-9);
        CHECK(lr_exponent(d, d / 2.0).exponent == 0.0);
        CHECK(lr_exponent(d, d - 1e-12).exponent == 0.0);
        CHECK(std::abs(lr_exponent(d, d + 1e-12).exponent) < 1e-9);
    }
    CHECK_THROWS_AS(lr_exponent(1, -0.1), Error);
}

TEST_CASE("ring time exponent table") {
    CHECK(ring_time_exponent(1, 0.8) == doctest::Approx(0.3));
    CHECK(ring_time_exponent(1, 1.0) == 0.5);
    CHECK(ring_time_exponent(1, 1.7) == doctest::Approx(0.7));
    CHECK(ring_time_exponent(1, 2.2) == 1.0);
    CHECK(ring_time_exponent(2, 1.5) == doctest::Approx(0.5));
}

TEST_CASE("series fits and local exponents") {
    const auto sizes = doubling(16, 10);
    auto s = synthetic(sizes, [](double x) { return std::pow(x, 1.5); });
    CHECK(fit_series(s).slope == doctest::Approx(1.5).epsilon(1e-12));
    s = local_exponents(s, 3);
    for (const auto& e : s.local) CHECK(std::abs(e.slope - 1.5) < 1e-10);
    CHECK(std::abs(extrapolate_exponent(s) - 1.5) < 1e-6);

    auto off = local_exponents(synthetic(sizes, [](double x) { return x + 100.0; }), 3);
    for (std::size_t i = 0; i + 1 < off.local.size(); ++i) CHECK(off.local[i].slope < off.local[i + 1].slope);
    CHECK(off.local.back().slope < 1.0);

    auto lead = local_exponents(synthetic(doubling(64, 12), [](double x) { return std::pow(x, 0.6) * (1 + 5 / x); }), 5);
    CHECK(std::abs(extrapolate_exponent(lead) - 0.6) < 0.01);

    auto scaled = lead;
    for (auto& p : scaled.points) p.value *= 37.0;
    scaled = local_exponents(scaled, 5);
    CHECK(std::abs(extrapolate_exponent(scaled) - extrapolate_exponent(lead)) < 1e-10);

    CHECK_THROWS_AS(local_exponents(synthetic(sizes, [](double x) { return x; }), 2), Error);
}

TEST_CASE("chain Q sweep") {
    const auto s = q_scaling_sweep(1, 1.2, 4, 60);
    CHECK(s.axis == AxisMode::LogLog);
    CHECK(std::abs(s.fit.slope - 0.2) < 0.03);
    CHECK(saturation_report(1, 1.2, "chain", s).pass);

    const auto guarded = q_scaling_sweep(3, 1.5, 50, 60);
    CHECK(guarded.points.empty());
    CHECK_FALSE(guarded.warnings.empty());
}

TEST_CASE("ring q2 exponent approaches 2 alpha - 1") {
    std::vector<long> sides;
    for (int p = 8; p <= 17; ++p) sides.push_back(1L << p);
    auto s = local_exponents(ring_sweep(1, 0.8, sides, RingObservable::Q2), 5);
    CHECK(std::abs(extrapolate_exponent(s) - 0.6) < 0.1);
}

TEST_CASE("ring d = 2 extrapolation") {
    const std::vector<long> sides{32, 38, 46, 54, 64, 76, 90, 108, 128, 152, 182, 216, 256};
    auto s = local_exponents(ring_sweep(2, 1.5, sides, RingObservable::Q2), 5);
    CHECK(std::abs(extrapolate_exponent(s) - 1.0) < 0.1);
}

TEST_CASE("saturation report verdicts") {
    const std::vector<double> sides{4e6, 8e6, 1.6e7, 3.2e7};
    CHECK(saturation_report(1, 0.25, "uniform", uniform_time_scaling(1, 0.25, sides)).pass);

    std::vector<long> ring_sides;
    for (int p = 8; p <= 14; ++p) ring_sides.push_back(1L << p);
    const auto r = saturation_report(1, 1.0, "ring", ring_sweep(1, 1.0, ring_sides, RingObservable::Time));
    CHECK(r.expected == 0.5);
    CHECK(r.optimal.logarithmic);
    CHECK(r.verdict.find("sub-linear") != std::string::npos);

    CHECK_THROWS_AS(saturation_report(1, 1.0, "bogus", uniform_time_scaling(1, 0.25, sides)), Error);
}

TEST_CASE("parallel_map is ordered and propagates errors") {
    const auto v = parallel_map(100, [](std::size_t i) { return static_cast<double>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<double>(i * i));
    CHECK_THROWS_AS(parallel_map(10, [](std::size_t i) -> int {
                        if (i == 7) throw std::runtime_error("boom");
                        return 0;
                    }),
                    std::runtime_error);
}

TEST_CASE("sweeps are deterministic across thread counts") {
    const auto a = q_scaling_sweep(1, 1.5, 4, 30);
    setenv("LONGWALK_THREADS", "1", 1);
    const auto b = q_scaling_sweep(1, 1.5, 4, 30);
    unsetenv("LONGWALK_THREADS");
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].value == b.points[i].value);
}

}
