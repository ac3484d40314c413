#include "longwalk/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "longwalk/error.hpp"

namespace longwalk::numkit {

namespace {

struct LinearSolve {
    double slope;
    double intercept;
    double sse;
};

// Ordinary least squares on centred data; a constant regressor gives slope 0.
LinearSolve solve_linear(std::span<const double> u, std::span<const double> y) {
    const auto n = static_cast<double>(u.size());
    double mu = 0.0, my = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        my += y[i];
    }
    mu /= n;
    my /= n;
    double suu = 0.0, suy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu += (u[i] - mu) * (u[i] - mu);
        suy += (u[i] - mu) * (y[i] - my);
    }
    const double slope = suu > 0.0 ? suy / suu : 0.0;
    const double intercept = my - slope * mu;
    double sse = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = y[i] - slope * u[i] - intercept;
        sse += r * r;
    }
    return {slope, intercept, sse};
}

}  // namespace

FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), ErrorKind::InvalidArgument, "linear_fit: length mismatch");
    require(x.size() >= 2, ErrorKind::InvalidArgument, "linear_fit: need at least two points");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    require(*hi > *lo, ErrorKind::InvalidArgument, "linear_fit: degenerate x (all equal)");

    const auto s = solve_linear(x, y);
    double my = 0.0;
    for (double v : y) my += v;
    my /= static_cast<double>(y.size());
    double sst = 0.0;
    for (double v : y) sst += (v - my) * (v - my);

    FitResult out;
    out.slope = s.slope;
    out.intercept = s.intercept;
    out.residual_sse = s.sse;
    out.r_squared = sst > 0.0 ? std::clamp(1.0 - s.sse / sst, 0.0, 1.0) : 1.0;
    return out;
}

PowerLawOffsetFit powerlaw_offset_fit(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), ErrorKind::InvalidArgument, "powerlaw_offset_fit: length mismatch");
    require(x.size() >= 4, ErrorKind::InvalidArgument, "powerlaw_offset_fit: need at least four points");
    for (double v : x)
        require(v > 0.0 && std::isfinite(v), ErrorKind::InvalidArgument,
                "powerlaw_offset_fit: x must be positive and finite");
    for (double v : y)
        require(std::isfinite(v), ErrorKind::InvalidArgument, "powerlaw_offset_fit: non-finite y");
    require(std::set<double>(x.begin(), x.end()).size() == x.size(), ErrorKind::InvalidArgument,
            "powerlaw_offset_fit: x values must be distinct");

    std::vector<double> u(x.size());
    auto profile = [&](double b) {
        for (std::size_t i = 0; i < x.size(); ++i) u[i] = std::pow(x[i], b);
        return solve_linear(u, y);
    };

    // Coarse log-spaced scan brackets the global minimum of the profile.
    constexpr int kScan = 400;
    const double log_lo = std::log(kFitExponentMin);
    const double log_hi = std::log(kFitExponentMax);
    std::vector<double> grid(kScan);
    int best = 0;
    double best_sse = 0.0;
    for (int i = 0; i < kScan; ++i) {
        grid[static_cast<std::size_t>(i)] = std::exp(log_lo + (log_hi - log_lo) * i / (kScan - 1));
        const double sse = profile(grid[static_cast<std::size_t>(i)]).sse;
        if (i == 0 || sse < best_sse) {
            best = i;
            best_sse = sse;
        }
    }
    double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
    double b = grid[static_cast<std::size_t>(std::min(best + 1, kScan - 1))];

    // Golden-section refinement inside the bracket.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = profile(c).sse;
    double fd = profile(d).sse;
    for (int iter = 0; iter < 200 && (b - a) > 1e-12 * std::max(1.0, b); ++iter) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = profile(c).sse;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = profile(d).sse;
        }
    }
    double exponent = 0.5 * (a + b);
    auto s = profile(exponent);
    // The scan point can beat the refined one when the profile is flat.
    const auto s_grid = profile(grid[static_cast<std::size_t>(best)]);
    if (s_grid.sse < s.sse) {
        exponent = grid[static_cast<std::size_t>(best)];
        s = s_grid;
    }

    PowerLawOffsetFit out;
    out.amplitude = s.slope;
    out.exponent = exponent;
    out.offset = s.intercept;
    out.residual_sse = s.sse;
    require(std::isfinite(out.amplitude) && std::isfinite(out.offset), ErrorKind::Numerical,
            "powerlaw_offset_fit: non-finite fit parameters");
    return out;
}

}  // namespace longwalk::numkit
