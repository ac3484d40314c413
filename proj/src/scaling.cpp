#include "longwalk/scaling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "longwalk/chain.hpp"
#include "longwalk/error.hpp"
#include "longwalk/ring.hpp"
#include "longwalk/transfer.hpp"

namespace longwalk {

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::Uniform: return "uniform";
        case Regime::Constant: return "constant";
        case Regime::Logarithmic: return "log";
        case Regime::PowerLaw: return "power-law";
        case Regime::NearestNeighbour: return "nearest-neighbour";
    }
    return "unknown";
}

const char* ring_observable_name(RingObservable observable) {
    switch (observable) {
        case RingObservable::Q2: return "q2";
        case RingObservable::Delta0: return "delta0";
        case RingObservable::Bandwidth: return "W";
        case RingObservable::Time: return "T";
    }
    return "unknown";
}

LRExponent lr_exponent(int dimension, double alpha) {
    require(alpha >= 0.0 && std::isfinite(alpha), ErrorKind::InvalidArgument, "lr_exponent: alpha must be >= 0");
    require(dimension >= 1, ErrorKind::InvalidArgument, "lr_exponent: d must be positive");
    const double d = dimension;
    LRExponent e;
    if (alpha < d / 2.0) {
        e.regime = Regime::Uniform;
        e.exponent = alpha - d / 2.0;
        e.bound_exponent = d / 2.0 - alpha;
    } else if (alpha < d) {
        e.regime = Regime::Constant;
        e.exponent = 0.0;
        e.bound_exponent = 0.0;
    } else if (alpha == d) {
        e.regime = Regime::Logarithmic;
        e.exponent = 0.0;
        e.bound_exponent = 0.0;
        e.logarithmic = true;
    } else if (alpha < d + 1.0) {
        e.regime = Regime::PowerLaw;
        e.exponent = alpha - d;
        e.bound_exponent = d - alpha;
    } else {
        e.regime = Regime::NearestNeighbour;
        e.exponent = 1.0;
        e.bound_exponent = -1.0;
    }
    return e;
}

double ring_time_exponent(int dimension, double alpha) {
    if (dimension == 2) return alpha - 1.0;
    require(dimension == 1, ErrorKind::InvalidArgument, "ring_time_exponent: d must be 1 or 2");
    if (alpha < 1.0) return alpha - 0.5;
    if (alpha < 1.5) return 0.5;
    if (alpha < 2.0) return alpha - 1.0;
    return 1.0;
}

namespace {

struct PointResult {
    std::optional<ScalingPoint> point;
    std::string warning;
};

std::vector<int> even_grid(int l_min, int l_max, int step) {
    require(step > 0 && step % 2 == 0, ErrorKind::InvalidArgument, "sweep: l step must be a positive even number");
    require(l_min >= 2 && l_min % 2 == 0 && l_max >= l_min, ErrorKind::InvalidArgument,
            "sweep: need an even l_min >= 2 and l_max >= l_min");
    std::vector<int> out;
    for (int l = l_min; l <= l_max; l += step) out.push_back(l);
    return out;
}

template <class F>
ScalingSeries collect(const std::vector<int>& grid, F&& evaluate) {
    const auto results = parallel_map(grid.size(), [&](std::size_t i) {
        PointResult r;
        try {
            r.point = evaluate(grid[i]);
        } catch (const PrecisionGuardError& e) {
            std::ostringstream os;
            os << "l = " << grid[i] << " skipped: " << e.what();
            r.warning = os.str();
        }
        return r;
    });
    ScalingSeries s;
    for (const auto& r : results) {
        if (r.point) s.points.push_back(*r.point);
        if (!r.warning.empty()) s.warnings.push_back(r.warning);
    }
    return s;
}

AxisMode chain_axis(int dimension, double alpha) { return alpha <= dimension ? AxisMode::SemilogX : AxisMode::LogLog; }

}  // namespace

ScalingSeries q_scaling_sweep(int dimension, double alpha, int l_min, int l_max, int step) {
    auto s = collect(even_grid(l_min, l_max, step), [&](int l) {
        const auto chain = build_effective_chain(dimension, alpha, l);
        return ScalingPoint{chain.distance(), q_factor(chain_spectrum(chain)).q};
    });
    s.observable = "Q";
    s.axis = chain_axis(dimension, alpha);
    if (s.points.size() >= 2) s.fit = fit_series(s);
    return s;
}

ScalingSeries chain_time_sweep(int dimension, double alpha, int l_min, int l_max, double epsilon_target, int step) {
    auto s = collect(even_grid(l_min, l_max, step), [&](int l) {
        const auto r = transfer_time_report(dimension, alpha, l, epsilon_target);
        return ScalingPoint{r.distance, r.time};
    });
    s.observable = "T";
    s.axis = chain_axis(dimension, alpha);
    if (s.points.size() >= 2) s.fit = fit_series(s);
    return s;
}

ScalingSeries ring_sweep(int dimension, double alpha, std::span<const long> sides, RingObservable observable,
                         double epsilon_target) {
    for (std::size_t i = 0; i + 1 < sides.size(); ++i)
        require(sides[i] < sides[i + 1], ErrorKind::InvalidArgument, "ring_sweep: sizes must increase");
    const auto values = parallel_map(sides.size(), [&](std::size_t i) {
        const auto model = ring_spectrum(dimension, sides[i], alpha);
        const auto summary = ring_spectral_summary(model);
        switch (observable) {
            case RingObservable::Q2: return summary.q2;
            case RingObservable::Delta0: return summary.delta0;
            case RingObservable::Bandwidth: return summary.bandwidth;
            case RingObservable::Time: return ring_transfer_time(model, ring_choose_g(model, epsilon_target));
        }
        return 0.0;
    });
    ScalingSeries s;
    s.observable = ring_observable_name(observable);
    s.axis = AxisMode::LogLog;
    for (std::size_t i = 0; i < sides.size(); ++i) s.points.push_back({static_cast<double>(sides[i]), values[i]});
    if (s.points.size() >= 2) s.fit = fit_series(s);
    return s;
}

SaturationReport saturation_report(int dimension, double alpha, const std::string& protocol,
                                   const ScalingSeries& series) {
    require(series.points.size() >= 2, ErrorKind::InvalidArgument, "saturation_report: need a completed sweep");
    SaturationReport r;
    r.dimension = dimension;
    r.alpha = alpha;
    r.protocol = protocol;
    r.optimal = lr_exponent(dimension, alpha);
    std::ostringstream verdict;

    if (protocol == "ring") {
        r.expected = ring_time_exponent(dimension, alpha);
        r.tolerance = tolerance::kRingTime;
        if (series.extrapolated) {
            r.measure = "extrapolated local exponent";
            r.measured = *series.extrapolated;
        } else {
            ScalingSeries s = series;
            s.axis = AxisMode::LogLog;
            r.measure = "log-log slope";
            r.measured = fit_series(s).slope;
        }
        r.pass = std::abs(r.measured - r.expected) <= r.tolerance;
        verdict << "ring T ~ L^" << r.measured << " (table " << r.expected << "); optimal "
                << (r.optimal.logarithmic ? std::string("log L") : "L^" + std::to_string(r.optimal.exponent)) << ": ";
        if (std::abs(r.expected - r.optimal.exponent) <= r.tolerance && !r.optimal.logarithmic)
            verdict << "saturates";
        else if (r.expected < 1.0)
            verdict << "suboptimal but sub-linear, faster than nearest-neighbour hopping";
        else
            verdict << "no faster than nearest-neighbour hopping";
        r.verdict = verdict.str();
        return r;
    }

    require(protocol == "chain" || protocol == "uniform", ErrorKind::InvalidArgument,
            "saturation_report: protocol must be chain, uniform or ring");
    r.expected = r.optimal.exponent;
    switch (r.optimal.regime) {
        case Regime::Constant: {
            const std::size_t n = series.points.size();
            const std::size_t back = n > 4 ? n - 5 : 0;
            const double last = series.points.back().value;
            r.measure = "relative change over the last sweep points";
            r.measured = std::abs(last - series.points[back].value) / std::abs(last);
            r.expected = 0.0;
            r.tolerance = tolerance::kConvergence;
            r.pass = r.measured <= r.tolerance;
            verdict << (r.pass ? "converges to a constant: saturates" : "has not converged");
            break;
        }
        case Regime::Logarithmic: {
            ScalingSeries s = series;
            s.axis = AxisMode::SemilogX;
            r.measure = "R^2 of value vs log L";
            r.measured = fit_series(s).r_squared;
            r.expected = 1.0;
            r.tolerance = 1.0 - tolerance::kLogR2;
            r.pass = r.measured >= tolerance::kLogR2;
            verdict << (r.pass ? "grows as log L: saturates" : "not logarithmic");
            break;
        }
        case Regime::Uniform:
        case Regime::PowerLaw:
        case Regime::NearestNeighbour: {
            ScalingSeries s = series;
            s.axis = AxisMode::LogLog;
            r.measure = "log-log slope";
            r.measured = fit_series(s).slope;
            r.tolerance = r.optimal.regime == Regime::Uniform ? tolerance::kUniformSlope : tolerance::kChainSlope;
            r.pass = std::abs(r.measured - r.expected) <= r.tolerance;
            verdict << "T ~ L^" << r.measured << " vs optimal L^" << r.expected << ": "
                    << (r.pass ? "saturates" : "does not saturate");
            if (r.optimal.regime == Regime::NearestNeighbour) verdict << " (nearest-neighbour regime)";
            break;
        }
    }
    r.verdict = verdict.str();
    return r;
}

unsigned worker_count() {
    if (const char* env = std::getenv("LONGWALK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace longwalk
