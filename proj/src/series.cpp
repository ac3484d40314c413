#include "longwalk/series.hpp"

#include <cmath>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk {

const char* axis_name(AxisMode mode) {
    switch (mode) {
        case AxisMode::LogLog: return "log-log";
        case AxisMode::SemilogX: return "semilog-x";
        case AxisMode::Linear: return "linear";
    }
    return "unknown";
}

std::vector<double> ScalingSeries::sizes() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.size);
    return out;
}

std::vector<double> ScalingSeries::values() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.value);
    return out;
}

numkit::FitResult fit_series(const ScalingSeries& series) {
    std::vector<double> x, y;
    for (const auto& p : series.points) {
        switch (series.axis) {
            case AxisMode::LogLog:
                require(p.size > 0.0 && p.value > 0.0, ErrorKind::Domain, "fit_series: log-log needs positive data");
                x.push_back(std::log(p.size));
                y.push_back(std::log(p.value));
                break;
            case AxisMode::SemilogX:
                require(p.size > 0.0, ErrorKind::Domain, "fit_series: semilog-x needs positive sizes");
                x.push_back(std::log(p.size));
                y.push_back(p.value);
                break;
            case AxisMode::Linear:
                x.push_back(p.size);
                y.push_back(p.value);
                break;
        }
    }
    return numkit::linear_fit(x, y);
}

ScalingSeries local_exponents(ScalingSeries series, int window) {
    const auto n = static_cast<int>(series.points.size());
    require(window >= 3, ErrorKind::InvalidArgument, "local_exponents: window must be >= 3");
    if (window > n) {
        std::ostringstream os;
        os << "local_exponents: window " << window << " exceeds the " << n << " points of the series";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    for (int i = 0; i + 1 < n; ++i)
        require(series.points[static_cast<std::size_t>(i)].size < series.points[static_cast<std::size_t>(i + 1)].size,
                ErrorKind::InvalidArgument, "local_exponents: sizes must be strictly increasing");

    series.window = window;
    series.local.clear();
    std::vector<double> lx(static_cast<std::size_t>(window)), ly(static_cast<std::size_t>(window));
    for (int i = 0; i + window <= n; ++i) {
        double mean_log = 0.0;
        for (int j = 0; j < window; ++j) {
            const auto& p = series.points[static_cast<std::size_t>(i + j)];
            require(p.size > 0.0 && p.value > 0.0, ErrorKind::Domain,
                    "local_exponents: sizes and values must be positive");
            lx[static_cast<std::size_t>(j)] = std::log(p.size);
            ly[static_cast<std::size_t>(j)] = std::log(p.value);
            mean_log += lx[static_cast<std::size_t>(j)];
        }
        const auto f = numkit::linear_fit(lx, ly);
        series.local.push_back({std::exp(mean_log / window), f.slope});
    }
    return series;
}

double extrapolate_exponent(const ScalingSeries& series) {
    require(series.local.size() >= 4, ErrorKind::InvalidArgument,
            "extrapolate_exponent: need at least four local exponents");
    std::vector<double> x, y;
    for (const auto& e : series.local) {
        x.push_back(1.0 / e.midpoint);
        y.push_back(e.slope);
    }
    return numkit::powerlaw_offset_fit(x, y).offset;
}

}  // namespace longwalk
