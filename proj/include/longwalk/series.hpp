#pragma once

// (L, value) samples with sliding-window log-log slopes and a finite-size
// extrapolation of those slopes.

#include <optional>
#include <string>
#include <vector>

#include "longwalk/numkit.hpp"

namespace longwalk {

enum class AxisMode { LogLog, SemilogX, Linear };

const char* axis_name(AxisMode mode);

struct ScalingPoint {
    double size = 0.0;
    double value = 0.0;
};

struct LocalExponent {
    double midpoint = 0.0;  // geometric mean of the window's sizes
    double slope = 0.0;
};

struct ScalingSeries {
    std::string observable;
    std::vector<ScalingPoint> points;
    AxisMode axis = AxisMode::LogLog;
    std::vector<LocalExponent> local;
    int window = 0;
    std::optional<double> extrapolated;
    numkit::FitResult fit;  // whole-series fit in the chosen axis mode
    std::vector<std::string> warnings;

    std::vector<double> sizes() const;
    std::vector<double> values() const;
};

/// Fit over every point: log y vs log L, y vs log L, or y vs L.
numkit::FitResult fit_series(const ScalingSeries& series);

/// Fills `local` with the log-log slope of every window of consecutive points.
ScalingSeries local_exponents(ScalingSeries series, int window);

/// Offset c of y = a x^b + c fitted to (1 / midpoint, slope).
double extrapolate_exponent(const ScalingSeries& series);

}  // namespace longwalk
