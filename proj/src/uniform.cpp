#include "longwalk/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk {

double uniform_transfer_time(int dimension, double alpha, double side) {
    const double n = std::pow(side, dimension);
    require(n >= 3.0, ErrorKind::InvalidArgument, "uniform_transfer_time: need N >= 3");
    return (std::numbers::pi / std::sqrt(2.0)) * std::pow(std::sqrt(static_cast<double>(dimension)) * side, alpha) /
           std::sqrt(n - 2.0);
}

UniformProtocol build_uniform_protocol(int dimension, double alpha, long side) {
    require(dimension >= 1 && dimension <= 3, ErrorKind::InvalidArgument,
            "build_uniform_protocol: d must be 1, 2 or 3");
    require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument,
            "build_uniform_protocol: alpha must be finite and >= 0");
    if (alpha >= dimension / 2.0) {
        std::ostringstream os;
        os << "build_uniform_protocol: alpha = " << alpha << " is not below d/2 = " << dimension / 2.0
           << "; use the chain protocol";
        fail(ErrorKind::Domain, os.str());
    }
    require(side >= 2, ErrorKind::InvalidArgument, "build_uniform_protocol: L must be >= 2");
    long n = 1;
    for (int i = 0; i < dimension; ++i) {
        n *= side;
        if (n > kUniformSiteCap) {
            std::ostringstream os;
            os << "build_uniform_protocol: N = L^d exceeds the cap of " << kUniformSiteCap;
            fail(ErrorKind::Domain, os.str());
        }
    }
    require(n >= 3, ErrorKind::InvalidArgument, "build_uniform_protocol: need N >= 3");

    UniformProtocol p;
    p.dimension = dimension;
    p.alpha = alpha;
    p.side = side;
    p.sites = n;
    const double diameter = std::sqrt(static_cast<double>(dimension)) * static_cast<double>(side);
    p.hop = std::pow(diameter, -alpha);
    p.coupling = p.hop * std::sqrt(static_cast<double>(n - 2));
    p.time = uniform_transfer_time(dimension, alpha, static_cast<double>(side));
    return p;
}

numkit::LinearOperator uniform_operator(const UniformProtocol& protocol) {
    const double w = protocol.hop;
    return [w](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        const Eigen::Index n = x.size();
        const double middle = x.segment(1, n - 2).sum();
        y.resize(n);
        y.segment(1, n - 2).setConstant(w * (x[0] + x[n - 1]));
        y[0] = w * middle;
        y[n - 1] = w * middle;
    };
}

namespace {

Eigen::VectorXcd evolve_from_x(const UniformProtocol& protocol, double t) {
    Eigen::VectorXd start = Eigen::VectorXd::Zero(protocol.sites);
    start[0] = 1.0;
    return numkit::evolve_krylov(uniform_operator(protocol), start, t, 8);
}

}  // namespace

double uniform_fidelity(const UniformProtocol& protocol, double t) {
    const auto psi = evolve_from_x(protocol, t);
    return std::norm(psi[psi.size() - 1]);
}

ThreeLevelPopulations uniform_populations(const UniformProtocol& protocol, double t) {
    const auto psi = evolve_from_x(protocol, t);
    const Eigen::Index n = psi.size();
    return {std::norm(psi[0]), psi.segment(1, n - 2).squaredNorm(), std::norm(psi[n - 1])};
}

ThreeLevelPopulations three_level_populations(const UniformProtocol& protocol, double t) {
    const double c = std::cos(std::sqrt(2.0) * protocol.coupling * t);
    const double s = std::sin(std::sqrt(2.0) * protocol.coupling * t);
    const double ax = (1.0 + c) / 2.0;
    const double ay = (c - 1.0) / 2.0;
    return {ax * ax, s * s / 2.0, ay * ay};
}

double simulate_uniform(const UniformProtocol& protocol) { return uniform_fidelity(protocol, protocol.time); }

double uniform_envelope_ratio(const UniformProtocol& protocol) {
    const int d = protocol.dimension;
    const long side = protocol.side;
    double worst = 0.0;
    std::vector<long> c(static_cast<std::size_t>(d), 0);
    for (long idx = 0; idx < protocol.sites; ++idx) {
        long rest = idx;
        for (int ax = 0; ax < d; ++ax) {
            c[static_cast<std::size_t>(ax)] = rest % side;
            rest /= side;
        }
        const bool is_x = idx == 0;
        const bool is_y = idx == side - 1;
        if (is_x || is_y) continue;
        double rx2 = 0.0, ry2 = 0.0;
        for (int ax = 0; ax < d; ++ax) {
            const double v = static_cast<double>(c[static_cast<std::size_t>(ax)]);
            rx2 += v * v;
            const double vy = ax == 0 ? v - static_cast<double>(side - 1) : v;
            ry2 += vy * vy;
        }
        const double r = std::sqrt(std::max(rx2, ry2));
        worst = std::max(worst, protocol.hop * std::pow(r, protocol.alpha));
    }
    return worst;
}

ScalingSeries uniform_time_scaling(int dimension, double alpha, std::span<const double> sides) {
    require(alpha < dimension / 2.0 && alpha >= 0.0, ErrorKind::Domain,
            "uniform_time_scaling: alpha must lie in [0, d/2)");
    ScalingSeries s;
    s.observable = "T";
    s.axis = AxisMode::LogLog;
    for (double side : sides) s.points.push_back({side, uniform_transfer_time(dimension, alpha, side)});
    s.fit = fit_series(s);
    return s;
}

}  // namespace longwalk
