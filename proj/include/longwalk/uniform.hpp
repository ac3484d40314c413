#pragma once

// One-step protocol for alpha < d/2: X and Y both coupled, with one uniform
// strength, to all N-2 other sites of a d-dimensional cube of side L.

#include <span>

#include <Eigen/Dense>

#include "longwalk/numkit.hpp"
#include "longwalk/series.hpp"

namespace longwalk {

inline constexpr long kUniformSiteCap = 20000;

struct UniformProtocol {
    int dimension = 1;
    double alpha = 0.0;
    long side = 2;       // L
    long sites = 2;      // N = L^d
    double hop = 1.0;    // w = (sqrt(d) L)^(-alpha)
    double coupling = 0.0;  // W_eff = w sqrt(N - 2)
    double time = 0.0;      // T = (pi / sqrt2) (sqrt(d) L)^alpha / sqrt(N - 2)
};

struct ThreeLevelPopulations {
    double x = 1.0;
    double column = 0.0;
    double y = 0.0;
};

/// Closed-form transfer time T = (pi / sqrt2) (sqrt(d) L)^alpha / sqrt(N - 2); any N >= 3.
double uniform_transfer_time(int dimension, double alpha, double side);

UniformProtocol build_uniform_protocol(int dimension, double alpha, long side);

/// Matrix-free Hamiltonian over (X, middle sites..., Y).
numkit::LinearOperator uniform_operator(const UniformProtocol& protocol);

/// |<Y|psi(t)>|^2 from the full N-site model (Krylov evolution).
double uniform_fidelity(const UniformProtocol& protocol, double t);
/// Full-model populations on X, on all middle sites together, and on Y.
ThreeLevelPopulations uniform_populations(const UniformProtocol& protocol, double t);
/// Closed-form three-level populations.
ThreeLevelPopulations three_level_populations(const UniformProtocol& protocol, double t);

double simulate_uniform(const UniformProtocol& protocol);

/// Largest w r^alpha over all pairs coupled by the protocol (cube with X at
/// the origin and Y at (L-1, 0, ...)).
double uniform_envelope_ratio(const UniformProtocol& protocol);

ScalingSeries uniform_time_scaling(int dimension, double alpha, std::span<const double> sides);

}  // namespace longwalk
