#pragma once

// Resonant tunneling through the channel zero mode (alpha >= d/2).

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "longwalk/chain.hpp"
#include "longwalk/numkit.hpp"

namespace longwalk {

struct TunnelingModel {
    ChannelSpectrum spectrum;
    std::vector<double> bonds;
    double g = 0.0;
    Eigen::VectorXd rabi;  // Omega_k = sqrt(2) g t_k^(0)
    double time = 0.0;     // T = pi / Omega_l
    Eigen::MatrixXd matrix;  // basis (X, site 0..2l, Y)

    int zero_index() const { return spectrum.zero_index(); }
    /// sum_{k != l} Omega_k^2 / E_k^2
    double weak_coupling_sum() const;
};

struct BoundConditions {
    bool gap = false;   // E_{l-2} >= 4 Omega_l
    bool weak = false;  // sum Omega_k^2 / E_k^2 < 3/4
    bool both() const { return gap && weak; }
};

struct RigorousBound {
    double bound = 0.0;
    BoundConditions conditions;
};

struct TransferOutcome {
    double time = 0.0;
    double g = 0.0;
    double fidelity_exact = 0.0;
    double infidelity_exact = 0.0;
    double infidelity_perturbative = 0.0;
    std::optional<double> infidelity_bound;  // absent for the ring protocol
    std::optional<BoundConditions> conditions;
    double mu = 0.0;
};

struct TransferTimeReport {
    double time = 0.0;
    double distance = 0.0;
    double g = 0.0;
    bool gap_branch = false;  // g was limited by E_{l-2} >= 4 Omega_l
};

TunnelingModel attach_endpoints(const EffectiveChain& chain, double g);
TunnelingModel attach_endpoints(const ChannelSpectrum& spectrum, std::span<const double> bonds, double g);

/// D = diag(-1, (-1)^j, -1); returns ||DH + HD||_max.
double anticommutator_residual(const TunnelingModel& model);

/// |<Y| exp(-iHt) |X>|^2 in the site basis.
double transfer_fidelity(const TunnelingModel& model, double t);
/// Same quantity through the channel eigenbasis (X and Y coupled to each
/// mode k with g t_k^(0) and g t_k^(2l)).
double transfer_fidelity_eigenbasis(const TunnelingModel& model, double t);
/// |<X| exp(-iHt) |Y>|^2
double swap_fidelity(const TunnelingModel& model, double t);

TransferOutcome exact_transfer(const TunnelingModel& model);

double perturbative_infidelity(const TunnelingModel& model);

RigorousBound infidelity_rigorous_bound(const TunnelingModel& model);

/// g = min( sqrt(eps/6) / (t_l^(0) Q), E_{l-2} / (4 sqrt2 t_l^(0)) ).
double choose_g(const ChannelSpectrum& spectrum, double epsilon_target);

TransferTimeReport transfer_time_report(int dimension, double alpha, int depth, double epsilon_target);

}  // namespace longwalk
