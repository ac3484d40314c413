#pragma once

// Translation-invariant protocol on a periodic d-dimensional lattice (d <= 2)
// with J(r) = 1 / r^alpha between every pair of sites.

#include <vector>

#include "longwalk/transfer.hpp"

namespace longwalk {

inline constexpr long kRingFastSideCap = 1L << 17;   // d = 1
inline constexpr long kRingSide2dCap = 512;           // d = 2
inline constexpr long kRingDenseSideCap = 2000;       // d = 1 exact evolution
inline constexpr long kRingDense2dSideCap = 44;       // d = 2 exact evolution

struct RingModel {
    int dimension = 1;
    long side = 2;  // L
    double alpha = 0.0;
    long sites = 2;  // N = L^d
    std::vector<double> energies;   // E_k; in d = 2 the index is kx * L + ky
    std::vector<double> detunings;  // Delta_k = E_0 - E_k

    int parity(long k) const;
};

struct RingSpectralSummary {
    double delta0 = 0.0;  // min_{k != 0} Delta_k
    double bandwidth = 0.0;
    double q2 = 0.0;  // sum_{k != 0} 1 / Delta_k^2
};

/// Couplings J(r) = 1 / min(r, L - r)^alpha with row[0] = 0.
std::vector<double> ring_row(long side, double alpha);

RingModel ring_spectrum(int dimension, long side, double alpha);

/// d = 1 cosine-sum formula with the single antipodal term, O(L^2).
std::vector<double> ring_closed_form(long side, double alpha);

/// Omega = sqrt(2) g / sqrt(N)
double ring_rabi(const RingModel& model, double g);
double ring_transfer_time(const RingModel& model, double g);
double ring_mu(const RingModel& model, double g);
double ring_perturbative_infidelity(const RingModel& model, double g);
RingSpectralSummary ring_spectral_summary(const RingModel& model);

/// Dense model over (X, lattice sites, Y): hopping block E_0 I - J, X bonded
/// to site 0 and Y to the antipode, mu on both endpoints.
Eigen::MatrixXd ring_hamiltonian(const RingModel& model, double g);

TransferOutcome ring_exact_transfer(int dimension, long side, double alpha, double g);

/// g for which the perturbative envelope 2 Omega^2 q2 equals epsilon.
double ring_choose_g(const RingModel& model, double epsilon_target);

}  // namespace longwalk
