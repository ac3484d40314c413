#pragma once

// The effective one-dimensional channel: 2l+1 sites with palindromic
// geometric bonds a^min(j, 2l-1-j), a = 2^(d - alpha).

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace longwalk {

inline constexpr int kMaxRecursionDepth = 100;
/// eps * max(1, a^(l-1)) must stay below this fraction of min(1, a^l).
inline constexpr double kPrecisionGuardRatio = 1e-3;

struct EffectiveChain {
    int dimension = 1;
    double alpha = 0.0;
    int depth = 2;  // l
    double base = 1.0;  // a
    std::vector<double> bonds;  // 2l entries

    int sites() const { return 2 * depth + 1; }
    /// Transfer distance L = 2^(l+1) + 2^l - 2 (exact while l <= 51).
    double distance() const;
};

/// Eigenpairs of the channel ordered from the top of the spectrum (k = 0) down.
struct ChannelSpectrum {
    int depth = 0;  // l; the zero mode sits at k = l
    Eigen::VectorXd energies;    // E_k, descending
    Eigen::MatrixXd amplitudes;  // (k, j) -> t_k^(j), sign fixed so t_k^(0) > 0
    double zero_tolerance = 0.0;

    int modes() const { return static_cast<int>(energies.size()); }
    int zero_index() const { return depth; }
    int parity(int k) const { return (k % 2 == 0) ? 1 : -1; }
    double endpoint(int k) const { return amplitudes(k, 0); }
};

struct QModeTerm {
    int k = 0;
    double energy = 0.0;
    double endpoint = 0.0;
    double term = 0.0;  // ((t_k^(0) / t_l^(0)) / E_k)^2
};

struct QReport {
    double q = 0.0;
    double zero_mode_endpoint = 0.0;  // t_l^(0)
    double min_gap = 0.0;             // E_{l-1}
    std::vector<QModeTerm> terms;     // every k != l
};

struct UniformChainMode {
    double energy;
    double endpoint_ratio;  // t_k^(0) / t_l^(0)
};

double transfer_distance(int depth);

/// Largest even l <= kMaxRecursionDepth that passes the precision guard for
/// this (d, alpha); 0 when even l = 2 fails.
int max_admissible_depth(int dimension, double alpha);

/// Throws PrecisionGuardError (naming the maximal admissible l) when the
/// guard fails and InvalidArgument for odd l or out-of-range d.
EffectiveChain build_effective_chain(int dimension, double alpha, int depth);

/// Spectrum of the zero-diagonal tridiagonal matrix with the given bonds.
/// `bonds` must have even length 2l; `zero_tolerance` bounds |E_l|.
ChannelSpectrum channel_spectrum(std::span<const double> bonds, double zero_tolerance);
/// Default zero tolerance 1e-8 * max(1, max bond).
ChannelSpectrum channel_spectrum(std::span<const double> bonds);

ChannelSpectrum chain_spectrum(const EffectiveChain& chain);

/// Closed-form zero mode (a != 1), mirror-extended over all 2l+1 sites.
std::vector<double> zero_mode_analytic(const EffectiveChain& chain);

/// Closed-form 1 / t_l^(0) for base a and depth l (a != 1).
double zero_mode_inverse_endpoint(double base, int depth);

/// alpha = d closed forms: E_k = 2 cos((k+1) pi / (2l+2)), ratio sin(...).
std::vector<UniformChainMode> uniform_chain_analytic(int depth);

QReport q_factor(const ChannelSpectrum& spectrum);

double min_gap(const ChannelSpectrum& spectrum);

/// Tridiagonal matrix (zero diagonal) of the channel, dense.
Eigen::MatrixXd channel_matrix(std::span<const double> bonds);

/// Channel plus endpoints over the basis (X, site 0..2l, Y): X-site 0 and
/// site 2l-Y bonds of strength g.
Eigen::MatrixXd tunneling_matrix(std::span<const double> bonds, double g);

}  // namespace longwalk
