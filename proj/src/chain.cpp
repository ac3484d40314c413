#include "longwalk/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "longwalk/error.hpp"
#include "longwalk/numkit.hpp"

namespace longwalk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool passes_guard(double base, int depth) {
    const double norm_scale = std::max(1.0, std::pow(base, depth - 1));
    const double gap_scale = std::min(1.0, std::pow(base, depth));
    return kEps * norm_scale <= kPrecisionGuardRatio * gap_scale;
}

double base_for(int dimension, double alpha) { return std::exp2(dimension - alpha); }

}  // namespace

double transfer_distance(int depth) { return std::exp2(depth + 1) + std::exp2(depth) - 2.0; }

double EffectiveChain::distance() const { return transfer_distance(depth); }

int max_admissible_depth(int dimension, double alpha) {
    const double a = base_for(dimension, alpha);
    int best = 0;
    for (int l = 2; l <= kMaxRecursionDepth; l += 2)
        if (passes_guard(a, l)) best = l;
    return best;
}

EffectiveChain build_effective_chain(int dimension, double alpha, int depth) {
    require(dimension >= 1 && dimension <= 3, ErrorKind::InvalidArgument,
            "build_effective_chain: d must be 1, 2 or 3");
    require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument,
            "build_effective_chain: alpha must be finite and >= 0");
    require(depth % 2 == 0, ErrorKind::InvalidArgument, "build_effective_chain: l must be even");
    require(depth >= 2 && depth <= kMaxRecursionDepth, ErrorKind::InvalidArgument,
            "build_effective_chain: l must lie in [2, 100]");

    const double a = base_for(dimension, alpha);
    if (!passes_guard(a, depth)) {
        const int max_l = max_admissible_depth(dimension, alpha);
        std::ostringstream os;
        os << "precision guard: l = " << depth << " is too deep for d = " << dimension
           << ", alpha = " << alpha << " (a = " << a << "); maximal admissible l is " << max_l;
        throw PrecisionGuardError(os.str(), max_l);
    }

    EffectiveChain chain;
    chain.dimension = dimension;
    chain.alpha = alpha;
    chain.depth = depth;
    chain.base = a;
    chain.bonds.resize(static_cast<std::size_t>(2 * depth));
    for (int j = 0; j < 2 * depth; ++j)
        chain.bonds[static_cast<std::size_t>(j)] = std::pow(a, std::min(j, 2 * depth - 1 - j));
    return chain;
}

Eigen::MatrixXd channel_matrix(std::span<const double> bonds) {
    const auto n = static_cast<Eigen::Index>(bonds.size() + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        h(j, j + 1) = bonds[static_cast<std::size_t>(j)];
        h(j + 1, j) = bonds[static_cast<std::size_t>(j)];
    }
    return h;
}

Eigen::MatrixXd tunneling_matrix(std::span<const double> bonds, double g) {
    const auto n = static_cast<Eigen::Index>(bonds.size() + 3);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    h.block(1, 1, n - 2, n - 2) = channel_matrix(bonds);
    h(0, 1) = h(1, 0) = g;
    h(n - 2, n - 1) = h(n - 1, n - 2) = g;
    return h;
}

namespace {

bool is_palindrome(std::span<const double> bonds) {
    const std::size_t n = bonds.size();
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double scale = std::max(std::abs(bonds[j]), std::abs(bonds[n - 1 - j]));
        if (std::abs(bonds[j] - bonds[n - 1 - j]) > 1e-13 * scale) return false;
    }
    return true;
}

// QL on a sector chain oriented so that its bonds grow toward the bottom;
// for geometric bonds this keeps the tiny eigenvalues (and their vectors)
// accurate relative to their own size, not just to ||H||.
numkit::SymmetricEigenDecomposition graded_sector(std::vector<double> bonds, Eigen::Index sites) {
    const std::vector<double> diagonal(static_cast<std::size_t>(sites), 0.0);
    const bool flip = !bonds.empty() && std::abs(bonds.front()) > std::abs(bonds.back());
    if (flip) std::reverse(bonds.begin(), bonds.end());
    auto eig = numkit::eigh_tridiagonal(diagonal, bonds);
    if (flip) eig.eigenvectors = eig.eigenvectors.colwise().reverse().eval();
    return eig;
}

// Eigenpairs of the full mirror-symmetric chain assembled from its even
// (l+1 sites) and odd (l sites) parity sectors. Returned ascending.
numkit::SymmetricEigenDecomposition mirror_eigh(std::span<const double> bonds) {
    const auto l = static_cast<Eigen::Index>(bonds.size() / 2);
    const Eigen::Index n = 2 * l + 1;
    const double r2 = std::sqrt(2.0);

    std::vector<double> even_bonds(bonds.begin(), bonds.begin() + l);
    even_bonds.back() *= r2;
    const auto even = graded_sector(std::move(even_bonds), l + 1);
    std::vector<double> odd_bonds(bonds.begin(), bonds.begin() + (l - 1));
    const auto odd = graded_sector(std::move(odd_bonds), l);

    std::vector<std::pair<double, Eigen::VectorXd>> modes;
    modes.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < even.size(); ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        const auto u = even.eigenvectors.col(k);
        for (Eigen::Index j = 0; j < l; ++j) v[j] = v[2 * l - j] = u[j] / r2;
        v[l] = u[l];
        modes.emplace_back(even.eigenvalues[k], std::move(v));
    }
    for (Eigen::Index k = 0; k < odd.size(); ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        const auto w = odd.eigenvectors.col(k);
        for (Eigen::Index j = 0; j < l; ++j) {
            v[j] = w[j] / r2;
            v[2 * l - j] = -w[j] / r2;
        }
        modes.emplace_back(odd.eigenvalues[k], std::move(v));
    }
    std::stable_sort(modes.begin(), modes.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    numkit::SymmetricEigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[k] = modes[static_cast<std::size_t>(k)].first;
        out.eigenvectors.col(k) = modes[static_cast<std::size_t>(k)].second;
    }
    return out;
}

}  // namespace

ChannelSpectrum channel_spectrum(std::span<const double> bonds, double zero_tolerance) {
    require(!bonds.empty() && bonds.size() % 2 == 0, ErrorKind::InvalidArgument,
            "channel_spectrum: bond count must be even and positive");
    for (double b : bonds)
        require(std::isfinite(b), ErrorKind::InvalidArgument, "channel_spectrum: non-finite bond");
    const std::size_t n = bonds.size() + 1;
    numkit::SymmetricEigenDecomposition eig;
    if (is_palindrome(bonds)) {
        eig = mirror_eigh(bonds);
    } else {
        const std::vector<double> diagonal(n, 0.0);
        eig = numkit::eigh_tridiagonal(diagonal, bonds);
    }

    ChannelSpectrum s;
    s.depth = static_cast<int>(bonds.size() / 2);
    s.zero_tolerance = zero_tolerance;
    const auto m = static_cast<Eigen::Index>(n);
    s.energies.resize(m);
    s.amplitudes.resize(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index src = m - 1 - k;  // ascending -> descending
        s.energies[k] = eig.eigenvalues[src];
        Eigen::VectorXd col = eig.eigenvectors.col(src);
        double pivot = col[0];
        if (std::abs(pivot) <= 1e-12) {
            for (Eigen::Index j = 0; j < m; ++j) {
                if (std::abs(col[j]) > 1e-12) {
                    pivot = col[j];
                    break;
                }
            }
        }
        if (pivot < 0) col = -col;
        s.amplitudes.row(k) = col.transpose();
    }
    const double e_zero = s.energies[s.depth];
    if (std::abs(e_zero) > zero_tolerance) {
        std::ostringstream os;
        os << "channel_spectrum: zero mode energy " << e_zero << " exceeds tolerance " << zero_tolerance;
        fail(ErrorKind::Numerical, os.str());
    }
    return s;
}

ChannelSpectrum channel_spectrum(std::span<const double> bonds) {
    double scale = 1.0;
    for (double b : bonds) scale = std::max(scale, std::abs(b));
    return channel_spectrum(bonds, 1e-8 * scale);
}

ChannelSpectrum chain_spectrum(const EffectiveChain& chain) {
    const double tol = 1e-8 * std::max(1.0, std::pow(chain.base, chain.depth - 1));
    return channel_spectrum(chain.bonds, tol);
}

double zero_mode_inverse_endpoint(double base, int depth) {
    require(base != 1.0, ErrorKind::InvalidArgument, "zero mode closed form requires a != 1");
    const double inv_al = std::pow(base, -depth);
    return std::sqrt(inv_al + 2.0 * (1.0 - inv_al) / (1.0 - 1.0 / (base * base)));
}

std::vector<double> zero_mode_analytic(const EffectiveChain& chain) {
    require(chain.base != 1.0, ErrorKind::InvalidArgument,
            "zero_mode_analytic: a = 1 (alpha = d) is covered by uniform_chain_analytic");
    const int l = chain.depth;
    const double norm = zero_mode_inverse_endpoint(chain.base, l);
    std::vector<double> v(static_cast<std::size_t>(2 * l + 1), 0.0);
    for (int j = 0; 2 * j <= l; ++j) {
        const double amp = std::pow(-chain.base, -j) / norm;
        v[static_cast<std::size_t>(2 * j)] = amp;
        v[static_cast<std::size_t>(2 * l - 2 * j)] = amp;
    }
    return v;
}

std::vector<UniformChainMode> uniform_chain_analytic(int depth) {
    require(depth >= 1, ErrorKind::InvalidArgument, "uniform_chain_analytic: l must be >= 1");
    std::vector<UniformChainMode> out;
    out.reserve(static_cast<std::size_t>(2 * depth + 1));
    for (int k = 0; k <= 2 * depth; ++k) {
        const double theta = (k + 1) * std::numbers::pi / (2.0 * depth + 2.0);
        // cos(pi/2) is not exactly zero in floating point.
        const double energy = (k == depth) ? 0.0 : 2.0 * std::cos(theta);
        out.push_back({energy, std::sin(theta)});
    }
    return out;
}

QReport q_factor(const ChannelSpectrum& spectrum) {
    const int l = spectrum.zero_index();
    const double tl = spectrum.endpoint(l);
    require(std::abs(tl) > 1e-300, ErrorKind::Numerical, "q_factor: vanishing zero-mode endpoint amplitude");

    QReport r;
    r.zero_mode_endpoint = tl;
    r.min_gap = spectrum.energies[l - 1];
    double sum = 0.0;
    for (int k = 0; k < spectrum.modes(); ++k) {
        if (k == l) continue;
        const double e = spectrum.energies[k];
        const double t = spectrum.endpoint(k);
        const double ratio = (t / tl) / e;
        const double term = ratio * ratio;
        r.terms.push_back({k, e, t, term});
        sum += term;
    }
    r.q = std::sqrt(sum);
    return r;
}

double min_gap(const ChannelSpectrum& spectrum) { return spectrum.energies[spectrum.zero_index() - 1]; }

}  // namespace longwalk
