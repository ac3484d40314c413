#include "longwalk/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk {

int RingModel::parity(long k) const {
    long s = k;
    if (dimension == 2) s = k / side + k % side;
    return (s % 2 == 0) ? 1 : -1;
}

std::vector<double> ring_row(long side, double alpha) {
    std::vector<double> row(static_cast<std::size_t>(side), 0.0);
    for (long r = 1; r < side; ++r)
        row[static_cast<std::size_t>(r)] = std::pow(static_cast<double>(std::min(r, side - r)), -alpha);
    return row;
}

namespace {

void check_side(int dimension, long side) {
    require(dimension == 1 || dimension == 2, ErrorKind::InvalidArgument, "ring: d must be 1 or 2");
    require(side >= 2 && side % 2 == 0, ErrorKind::InvalidArgument, "ring: L must be even and >= 2");
    const long cap = dimension == 1 ? kRingFastSideCap : kRingSide2dCap;
    if (side > cap) {
        std::ostringstream os;
        os << "ring: L = " << side << " exceeds the d = " << dimension << " cap of " << cap;
        fail(ErrorKind::Domain, os.str());
    }
}

std::vector<double> spectrum_2d(long side, double alpha) {
    const auto n = static_cast<std::size_t>(side);
    auto image = [side](long x) { return static_cast<double>(std::min(x, side - x)); };
    // transform along y for every x, then along x for every ky
    std::vector<double> partial(n * n);
    std::vector<double> row(n);
    for (long x = 0; x < side; ++x) {
        for (long y = 0; y < side; ++y) {
            const double r2 = image(x) * image(x) + image(y) * image(y);
            row[static_cast<std::size_t>(y)] = r2 == 0.0 ? 0.0 : std::pow(r2, -alpha / 2.0);
        }
        const auto f = numkit::real_dft_circulant(row);
        std::copy(f.begin(), f.end(), partial.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(x) * n));
    }
    std::vector<double> energies(n * n);
    for (std::size_t ky = 0; ky < n; ++ky) {
        for (std::size_t x = 0; x < n; ++x) row[x] = partial[x * n + ky];
        const auto f = numkit::real_dft_circulant(row);
        for (std::size_t kx = 0; kx < n; ++kx) energies[kx * n + ky] = f[kx];
    }
    return energies;
}

}  // namespace

RingModel ring_spectrum(int dimension, long side, double alpha) {
    check_side(dimension, side);
    require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument, "ring: alpha must be finite and >= 0");
    RingModel m;
    m.dimension = dimension;
    m.side = side;
    m.alpha = alpha;
    m.sites = dimension == 1 ? side : side * side;
    m.energies = dimension == 1 ? numkit::real_dft_circulant(ring_row(side, alpha)) : spectrum_2d(side, alpha);
    m.detunings.resize(m.energies.size());
    for (std::size_t k = 0; k < m.energies.size(); ++k) m.detunings[k] = m.energies[0] - m.energies[k];
    m.detunings[0] = 0.0;
    return m;
}

std::vector<double> ring_closed_form(long side, double alpha) {
    check_side(1, side);
    const auto n = static_cast<std::size_t>(side);
    std::vector<double> cosines(n);
    for (std::size_t m = 0; m < n; ++m)
        cosines[m] = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
    const double antipode = std::pow(static_cast<double>(side / 2), -alpha);
    std::vector<double> e(n);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j < n / 2; ++j)
            acc += cosines[(k * j) % n] * std::pow(static_cast<double>(j), -alpha);
        e[k] = 2.0 * acc + (k % 2 == 0 ? antipode : -antipode);
    }
    return e;
}

double ring_rabi(const RingModel& model, double g) {
    return std::sqrt(2.0) * g / std::sqrt(static_cast<double>(model.sites));
}

double ring_transfer_time(const RingModel& model, double g) { return std::numbers::pi / ring_rabi(model, g); }

namespace {

void check_detunings(const RingModel& model) {
    for (std::size_t k = 1; k < model.detunings.size(); ++k) {
        if (!(model.detunings[k] > 0.0)) {
            std::ostringstream os;
            os << "ring: mode " << k << " is degenerate with the k = 0 mode (Delta = " << model.detunings[k] << ")";
            fail(ErrorKind::Numerical, os.str());
        }
    }
}

}  // namespace

double ring_mu(const RingModel& model, double g) {
    require(std::isfinite(g) && g > 0.0, ErrorKind::InvalidArgument, "ring_mu: g must be positive");
    check_detunings(model);
    const double omega = ring_rabi(model, g);
    double s = 0.0;
    for (std::size_t k = 1; k < model.detunings.size(); ++k)
        s += (1.0 - 3.0 * model.parity(static_cast<long>(k))) / (2.0 * model.detunings[k]);
    return omega * omega * s;
}

double ring_perturbative_infidelity(const RingModel& model, double g) {
    require(std::isfinite(g) && g > 0.0, ErrorKind::InvalidArgument, "ring: g must be positive");
    check_detunings(model);
    const double omega = ring_rabi(model, g);
    const double t = std::numbers::pi / omega;
    double s = 0.0;
    for (std::size_t k = 1; k < model.detunings.size(); ++k) {
        const double d = model.detunings[k];
        s += (1.0 + model.parity(static_cast<long>(k)) * std::cos(d * t)) / (d * d);
    }
    return omega * omega * s;
}

RingSpectralSummary ring_spectral_summary(const RingModel& model) {
    check_detunings(model);
    RingSpectralSummary s;
    s.delta0 = *std::min_element(model.detunings.begin() + 1, model.detunings.end());
    const auto [lo, hi] = std::minmax_element(model.energies.begin(), model.energies.end());
    s.bandwidth = *hi - *lo;
    for (std::size_t k = 1; k < model.detunings.size(); ++k) s.q2 += 1.0 / (model.detunings[k] * model.detunings[k]);
    return s;
}

Eigen::MatrixXd ring_hamiltonian(const RingModel& model, double g) {
    const long dense_cap = model.dimension == 1 ? kRingDenseSideCap : kRingDense2dSideCap;
    if (model.side > dense_cap) {
        std::ostringstream os;
        os << "ring_hamiltonian: L = " << model.side << " exceeds the dense cap of " << dense_cap << " for d = "
           << model.dimension;
        fail(ErrorKind::Domain, os.str());
    }
    const long n = model.sites;
    const long side = model.side;
    auto coord = [&](long i) { return model.dimension == 1 ? std::pair{i, 0L} : std::pair{i / side, i % side}; };
    auto image = [side](long d) {
        const long a = std::abs(d) % side;
        return static_cast<double>(std::min(a, side - a));
    };

    const auto m = static_cast<Eigen::Index>(n + 2);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    const double e0 = model.energies[0];
    for (long i = 0; i < n; ++i) {
        h(1 + i, 1 + i) = e0;
        const auto [xi, yi] = coord(i);
        for (long j = i + 1; j < n; ++j) {
            const auto [xj, yj] = coord(j);
            const double dx = image(xi - xj), dy = image(yi - yj);
            const double j_ij = std::pow(dx * dx + dy * dy, -model.alpha / 2.0);
            h(1 + i, 1 + j) = h(1 + j, 1 + i) = -j_ij;
        }
    }
    const long target = model.dimension == 1 ? side / 2 : (side / 2) * side + side / 2;
    const double mu = ring_mu(model, g);
    h(0, 1) = h(1, 0) = g;
    h(m - 1, 1 + target) = h(1 + target, m - 1) = g;
    h(0, 0) = mu;
    h(m - 1, m - 1) = mu;
    return h;
}

TransferOutcome ring_exact_transfer(int dimension, long side, double alpha, double g) {
    const auto model = ring_spectrum(dimension, side, alpha);
    const auto eig = numkit::eigh_dense(ring_hamiltonian(model, g));
    Eigen::VectorXd start = Eigen::VectorXd::Zero(eig.size());
    start[0] = 1.0;
    TransferOutcome out;
    out.g = g;
    out.time = ring_transfer_time(model, g);
    out.mu = ring_mu(model, g);
    const auto psi = numkit::evolve(eig, start, out.time);
    out.fidelity_exact = std::norm(psi[psi.size() - 1]);
    out.infidelity_exact = 1.0 - out.fidelity_exact;
    out.infidelity_perturbative = ring_perturbative_infidelity(model, g);
    return out;
}

double ring_choose_g(const RingModel& model, double epsilon_target) {
    require(epsilon_target > 0.0 && epsilon_target < 1.0, ErrorKind::InvalidArgument,
            "ring_choose_g: epsilon target must lie in (0, 1)");
    const double q2 = ring_spectral_summary(model).q2;
    const double omega = std::sqrt(epsilon_target / (2.0 * q2));
    return omega * std::sqrt(static_cast<double>(model.sites)) / std::sqrt(2.0);
}

}  // namespace longwalk
