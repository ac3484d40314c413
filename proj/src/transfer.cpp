#include "longwalk/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "longwalk/error.hpp"

namespace longwalk {

namespace {

double endpoint_population(const numkit::SymmetricEigenDecomposition& eig, Eigen::Index from, Eigen::Index to,
                           double t) {
    Eigen::VectorXd start = Eigen::VectorXd::Zero(eig.size());
    start[from] = 1.0;
    const auto psi = numkit::evolve(eig, start, t);
    return std::norm(psi[to]);
}

}  // namespace

double TunnelingModel::weak_coupling_sum() const {
    const int l = zero_index();
    double s = 0.0;
    for (int k = 0; k < spectrum.modes(); ++k) {
        if (k == l) continue;
        const double r = rabi[k] / spectrum.energies[k];
        s += r * r;
    }
    return s;
}

TunnelingModel attach_endpoints(const ChannelSpectrum& spectrum, std::span<const double> bonds, double g) {
    require(std::isfinite(g) && g > 0.0, ErrorKind::InvalidArgument, "attach_endpoints: g must be positive");
    require(static_cast<int>(bonds.size()) + 1 == spectrum.modes(), ErrorKind::InvalidArgument,
            "attach_endpoints: bonds do not match the spectrum");
    TunnelingModel m;
    m.spectrum = spectrum;
    m.bonds.assign(bonds.begin(), bonds.end());
    m.g = g;
    m.rabi = std::sqrt(2.0) * g * spectrum.amplitudes.col(0);
    m.time = std::numbers::pi / m.rabi[spectrum.zero_index()];
    m.matrix = tunneling_matrix(bonds, g);
    return m;
}

TunnelingModel attach_endpoints(const EffectiveChain& chain, double g) {
    return attach_endpoints(chain_spectrum(chain), chain.bonds, g);
}

double anticommutator_residual(const TunnelingModel& model) {
    const auto n = model.matrix.rows();
    Eigen::VectorXd d(n);
    d[0] = -1.0;
    d[n - 1] = -1.0;
    for (Eigen::Index j = 1; j + 1 < n; ++j) d[j] = ((j - 1) % 2 == 0) ? 1.0 : -1.0;
    const Eigen::MatrixXd ac = d.asDiagonal() * model.matrix + model.matrix * d.asDiagonal();
    return ac.cwiseAbs().maxCoeff();
}

double transfer_fidelity(const TunnelingModel& model, double t) {
    const auto eig = numkit::eigh_dense(model.matrix);
    return endpoint_population(eig, 0, model.matrix.rows() - 1, t);
}

double swap_fidelity(const TunnelingModel& model, double t) {
    const auto eig = numkit::eigh_dense(model.matrix);
    return endpoint_population(eig, model.matrix.rows() - 1, 0, t);
}

double transfer_fidelity_eigenbasis(const TunnelingModel& model, double t) {
    const auto& s = model.spectrum;
    const Eigen::Index modes = s.modes();
    const Eigen::Index n = modes + 2;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < modes; ++k) {
        h(1 + k, 1 + k) = s.energies[k];
        h(0, 1 + k) = h(1 + k, 0) = model.g * s.amplitudes(k, 0);
        h(n - 1, 1 + k) = h(1 + k, n - 1) = model.g * s.amplitudes(k, modes - 1);
    }
    return endpoint_population(numkit::eigh_dense(h), 0, n - 1, t);
}

TransferOutcome exact_transfer(const TunnelingModel& model) {
    TransferOutcome out;
    out.time = model.time;
    out.g = model.g;
    out.fidelity_exact = transfer_fidelity(model, model.time);
    out.infidelity_exact = 1.0 - out.fidelity_exact;
    out.infidelity_perturbative = perturbative_infidelity(model);
    const auto b = infidelity_rigorous_bound(model);
    out.infidelity_bound = b.bound;
    out.conditions = b.conditions;
    return out;
}

double perturbative_infidelity(const TunnelingModel& model) {
    const auto& s = model.spectrum;
    const int l = s.zero_index();
    double eps = 0.0;
    for (int k = 0; k < s.modes(); ++k) {
        if (k == l) continue;
        const double e = s.energies[k];
        const double r = model.rabi[k] / e;
        eps += r * r * (1.0 + s.parity(k) * std::cos(e * model.time));
    }
    return eps;
}

RigorousBound infidelity_rigorous_bound(const TunnelingModel& model) {
    const int l = model.zero_index();
    const double sum = model.weak_coupling_sum();
    RigorousBound b;
    b.bound = 3.0 * sum;
    b.conditions.gap = model.spectrum.energies[l - 2] >= 4.0 * model.rabi[l];
    b.conditions.weak = sum < 0.75;
    return b;
}

double choose_g(const ChannelSpectrum& spectrum, double epsilon_target) {
    require(epsilon_target > 0.0 && epsilon_target < 0.75, ErrorKind::InvalidArgument,
            "choose_g: epsilon target must lie in (0, 3/4)");
    const int l = spectrum.zero_index();
    const double tl = spectrum.endpoint(l);
    const double q = q_factor(spectrum).q;
    const double e_gap = spectrum.energies[l - 2];
    double weak = std::sqrt(epsilon_target / 6.0) / (tl * q);
    double gap = e_gap / (4.0 * std::sqrt(2.0) * tl);
    // step off rounding so the bound and the gap condition hold as attach_endpoints evaluates them
    auto rabi = [&](double g, int k) { return (std::sqrt(2.0) * g) * spectrum.amplitudes(k, 0); };
    auto bound = [&](double g) {
        double s = 0.0;
        for (int k = 0; k < spectrum.modes(); ++k) {
            if (k == l) continue;
            const double r = rabi(g, k) / spectrum.energies[k];
            s += r * r;
        }
        return 3.0 * s;
    };
    while (bound(weak) > epsilon_target) weak = std::nextafter(weak, 0.0);
    while (4.0 * rabi(gap, l) > e_gap) gap = std::nextafter(gap, 0.0);
    return std::min(weak, gap);
}

TransferTimeReport transfer_time_report(int dimension, double alpha, int depth, double epsilon_target) {
    const auto chain = build_effective_chain(dimension, alpha, depth);
    const auto spectrum = chain_spectrum(chain);
    const int l = spectrum.zero_index();
    const double tl = spectrum.endpoint(l);
    TransferTimeReport r;
    r.g = choose_g(spectrum, epsilon_target);
    r.gap_branch = spectrum.energies[l - 2] / (4.0 * std::sqrt(2.0) * tl) <
                   std::sqrt(epsilon_target / 6.0) / (tl * q_factor(spectrum).q);
    r.time = std::numbers::pi / (std::sqrt(2.0) * r.g * tl);
    r.distance = chain.distance();
    return r;
}

}  // namespace longwalk
