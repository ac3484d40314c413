#include "longwalk/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk {

long BlockLattice::distance() const {
    long total = 0;
    for (long s : sides) total += s;
    return total;
}

double BlockLattice::block_coupling(int j) const {
    const double r = std::sqrt(static_cast<double>(dimension)) *
                     static_cast<double>(sides[static_cast<std::size_t>(j)] + sides[static_cast<std::size_t>(j + 1)]);
    return std::pow(r, -alpha);
}

double BlockLattice::strength(long i, long k) const {
    const int bi = block_of[static_cast<std::size_t>(i)];
    const int bk = block_of[static_cast<std::size_t>(k)];
    if (std::abs(bi - bk) != 1) return 0.0;
    double s = block_coupling(std::min(bi, bk));
    if (defect && ((defect->first == i && defect->second == k) || (defect->first == k && defect->second == i)))
        s *= defect->factor;
    return s;
}

double BlockLattice::distance2(long i, long k) const {
    const auto& a = coordinates[static_cast<std::size_t>(i)];
    const auto& b = coordinates[static_cast<std::size_t>(k)];
    double r2 = 0.0;
    for (int ax = 0; ax < dimension; ++ax) {
        const double dx = static_cast<double>(a[static_cast<std::size_t>(ax)] - b[static_cast<std::size_t>(ax)]);
        r2 += dx * dx;
    }
    return r2;
}

BlockLattice build_block_lattice(int dimension, double alpha, int depth) {
    require(dimension == 1 || dimension == 2, ErrorKind::InvalidArgument,
            "build_block_lattice: explicit lattices need d = 1 or 2");
    require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument,
            "build_block_lattice: alpha must be finite and >= 0");
    require(depth >= 2 && depth % 2 == 0, ErrorKind::InvalidArgument,
            "build_block_lattice: l must be even and >= 2");
    require(depth <= 30, ErrorKind::InvalidArgument, "build_block_lattice: l too large");

    BlockLattice lat;
    lat.dimension = dimension;
    lat.alpha = alpha;
    lat.depth = depth;
    long total = 0;
    for (int j = 0; j <= 2 * depth; ++j) {
        const long side = 1L << std::min(j, 2 * depth - j);
        const long pop = dimension == 1 ? side : side * side;
        lat.sides.push_back(side);
        lat.populations.push_back(pop);
        total += pop;
    }
    if (total > kLatticeSiteCap) {
        std::ostringstream os;
        os << "build_block_lattice: " << total << " sites exceed the cap of " << kLatticeSiteCap;
        fail(ErrorKind::Domain, os.str());
    }

    lat.coordinates.reserve(static_cast<std::size_t>(total));
    lat.block_of.reserve(static_cast<std::size_t>(total));
    long origin = 0;
    for (int j = 0; j <= 2 * depth; ++j) {
        const long side = lat.sides[static_cast<std::size_t>(j)];
        lat.origins.push_back(origin);
        lat.offsets.push_back(static_cast<long>(lat.coordinates.size()));
        if (dimension == 1) {
            for (long x = 0; x < side; ++x) {
                lat.coordinates.push_back({origin + x, 0});
                lat.block_of.push_back(j);
            }
        } else {
            for (long x = 0; x < side; ++x) {
                for (long y = 0; y < side; ++y) {
                    lat.coordinates.push_back({origin + x, origin + y});
                    lat.block_of.push_back(j);
                }
            }
        }
        origin += side;
    }
    lat.offsets.push_back(total);
    return lat;
}

BlockLattice with_defect(BlockLattice lattice, long first, long second, double factor) {
    require(first >= 0 && second >= 0 && first < lattice.site_count() && second < lattice.site_count(),
            ErrorKind::InvalidArgument, "with_defect: site index out of range");
    require(lattice.strength(first, second) != 0.0, ErrorKind::InvalidArgument,
            "with_defect: the two sites are not bonded");
    lattice.defect = BondDefect{first, second, factor};
    return lattice;
}

numkit::LinearOperator lattice_operator(const BlockLattice& lattice, double g) {
    return [&lattice, g](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        const int nb = lattice.blocks();
        const long n = lattice.site_count();
        y.setZero(x.size());
        std::vector<double> sums(static_cast<std::size_t>(nb), 0.0);
        for (int j = 0; j < nb; ++j)
            sums[static_cast<std::size_t>(j)] =
                x.segment(1 + lattice.offsets[static_cast<std::size_t>(j)],
                          lattice.populations[static_cast<std::size_t>(j)]).sum();
        for (int j = 0; j < nb; ++j) {
            double v = 0.0;
            if (j > 0) v += lattice.block_coupling(j - 1) * sums[static_cast<std::size_t>(j - 1)];
            if (j + 1 < nb) v += lattice.block_coupling(j) * sums[static_cast<std::size_t>(j + 1)];
            y.segment(1 + lattice.offsets[static_cast<std::size_t>(j)],
                      lattice.populations[static_cast<std::size_t>(j)]).setConstant(v);
        }
        // endpoints: X to every site of block 0, Y to every site of block 2l
        y.segment(1, lattice.populations.front()).array() += g * x[0];
        y.segment(1 + lattice.offsets[static_cast<std::size_t>(nb - 1)], lattice.populations.back()).array() +=
            g * x[n + 1];
        y[0] = g * sums.front();
        y[n + 1] = g * sums.back();
        if (lattice.defect) {
            const auto& d = *lattice.defect;
            const double base = lattice.block_coupling(
                std::min(lattice.block_of[static_cast<std::size_t>(d.first)],
                         lattice.block_of[static_cast<std::size_t>(d.second)]));
            const double extra = (d.factor - 1.0) * base;
            y[1 + d.first] += extra * x[1 + d.second];
            y[1 + d.second] += extra * x[1 + d.first];
        }
    };
}

Eigen::MatrixXd full_hamiltonian(const BlockLattice& lattice, double g) {
    const long n = lattice.site_count() + 2;
    require(n <= numkit::kDenseDimensionCap, ErrorKind::Domain,
            "full_hamiltonian: lattice too large for a dense matrix");
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (long i = 0; i < lattice.site_count(); ++i) {
        const int bi = lattice.block_of[static_cast<std::size_t>(i)];
        if (bi + 1 >= lattice.blocks()) continue;
        const long lo = lattice.offsets[static_cast<std::size_t>(bi + 1)];
        const long hi = lattice.offsets[static_cast<std::size_t>(bi + 2)];
        for (long k = lo; k < hi; ++k) h(1 + i, 1 + k) = h(1 + k, 1 + i) = lattice.strength(i, k);
    }
    for (long i = 0; i < lattice.populations.front(); ++i) h(0, 1 + i) = h(1 + i, 0) = g;
    const long last = lattice.offsets[static_cast<std::size_t>(lattice.blocks() - 1)];
    for (long i = last; i < lattice.site_count(); ++i) h(m - 1, 1 + i) = h(1 + i, m - 1) = g;
    return h;
}

ChainReduction reduce_to_chain(const BlockLattice& lattice) {
    ChainReduction r;
    const double d = lattice.dimension;
    r.normalization = std::pow(3.0 * std::sqrt(d), -lattice.alpha) * std::exp2(d / 2.0);
    for (int j = 0; j + 1 < lattice.blocks(); ++j) {
        const double pops = static_cast<double>(lattice.populations[static_cast<std::size_t>(j)]) *
                            static_cast<double>(lattice.populations[static_cast<std::size_t>(j + 1)]);
        r.raw_bonds.push_back(lattice.block_coupling(j) * std::sqrt(pops));
    }
    r.chain.dimension = lattice.dimension;
    r.chain.alpha = lattice.alpha;
    r.chain.depth = lattice.depth;
    r.chain.base = std::exp2(d - lattice.alpha);
    for (double b : r.raw_bonds) r.chain.bonds.push_back(b / r.normalization);
    return r;
}

double verify_subspace_closure(const BlockLattice& lattice) {
    const long n = lattice.site_count() + 2;
    const auto apply = lattice_operator(lattice, 1.0);
    const int nb = lattice.blocks();

    auto column = [&](int j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        const long pop = lattice.populations[static_cast<std::size_t>(j)];
        v.segment(1 + lattice.offsets[static_cast<std::size_t>(j)], pop)
            .setConstant(1.0 / std::sqrt(static_cast<double>(pop)));
        return v;
    };

    double worst = 0.0;
    Eigen::VectorXd hv(n);
    for (int j = 0; j < nb; ++j) {
        apply(column(j), hv);
        Eigen::VectorXd residual = hv;
        residual[0] = 0.0;
        residual[n - 1] = 0.0;
        for (int m = 0; m < nb; ++m) {
            const Eigen::VectorXd c = column(m);
            residual -= c.dot(hv) * c;
        }
        worst = std::max(worst, residual.norm());
    }
    return worst;
}

double verify_reduction_dynamics(const BlockLattice& lattice, double g, std::span<const double> times) {
    const auto full = numkit::eigh_dense(full_hamiltonian(lattice, g));
    const auto reduction = reduce_to_chain(lattice);
    const auto reduced = numkit::eigh_dense(tunneling_matrix(reduction.raw_bonds, g));

    Eigen::VectorXd x_full = Eigen::VectorXd::Zero(full.size());
    x_full[0] = 1.0;
    Eigen::VectorXd x_red = Eigen::VectorXd::Zero(reduced.size());
    x_red[0] = 1.0;

    double worst = 0.0;
    for (double t : times) {
        const auto pf = numkit::evolve(full, x_full, t);
        const auto pr = numkit::evolve(reduced, x_red, t);
        worst = std::max(worst, std::abs(std::norm(pf[pf.size() - 1]) - std::norm(pr[pr.size() - 1])));
    }
    return worst;
}

double envelope_ratio(const BlockLattice& lattice) {
    double worst = 0.0;
    for (long i = 0; i < lattice.site_count(); ++i) {
        const int bi = lattice.block_of[static_cast<std::size_t>(i)];
        if (bi + 1 >= lattice.blocks()) continue;
        for (long k = lattice.offsets[static_cast<std::size_t>(bi + 1)];
             k < lattice.offsets[static_cast<std::size_t>(bi + 2)]; ++k) {
            const double r = std::sqrt(lattice.distance2(i, k));
            worst = std::max(worst, lattice.strength(i, k) * std::pow(r, lattice.alpha));
        }
    }
    return worst;
}

bool blocks_touch_at_corners(const BlockLattice& lattice) {
    for (int j = 0; j + 1 < lattice.blocks(); ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (lattice.origins[ju] + lattice.sides[ju] != lattice.origins[ju + 1]) return false;
    }
    return true;
}

long bond_count(const BlockLattice& lattice) {
    long total = 0;
    for (int j = 0; j + 1 < lattice.blocks(); ++j)
        total += lattice.populations[static_cast<std::size_t>(j)] * lattice.populations[static_cast<std::size_t>(j + 1)];
    return total;
}

}  // namespace longwalk
