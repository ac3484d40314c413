#pragma once

// Explicit d-dimensional block lattice (d <= 2): 2l+1 hypercubes of side
// 2^min(j, 2l-j) placed corner to corner along the main diagonal, with
// all-to-all hopping between neighbouring blocks.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "longwalk/chain.hpp"
#include "longwalk/numkit.hpp"

namespace longwalk {

inline constexpr long kLatticeSiteCap = 20000;

/// Multiplies the single bond between sites `first` and `second`; only used
/// to break the block symmetry on purpose.
struct BondDefect {
    long first = 0;
    long second = 0;
    double factor = 1.0;
};

struct BlockLattice {
    int dimension = 1;
    double alpha = 0.0;
    int depth = 2;
    std::vector<long> sides;        // l_j
    std::vector<long> populations;  // N_j = l_j^d
    std::vector<long> origins;      // o_j, same on every axis
    std::vector<long> offsets;      // first site index of block j; offsets[2l+1] = site count
    std::vector<std::array<long, 2>> coordinates;  // second entry 0 when d = 1
    std::vector<int> block_of;
    std::optional<BondDefect> defect;

    int blocks() const { return static_cast<int>(sides.size()); }
    long site_count() const { return offsets.back(); }
    long distance() const;
    /// Strength [sqrt(d) (l_j + l_{j+1})]^(-alpha) between blocks j and j+1.
    double block_coupling(int j) const;
    /// Hopping between two lattice sites (0 unless in neighbouring blocks).
    double strength(long i, long k) const;
    /// Squared Euclidean distance of two sites.
    double distance2(long i, long k) const;
};

struct ChainReduction {
    EffectiveChain chain;  // normalized bonds
    std::vector<double> raw_bonds;
    double normalization = 1.0;  // (3 sqrt(d))^(-alpha) 2^(d/2)
};

BlockLattice build_block_lattice(int dimension, double alpha, int depth);

BlockLattice with_defect(BlockLattice lattice, long first, long second, double factor);

/// H x over the basis (X, sites..., Y) without forming H.
numkit::LinearOperator lattice_operator(const BlockLattice& lattice, double g);

/// Dense form of lattice_operator; dimension site_count + 2 <= kDenseDimensionCap.
Eigen::MatrixXd full_hamiltonian(const BlockLattice& lattice, double g);

ChainReduction reduce_to_chain(const BlockLattice& lattice);

double verify_subspace_closure(const BlockLattice& lattice);

/// max_t | |<Y|psi_full(t)>|^2 - |<Y|psi_reduced(t)>|^2 | starting from |X>.
double verify_reduction_dynamics(const BlockLattice& lattice, double g, std::span<const double> times);

/// max over bonded pairs of strength * r^alpha (<= 1 for the power-law envelope).
double envelope_ratio(const BlockLattice& lattice);

/// True when block j+1 starts exactly at the far corner of block j for every j.
bool blocks_touch_at_corners(const BlockLattice& lattice);

long bond_count(const BlockLattice& lattice);

}  // namespace longwalk
