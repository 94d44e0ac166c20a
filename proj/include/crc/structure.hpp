// structure.hpp: irrep block structure of the collective representation
//
// The space of n qudits splits into weight spaces V_m (J_z eigenspaces) and,
// orthogonally, into p_j copies of the (2j+1)-dimensional spin-j irrep. The
// basis |j, m, mu> is built by sweeping m upward from -ns: everything already
// found is lifted one step with J_+, and the orthocomplement of the lifted
// vectors inside V_m seeds the lowest-weight vectors of the new j = -m blocks.

#pragma once

#include "crc/collective.hpp"
#include "crc/half_integer.hpp"
#include "crc/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace crc {

struct WeightSpace {
    HalfInt m;
    std::vector<Eigen::Index> indices;  // ascending
    Eigen::Index dim() const { return static_cast<Eigen::Index>(indices.size()); }
};

/// One weight space per m in {-ns, ..., ns}, ascending in m.
std::vector<WeightSpace> weight_decomposition(int n, int d, std::size_t budget_dim = kStructureBudgetDim);

/// Number of tuples (i_1..i_n), i_k in {-s..s}, with sum m. Throws OutOfRange if |m| > ns
/// or m has the wrong parity.
std::uint64_t weight_dim(int n, int d, HalfInt m);

struct Multiplicity {
    HalfInt j;
    std::uint64_t p = 0;  // number of copies
    std::uint64_t q = 0;  // 2j + 1
};

/// p_j = dim V_j - dim V_{j+1} over j in {ns, ns-1, ...} >= 0; listed by ascending j.
std::vector<Multiplicity> predicted_multiplicities(int n, int d);

/// Orthonormal family v[mu][m] spanning the p copies of spin j.
/// coords[k] holds the vectors with m = -j + k as columns (one per mu), written in
/// the coordinates of weight space V_m.
struct IrrepBlock {
    HalfInt j;
    Eigen::Index p = 0;
    Eigen::Index q = 0;
    std::vector<ComplexMatrix> coords;
};

struct StructureDecomposition {
    const CollectiveSystem* system = nullptr;
    Tolerances tol;
    std::vector<WeightSpace> weights;
    std::vector<IrrepBlock> blocks;  // ascending j
    int reorthonormalized_groups = 0;

    const WeightSpace& weight_space(HalfInt m) const;

    /// Full-length vector |j, m, mu> for block b, copy mu (0-based), m = -j + k.
    ComplexVector vector(std::size_t b, Eigen::Index mu, Eigen::Index k) const;

    /// Column of |j,m,mu> in U: blocks by ascending j, then mu, then m.
    Eigen::Index column(std::size_t b, Eigen::Index mu, Eigen::Index k) const;

    SparseOperator unitary() const;
    ComplexMatrix dense_unitary() const;

    /// Index into `blocks` for spin j, or throws UnknownBlock.
    std::size_t block_index(HalfInt j) const;
};

/// Throws RankMismatch when a complement size disagrees with the predicted p_{-m},
/// LiftCollapse when J_+ annihilates a vector below the top of its block.
StructureDecomposition construct_irrep_basis(const CollectiveSystem& sys, const Tolerances& tol = {});

struct CentralProjection {
    HalfInt j;
    SparseOperator projection;
};

/// P_j = sum_{mu,m} |j,m,mu><j,m,mu|, ascending j.
std::vector<CentralProjection> central_projections(const StructureDecomposition& decomp);

/// Spectral projection of the dense J^2 for eigenvalue j(j+1), for cross-checking P_j.
ComplexMatrix casimir_spectral_projection(const CollectiveSystem& sys, HalfInt j, double tol = 1e-6);

struct BlockConjugation {
    std::vector<ComplexMatrix> blocks;  // (p q) x (p q) per j, ascending j
    double residual = 0.0;              // |off-block-diagonal part of U^dagger A U|_F
    double linked_deviation = 0.0;      // max |B_{mu mu'} - delta_{mu mu'} B_{11}|_F
};

BlockConjugation conjugate_to_blocks(const StructureDecomposition& decomp, const ComplexMatrix& a);

struct StructureRow {
    HalfInt j;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t pq() const { return p * q; }
    std::uint64_t p_sq() const { return p * p; }
};

struct WeightRow {
    HalfInt m;
    std::uint64_t dim = 0;
};

struct StructureReport {
    int n = 1;
    int d = 2;
    std::vector<StructureRow> rows;        // ascending j
    std::vector<WeightRow> weight_dims;    // ascending m
    std::uint64_t total_dim = 0;           // sum p q = d^n
    std::uint64_t commutant_dim = 0;       // sum p^2
    std::uint64_t algebra_dim = 0;         // sum q^2
};

/// Purely combinatorial report.
StructureReport structure_report(int n, int d);

/// Report read off a constructed decomposition (block census instead of prediction).
StructureReport structure_report(const StructureDecomposition& decomp);

}  // namespace crc
