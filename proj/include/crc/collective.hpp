// collective.hpp: collective su(2) generators on n qudits
//
// Basis state |i_1 ... i_n> (i_k in {-s..s}) has index sum_k (i_k + s) d^(n-k),
// so site 1 is the most significant digit.

#pragma once

#include "crc/half_integer.hpp"
#include "crc/numeric.hpp"
#include "crc/spin_rep.hpp"

#include <cstddef>
#include <vector>

namespace crc {

/// Default dimension ceilings: structure construction vs. dim^2-sized oracles.
inline constexpr std::size_t kStructureBudgetDim = 4096;
inline constexpr std::size_t kSuperoperatorBudgetDim = 64;
inline constexpr std::size_t kCommutantBudgetDim = 128;

struct CollectiveSystem {
    int n = 1;
    int d = 2;
    Eigen::Index dim = 2;
    SpinRep rep;
    HalfInt ns;  // n * s, the top weight

    SparseOperator jx;
    SparseOperator jy;
    SparseOperator jz;
    SparseOperator jplus;
    SparseOperator jminus;
    SparseOperator jsq;

    /// Twice the J_z weight of every computational basis index.
    std::vector<int> weight_twice;
};

struct BasisLabel {
    std::vector<HalfInt> occupancies;
};

/// d^n, or throws DimensionBudgetExceeded when it exceeds budget_dim.
Eigen::Index checked_dimension(int n, int d, std::size_t budget_dim);

/// Throws BadDimension for n < 1 or d < 2, DimensionBudgetExceeded past the budget.
CollectiveSystem build_collective_system(int n, int d, std::size_t budget_dim = kStructureBudgetDim);

HalfInt weight_of(const BasisLabel& label);

Eigen::Index index_of(const BasisLabel& label, int d);
BasisLabel label_of(Eigen::Index index, int n, int d);

/// Throws ShapeMismatch when op.cols() != v.size().
ComplexVector apply_sparse(const SparseOperator& op, const ComplexVector& v);

/// Computational basis vector |index>.
ComplexVector basis_vector(Eigen::Index dim, Eigen::Index index);

/// Dense J_x^2 + J_y^2 + J_z^2, for cross-checking the sparse J^2.
ComplexMatrix dense_casimir(const CollectiveSystem& sys);

/// Embeds a single-site d x d operator into slot `site` (0-based) of n sites.
SparseOperator embed_site(const ComplexMatrix& op, int site, int n);

}  // namespace crc
