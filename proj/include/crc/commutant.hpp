// commutant.hpp: brute-force commutant and algebra-dimension oracles
//
// These routines know nothing about weights or irreps: they solve the linear
// system [X, G] = 0 on vectorized X directly, so they can check the structure
// engine independently.

#pragma once

#include "crc/collective.hpp"
#include "crc/numeric.hpp"
#include "crc/structure.hpp"

#include <string>
#include <vector>

namespace crc {

struct CommutantBasis {
    std::vector<ComplexMatrix> elements;  // Frobenius-orthonormal
    std::string generator_set;
};

/// Joint null space of X -> [X, G_k]. Throws DimensionBudgetExceeded above budget_dim.
CommutantBasis brute_force_commutant(const std::vector<ComplexMatrix>& generators, const Tolerances& tol = {},
                                     std::size_t budget_dim = kCommutantBudgetDim, std::string label = {});

struct AlgebraDimension {
    Eigen::Index dimension = 0;
    bool stabilized = false;  // false: `dimension` is only a lower bound
    int degree = 0;           // highest monomial degree examined
};

/// dim span{I, monomials in the generators of degree <= max_degree}; max_degree <= 0 means 2 * dim.
AlgebraDimension algebra_dimension(const std::vector<ComplexMatrix>& generators, const Tolerances& tol = {},
                                   int max_degree = 0, std::size_t budget_dim = kCommutantBudgetDim);

struct SpanComparison {
    bool equal = false;
    double gap = 0.0;  // |Pi_A - Pi_B|_F in the Frobenius geometry
    Eigen::Index rank_a = 0;
    Eigen::Index rank_b = 0;
};

SpanComparison span_equal(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
                          const Tolerances& tol = {});

/// Matrix units of each M_{p_j}, ampliated over m: sum_m |j,m,mu><j,m,mu'| / sqrt(q_j).
CommutantBasis structural_commutant_basis(const StructureDecomposition& decomp);

/// max_k |[F, G_k]|_F / (|G_k|_F |F|_F) over the elements.
double max_commutator_residual(const std::vector<ComplexMatrix>& elements,
                               const std::vector<ComplexMatrix>& generators);

/// max over elements F of the distance from F^dagger to span(elements).
double adjoint_closure_gap(const std::vector<ComplexMatrix>& elements, const Tolerances& tol = {});

/// Dense J_x, J_y, J_z.
std::vector<ComplexMatrix> collective_generators(const CollectiveSystem& sys);

}  // namespace crc
