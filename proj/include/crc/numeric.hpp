// numeric.hpp: complex linear-algebra substrate (dense + sparse)
//
// Conventions used throughout crc:
//   * tensor products use the (a_kl B)_kl ordering, so factor 1 is the most
//     significant index;
//   * rank decisions compare singular values against rank_tol * sigma_max;
//   * every orthonormal vector produced here has its first nonzero coordinate
//     real and positive.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <functional>

namespace crc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using SparseOperator = Eigen::SparseMatrix<Complex>;

struct Tolerances {
    double rank_tol = 1e-10;
    double verify_tol = 1e-9;
    double drop_tol = 0.0;

    /// Throws Error(BadDimension) when a tolerance is negative or rank_tol >= 1.
    void validate() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
SparseOperator kron(const SparseOperator& a, const SparseOperator& b);

ComplexMatrix dagger(const ComplexMatrix& a);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(i theta H) for Hermitian H, through H = V diag(lambda) V^dagger.
ComplexMatrix herm_expm(const ComplexMatrix& h, double theta, const Tolerances& tol = {});

/// Orthonormal columns spanning {v : |Mv| <= rank_tol |M|}. May have zero columns.
ComplexMatrix null_space(const ComplexMatrix& m, const Tolerances& tol = {});

/// Kernel of a map M known through its Gram operator M^dagger M and a routine applying M to columns.
/// Eigenvectors of the Gram operator below sqrt(rank_tol) * lambda_max are candidates; the kernel is
/// cut from them by the singular values of M on the candidates, using rank_tol * sigma_max(M).
ComplexMatrix null_space_gram(const ComplexMatrix& gram,
                              const std::function<ComplexMatrix(const ComplexMatrix&)>& apply_map,
                              const Tolerances& tol = {});

/// Orthonormal basis (as columns) of span(ambient) minus span(vectors).
/// `ambient` must have orthonormal columns.
ComplexMatrix orthocomplement_basis(const ComplexMatrix& vectors, const ComplexMatrix& ambient,
                                    const Tolerances& tol = {});

/// Same as orthocomplement_basis with the standard basis of C^rows as ambient.
ComplexMatrix orthocomplement_basis(const ComplexMatrix& vectors, const Tolerances& tol = {});

/// Number of singular values above rank_tol * sigma_max.
Eigen::Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {});

double frobenius_dist(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rescales v by a unit phase so its first coordinate with |x| > rel * max|x| is real positive.
void fix_phase(Eigen::Ref<ComplexVector> v, double rel = 1e-10);

/// Applies fix_phase to every column.
void fix_phases(ComplexMatrix& columns, double rel = 1e-10);

SparseOperator to_sparse(const ComplexMatrix& a, double drop_tol = 0.0);
ComplexMatrix to_dense(const SparseOperator& a);

/// Column-stacking vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows);

bool all_finite(const ComplexMatrix& a);

}  // namespace crc
