#include "crc/numeric.hpp"

#include "crc/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace crc {

void Tolerances::validate() const {
    if (!(rank_tol >= 0.0) || !(verify_tol >= 0.0) || !(drop_tol >= 0.0)) {
        throw Error(ErrorCode::BadDimension, "tolerances must be nonnegative");
    }
    if (!(rank_tol < 1.0)) {
        throw Error(ErrorCode::BadDimension, "rank_tol must be < 1");
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        for (Eigen::Index l = 0; l < a.cols(); ++l) {
            out.block(k * b.rows(), l * b.cols(), b.rows(), b.cols()) = a(k, l) * b;
        }
    }
    return out;
}

SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseOperator::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseOperator::InnerIterator ib(b, kb); ib; ++ib) {
                    trips.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                                       static_cast<int>(ia.col() * b.cols() + ib.col()),
                                       ia.value() * ib.value());
                }
            }
        }
    }
    SparseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "commutator needs equal square matrices");
    }
    return a * b - b * a;
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double theta, const Tolerances& tol) {
    if (h.rows() != h.cols()) throw Error(ErrorCode::ShapeMismatch, "herm_expm needs a square matrix");
    const double asym = (h - h.adjoint()).norm();
    if (asym > tol.verify_tol * h.norm()) {
        throw Error(ErrorCode::NotHermitian, "|H - H^dagger|_F = " + std::to_string(asym));
    }
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    ComplexVector phases(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        phases(i) = std::polar(1.0, theta * lambda(i));
    }
    const ComplexMatrix& v = eig.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

namespace {

// Right singular data of m: singular values (descending) and a full set of
// right singular vectors. Tall inputs are reduced by QR first.
struct RightSvd {
    Eigen::VectorXd sigma;
    ComplexMatrix v;
};

RightSvd right_svd(const ComplexMatrix& m) {
    if (m.rows() > m.cols()) {
        Eigen::HouseholderQR<ComplexMatrix> qr(m);
        const ComplexMatrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
        Eigen::BDCSVD<ComplexMatrix> svd(r, Eigen::ComputeFullV);
        return {svd.singularValues(), svd.matrixV()};
    }
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixV()};
}

Eigen::Index rank_of(const Eigen::VectorXd& sigma, double rank_tol) {
    if (sigma.size() == 0) return 0;
    const double smax = sigma(0);
    if (smax <= 0.0) return 0;
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > rank_tol * smax) ++r;
    return r;
}

}  // namespace

Eigen::Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol) {
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    return rank_of(svd.singularValues(), tol.rank_tol);
}

ComplexMatrix null_space(const ComplexMatrix& m, const Tolerances& tol) {
    if (m.cols() == 0) return ComplexMatrix(0, 0);
    if (m.rows() == 0) {
        return ComplexMatrix::Identity(m.cols(), m.cols());
    }
    const RightSvd svd = right_svd(m);
    const Eigen::Index r = rank_of(svd.sigma, tol.rank_tol);
    ComplexMatrix basis = svd.v.rightCols(m.cols() - r);
    fix_phases(basis, tol.rank_tol);
    return basis;
}

ComplexMatrix null_space_gram(const ComplexMatrix& gram,
                              const std::function<ComplexMatrix(const ComplexMatrix&)>& apply_map,
                              const Tolerances& tol) {
    const Eigen::Index c = gram.rows();
    if (gram.cols() != c) throw Error(ErrorCode::ShapeMismatch, "Gram operator must be square");
    if (c == 0) return ComplexMatrix(0, 0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double lmax = std::max(lambda(c - 1), 0.0);
    if (lmax == 0.0) {
        ComplexMatrix all = ComplexMatrix::Identity(c, c);
        fix_phases(all, tol.rank_tol);
        return all;
    }
    // Eigenvalues square the singular values, so this cut is far looser than the final one.
    Eigen::Index k = 0;
    while (k < c && lambda(k) <= std::sqrt(tol.rank_tol) * lmax) ++k;
    if (k == 0) return ComplexMatrix(c, 0);
    const ComplexMatrix candidates = eig.eigenvectors().leftCols(k);

    const RightSvd svd = right_svd(apply_map(candidates));
    const double cut = tol.rank_tol * std::sqrt(lmax);
    Eigen::Index r = 0;
    while (r < svd.sigma.size() && svd.sigma(r) > cut) ++r;
    ComplexMatrix basis = candidates * svd.v.rightCols(k - r);
    fix_phases(basis, tol.rank_tol);
    return basis;
}

namespace {

ComplexMatrix complement_coordinates(const ComplexMatrix& coords, const Tolerances& tol) {
    const Eigen::Index a = coords.rows();
    if (coords.cols() == 0) return ComplexMatrix::Identity(a, a);
    Eigen::BDCSVD<ComplexMatrix> svd(coords, Eigen::ComputeFullU);
    const Eigen::Index r = rank_of(svd.singularValues(), tol.rank_tol);
    return svd.matrixU().rightCols(a - r);
}

}  // namespace

ComplexMatrix orthocomplement_basis(const ComplexMatrix& vectors, const ComplexMatrix& ambient,
                                    const Tolerances& tol) {
    if (vectors.cols() > 0 && vectors.rows() != ambient.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "vectors and ambient live in different spaces");
    }
    const ComplexMatrix coords = ambient.adjoint() * vectors;
    for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
        const double norm = vectors.col(k).norm();
        const double outside = (vectors.col(k) - ambient * coords.col(k)).norm();
        if (outside > tol.rank_tol * std::max(norm, 1.0)) {
            throw Error(ErrorCode::InconsistentSpan,
                        "vector " + std::to_string(k) + " leaves the ambient span by " +
                            std::to_string(outside));
        }
    }
    ComplexMatrix out = ambient * complement_coordinates(coords, tol);
    fix_phases(out, tol.rank_tol);
    return out;
}

ComplexMatrix orthocomplement_basis(const ComplexMatrix& vectors, const Tolerances& tol) {
    ComplexMatrix out = complement_coordinates(vectors, tol);
    fix_phases(out, tol.rank_tol);
    return out;
}

double frobenius_dist(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "frobenius_dist shapes differ");
    }
    return (a - b).norm();
}

void fix_phase(Eigen::Ref<ComplexVector> v, double rel) {
    const double biggest = v.cwiseAbs().maxCoeff();
    if (biggest == 0.0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > rel * biggest) {
            v *= std::conj(v(i)) / mag;
            v(i) = mag;
            return;
        }
    }
}

void fix_phases(ComplexMatrix& columns, double rel) {
    for (Eigen::Index k = 0; k < columns.cols(); ++k) fix_phase(columns.col(k), rel);
}

SparseOperator to_sparse(const ComplexMatrix& a, double drop_tol) {
    std::vector<Eigen::Triplet<Complex>> trips;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (std::abs(a(r, c)) > drop_tol) {
                trips.emplace_back(static_cast<int>(r), static_cast<int>(c), a(r, c));
            }
        }
    }
    SparseOperator out(a.rows(), a.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

ComplexMatrix to_dense(const SparseOperator& a) { return ComplexMatrix(a); }

ComplexVector vec(const ComplexMatrix& a) {
    return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows) {
    if (rows <= 0 || v.size() % rows != 0) {
        throw Error(ErrorCode::ShapeMismatch, "unvec: length not divisible by rows");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, v.size() / rows);
}

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

}  // namespace crc
