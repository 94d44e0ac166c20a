#include "crc/collective.hpp"

#include "crc/error.hpp"

namespace crc {

namespace {

SparseOperator sparse_identity(Eigen::Index dim) {
    SparseOperator id(dim, dim);
    id.setIdentity();
    return id;
}

Eigen::Index int_pow(int base, int exp) {
    Eigen::Index out = 1;
    for (int k = 0; k < exp; ++k) out *= base;
    return out;
}

}  // namespace

Eigen::Index checked_dimension(int n, int d, std::size_t budget_dim) {
    if (n < 1) throw Error(ErrorCode::BadDimension, "need n >= 1, got " + std::to_string(n));
    if (d < 2) throw Error(ErrorCode::BadDimension, "need d >= 2, got " + std::to_string(d));
    std::size_t dim = 1;
    for (int k = 0; k < n; ++k) {
        dim *= static_cast<std::size_t>(d);
        if (dim > budget_dim) {
            throw Error(ErrorCode::DimensionBudgetExceeded,
                        std::to_string(d) + "^" + std::to_string(n) + " exceeds budget " +
                            std::to_string(budget_dim));
        }
    }
    return static_cast<Eigen::Index>(dim);
}

SparseOperator embed_site(const ComplexMatrix& op, int site, int n) {
    const auto d = static_cast<int>(op.rows());
    const SparseOperator left = sparse_identity(int_pow(d, site));
    const SparseOperator right = sparse_identity(int_pow(d, n - site - 1));
    return kron(kron(left, to_sparse(op)), right);
}

CollectiveSystem build_collective_system(int n, int d, std::size_t budget_dim) {
    CollectiveSystem sys;
    sys.dim = checked_dimension(n, d, budget_dim);
    sys.n = n;
    sys.d = d;
    sys.rep = make_spin_rep(d);
    sys.ns = HalfInt::from_twice(n * (d - 1));

    sys.jx = SparseOperator(sys.dim, sys.dim);
    sys.jy = SparseOperator(sys.dim, sys.dim);
    sys.jz = SparseOperator(sys.dim, sys.dim);
    for (int k = 0; k < n; ++k) {
        sys.jx += embed_site(sys.rep.sigma_x, k, n);
        sys.jy += embed_site(sys.rep.sigma_y, k, n);
        sys.jz += embed_site(sys.rep.sigma_z, k, n);
    }
    sys.jplus = SparseOperator(sys.dim, sys.dim);
    for (int k = 0; k < n; ++k) sys.jplus += embed_site(sys.rep.sigma_plus, k, n);
    sys.jminus = sys.jplus.adjoint();

    // J^2 = J_- J_+ + J_z^2 + J_z (checked against the dense definition in tests).
    SparseOperator jminus_jplus = sys.jminus * sys.jplus;
    SparseOperator jz_sq = sys.jz * sys.jz;
    sys.jsq = jminus_jplus + jz_sq + sys.jz;
    sys.jsq.prune(Complex(0.0, 0.0));

    sys.weight_twice.resize(static_cast<std::size_t>(sys.dim));
    for (Eigen::Index idx = 0; idx < sys.dim; ++idx) {
        Eigen::Index rest = idx;
        int w = 0;
        for (int k = 0; k < n; ++k) {
            w += 2 * static_cast<int>(rest % d) - (d - 1);
            rest /= d;
        }
        sys.weight_twice[static_cast<std::size_t>(idx)] = w;
    }
    return sys;
}

HalfInt weight_of(const BasisLabel& label) {
    HalfInt m;
    for (const HalfInt& i : label.occupancies) m += i;
    return m;
}

Eigen::Index index_of(const BasisLabel& label, int d) {
    Eigen::Index idx = 0;
    for (const HalfInt& i : label.occupancies) {
        const int digit2 = i.twice() + (d - 1);
        if (digit2 < 0 || digit2 > 2 * (d - 1) || digit2 % 2 != 0) {
            throw Error(ErrorCode::OutOfRange, "occupancy " + i.to_string() + " invalid for d=" + std::to_string(d));
        }
        idx = idx * d + digit2 / 2;
    }
    return idx;
}

BasisLabel label_of(Eigen::Index index, int n, int d) {
    BasisLabel label;
    label.occupancies.resize(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        const int digit = static_cast<int>(index % d);
        index /= d;
        label.occupancies[static_cast<std::size_t>(k)] = HalfInt::from_twice(2 * digit - (d - 1));
    }
    if (index != 0) throw Error(ErrorCode::OutOfRange, "index exceeds d^n");
    return label;
}

ComplexVector apply_sparse(const SparseOperator& op, const ComplexVector& v) {
    if (op.cols() != v.size()) {
        throw Error(ErrorCode::ShapeMismatch, "operator has " + std::to_string(op.cols()) +
                                                  " columns, vector has " + std::to_string(v.size()));
    }
    return op * v;
}

ComplexVector basis_vector(Eigen::Index dim, Eigen::Index index) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

ComplexMatrix dense_casimir(const CollectiveSystem& sys) {
    const ComplexMatrix jx = to_dense(sys.jx);
    const ComplexMatrix jy = to_dense(sys.jy);
    const ComplexMatrix jz = to_dense(sys.jz);
    return jx * jx + jy * jy + jz * jz;
}

}  // namespace crc
