#include "crc/channel.hpp"

#include "crc/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crc {

Angles default_angles(const CollectiveSystem& sys) {
    const double base = std::numbers::pi / (sys.ns.twice() + 1);
    return {0.9 * base, 1.0 * base, 1.1 * base};
}

void check_angles(const CollectiveSystem& sys, const Angles& thetas) {
    const double span = sys.ns.twice();  // 2 ns
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const double t = thetas[k];
        if (!std::isfinite(t) || t == 0.0 || std::abs(t) * span >= 2.0 * std::numbers::pi) {
            std::ostringstream msg;
            msg << "theta[" << k << "] = " << t << " must be nonzero with |theta| * 2ns < 2 pi";
            throw Error(ErrorCode::DegenerateAngle, msg.str());
        }
    }
}

RotationChannel build_channel(const CollectiveSystem& sys, std::optional<Angles> thetas, const Tolerances& tol) {
    RotationChannel ch;
    ch.system = &sys;
    ch.thetas = thetas.value_or(default_angles(sys));
    check_angles(sys, ch.thetas);

    const double scale = 1.0 / std::sqrt(3.0);
    const std::array<const SparseOperator*, 3> gens{&sys.jx, &sys.jy, &sys.jz};
    for (std::size_t k = 0; k < 3; ++k) {
        ch.kraus[k] = scale * herm_expm(to_dense(*gens[k]), ch.thetas[k], tol);
    }
    return ch;
}

ComplexMatrix apply(const RotationChannel& channel, const ComplexMatrix& t) {
    const Eigen::Index dim = channel.system->dim;
    if (t.rows() != dim || t.cols() != dim) {
        throw Error(ErrorCode::ShapeMismatch, "operand must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const ComplexMatrix& e : channel.kraus) out.noalias() += e * t * e.adjoint();
    return out;
}

ComplexMatrix superoperator(const RotationChannel& channel, std::size_t budget_dim) {
    const Eigen::Index dim = channel.system->dim;
    if (static_cast<std::size_t>(dim) > budget_dim) {
        throw Error(ErrorCode::DimensionBudgetExceeded,
                    "superoperator needs dim <= " + std::to_string(budget_dim) + ", have " + std::to_string(dim));
    }
    ComplexMatrix s = ComplexMatrix::Zero(dim * dim, dim * dim);
    for (const ComplexMatrix& e : channel.kraus) s += kron(e.conjugate(), e);
    return s;
}

std::vector<ComplexMatrix> fixed_point_basis(const RotationChannel& channel, const Tolerances& tol,
                                             std::size_t budget_dim) {
    const Eigen::Index dim = channel.system->dim;
    // (S - I)^dagger (S - I) = S^dagger S - S - S^dagger + I, and S^dagger S is a sum of
    // kron(E_k^T conj(E_l), E_k^dagger E_l).
    ComplexMatrix gram = superoperator(channel, budget_dim);
    gram = -(gram + gram.adjoint()).eval();
    gram += ComplexMatrix::Identity(gram.rows(), gram.cols());
    for (const ComplexMatrix& ek : channel.kraus) {
        for (const ComplexMatrix& el : channel.kraus) {
            gram += kron(ek.transpose() * el.conjugate(), ek.adjoint() * el);
        }
    }
    auto apply_map = [&](const ComplexMatrix& cols) {
        ComplexMatrix image(cols.rows(), cols.cols());
        for (Eigen::Index j = 0; j < cols.cols(); ++j) {
            const ComplexMatrix x = unvec(cols.col(j), dim);
            image.col(j) = vec(crc::apply(channel, x) - x);
        }
        return image;
    };
    const ComplexMatrix kernel = null_space_gram(gram, apply_map, tol);
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(kernel.cols()));
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) out.push_back(unvec(kernel.col(k), dim));
    return out;
}

KrausResiduals kraus_residuals(const RotationChannel& channel) {
    const Eigen::Index dim = channel.system->dim;
    ComplexMatrix tp = -ComplexMatrix::Identity(dim, dim);
    ComplexMatrix un = -ComplexMatrix::Identity(dim, dim);
    for (const ComplexMatrix& e : channel.kraus) {
        tp.noalias() += e.adjoint() * e;
        un.noalias() += e * e.adjoint();
    }
    return {tp.norm(), un.norm()};
}

}  // namespace crc
