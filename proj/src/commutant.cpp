#include "crc/commutant.hpp"

#include "crc/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace crc {

namespace {

void check_generators(const std::vector<ComplexMatrix>& generators, std::size_t budget_dim) {
    if (generators.empty()) throw Error(ErrorCode::ShapeMismatch, "need at least one generator");
    const Eigen::Index dim = generators.front().rows();
    for (const ComplexMatrix& g : generators) {
        if (g.rows() != dim || g.cols() != dim) throw Error(ErrorCode::ShapeMismatch, "generators differ in shape");
    }
    if (static_cast<std::size_t>(dim) > budget_dim) {
        throw Error(ErrorCode::DimensionBudgetExceeded,
                    "oracle needs dim <= " + std::to_string(budget_dim) + ", have " + std::to_string(dim));
    }
}

// Columns: vec of each matrix.
ComplexMatrix stack_vecs(const std::vector<ComplexMatrix>& mats) {
    if (mats.empty()) return ComplexMatrix(0, 0);
    ComplexMatrix out(mats.front().size(), static_cast<Eigen::Index>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vec(mats[k]);
    return out;
}

// Orthonormal basis of the column span.
ComplexMatrix span_basis(const ComplexMatrix& cols, const Tolerances& tol) {
    if (cols.cols() == 0) return ComplexMatrix(cols.rows(), 0);
    Eigen::BDCSVD<ComplexMatrix> svd(cols, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index r = 0;
    if (s(0) > 0.0) {
        while (r < s.size() && s(r) > tol.rank_tol * s(0)) ++r;
    }
    return svd.matrixU().leftCols(r);
}

}  // namespace

std::vector<ComplexMatrix> collective_generators(const CollectiveSystem& sys) {
    return {to_dense(sys.jx), to_dense(sys.jy), to_dense(sys.jz)};
}

CommutantBasis brute_force_commutant(const std::vector<ComplexMatrix>& generators, const Tolerances& tol,
                                     std::size_t budget_dim, std::string label) {
    check_generators(generators, budget_dim);
    const Eigen::Index dim = generators.front().rows();
    const Eigen::Index c = dim * dim;
    const auto k_gens = static_cast<Eigen::Index>(generators.size());

    // vec([X, G]) = L vec(X) with L = G^T (x) I - I (x) G. Summed over generators,
    // L^dagger L = A (x) I + I (x) B - (M + M^dagger) with A = conj(G) G^T, B = G^dagger G
    // and M = conj(G) (x) G.
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim), b = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix gram = ComplexMatrix::Zero(c, c);
    for (const ComplexMatrix& g : generators) {
        a.noalias() += g.conjugate() * g.transpose();
        b.noalias() += g.adjoint() * g;
        for (Eigen::Index k = 0; k < dim; ++k) {
            for (Eigen::Index l = 0; l < dim; ++l) {
                gram.block(k * dim, l * dim, dim, dim) += std::conj(g(k, l)) * g;
            }
        }
    }
    for (Eigen::Index i = 0; i < c; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const Complex m = gram(i, j) + std::conj(gram(j, i));
            gram(i, j) = -m;
            gram(j, i) = -std::conj(m);
        }
        gram(i, i) = -2.0 * gram(i, i).real();
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
        for (Eigen::Index l = 0; l < dim; ++l) {
            for (Eigen::Index p = 0; p < dim; ++p) {
                gram(k * dim + p, l * dim + p) += a(k, l);
                gram(k * dim + l, k * dim + p) += b(l, p);
            }
        }
    }

    auto apply_map = [&](const ComplexMatrix& cols) {
        ComplexMatrix image(k_gens * c, cols.cols());
        for (Eigen::Index j = 0; j < cols.cols(); ++j) {
            const ComplexMatrix x = unvec(cols.col(j), dim);
            for (Eigen::Index k = 0; k < k_gens; ++k) {
                const ComplexMatrix& g = generators[static_cast<std::size_t>(k)];
                image.col(j).segment(k * c, c) = vec(x * g - g * x);
            }
        }
        return image;
    };
    const ComplexMatrix kernel = null_space_gram(gram, apply_map, tol);

    CommutantBasis out;
    out.generator_set = std::move(label);
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) out.elements.push_back(unvec(kernel.col(k), dim));
    return out;
}

AlgebraDimension algebra_dimension(const std::vector<ComplexMatrix>& generators, const Tolerances& tol,
                                   int max_degree, std::size_t budget_dim) {
    check_generators(generators, budget_dim);
    const Eigen::Index dim = generators.front().rows();
    if (max_degree <= 0) max_degree = static_cast<int>(2 * dim);

    std::vector<ComplexVector> basis;
    auto try_add = [&](const ComplexMatrix& m) -> const ComplexVector* {
        ComplexVector v = vec(m);
        const double norm = v.norm();
        if (norm == 0.0) return nullptr;
        for (int pass = 0; pass < 2; ++pass) {
            for (const ComplexVector& b : basis) v -= b.dot(v) * b;
        }
        if (v.norm() <= tol.rank_tol * norm) return nullptr;
        basis.push_back(v / v.norm());
        return &basis.back();
    };

    AlgebraDimension out;
    std::vector<ComplexMatrix> frontier;
    if (try_add(ComplexMatrix::Identity(dim, dim))) frontier.push_back(ComplexMatrix::Identity(dim, dim));

    int quiet = 0;
    for (int degree = 1; degree <= max_degree; ++degree) {
        out.degree = degree;
        std::vector<ComplexMatrix> next;
        for (const ComplexMatrix& f : frontier) {
            for (const ComplexMatrix& g : generators) {
                if (const ComplexVector* added = try_add(f * g)) next.push_back(unvec(*added, dim));
            }
        }
        quiet = next.empty() ? quiet + 1 : 0;
        if (quiet == 2) {
            out.stabilized = true;
            break;
        }
        if (!next.empty()) frontier = std::move(next);
        else frontier.clear();
        if (static_cast<Eigen::Index>(basis.size()) == dim * dim) {
            out.stabilized = true;
            break;
        }
    }
    out.dimension = static_cast<Eigen::Index>(basis.size());
    return out;
}

SpanComparison span_equal(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
                          const Tolerances& tol) {
    Eigen::Index size = -1;
    for (const auto* list : {&a, &b}) {
        for (const ComplexMatrix& m : *list) {
            if (size < 0) size = m.size();
            if (m.size() != size) throw Error(ErrorCode::ShapeMismatch, "span_equal inputs differ in shape");
        }
    }
    if (!a.empty() && !b.empty() && a.front().rows() != b.front().rows()) {
        throw Error(ErrorCode::ShapeMismatch, "span_equal inputs differ in shape");
    }
    const ComplexMatrix qa = span_basis(stack_vecs(a), tol);
    const ComplexMatrix qb = span_basis(stack_vecs(b), tol);

    SpanComparison out;
    out.rank_a = qa.cols();
    out.rank_b = qb.cols();
    // |Pa - Pb|_F^2 = |(I - Pb) Qa|_F^2 + |(I - Pa) Qb|_F^2, written with residuals
    // rather than rank_a + rank_b - 2 |Qa^dagger Qb|^2, which cancels catastrophically.
    auto outside = [](const ComplexMatrix& q, const ComplexMatrix& other) {
        if (q.cols() == 0) return 0.0;
        if (other.cols() == 0) return q.squaredNorm();
        return (q - other * (other.adjoint() * q)).squaredNorm();
    };
    out.gap = std::sqrt(outside(qa, qb) + outside(qb, qa));
    const double rank = static_cast<double>(std::max<Eigen::Index>({out.rank_a, out.rank_b, 1}));
    out.equal = out.gap <= tol.verify_tol * std::sqrt(rank);
    return out;
}

CommutantBasis structural_commutant_basis(const StructureDecomposition& decomp) {
    CommutantBasis out;
    out.generator_set = "structural";
    const Eigen::Index dim = decomp.system->dim;
    for (std::size_t b = 0; b < decomp.blocks.size(); ++b) {
        const IrrepBlock& block = decomp.blocks[b];
        const double scale = 1.0 / std::sqrt(static_cast<double>(block.q));
        for (Eigen::Index mu = 0; mu < block.p; ++mu) {
            for (Eigen::Index nu = 0; nu < block.p; ++nu) {
                ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
                for (Eigen::Index k = 0; k < block.q; ++k) {
                    e.noalias() += decomp.vector(b, mu, k) * decomp.vector(b, nu, k).adjoint();
                }
                out.elements.push_back(scale * e);
            }
        }
    }
    return out;
}

double max_commutator_residual(const std::vector<ComplexMatrix>& elements,
                               const std::vector<ComplexMatrix>& generators) {
    double worst = 0.0;
    for (const ComplexMatrix& f : elements) {
        for (const ComplexMatrix& g : generators) {
            const double scale = f.norm() * g.norm();
            if (scale == 0.0) continue;
            worst = std::max(worst, commutator(f, g).norm() / scale);
        }
    }
    return worst;
}

double adjoint_closure_gap(const std::vector<ComplexMatrix>& elements, const Tolerances& tol) {
    const ComplexMatrix q = span_basis(stack_vecs(elements), tol);
    double worst = 0.0;
    for (const ComplexMatrix& f : elements) {
        const ComplexVector v = vec(f.adjoint());
        const ComplexVector resid = v - q * (q.adjoint() * v);
        worst = std::max(worst, resid.norm() / std::max(v.norm(), 1e-300));
    }
    return worst;
}

}  // namespace crc
