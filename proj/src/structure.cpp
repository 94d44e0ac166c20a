#include "crc/structure.hpp"

#include "crc/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>

namespace crc {

std::vector<WeightSpace> weight_decomposition(int n, int d, std::size_t budget_dim) {
    const Eigen::Index dim = checked_dimension(n, d, budget_dim);
    const int ns2 = n * (d - 1);
    std::vector<WeightSpace> spaces(static_cast<std::size_t>(ns2 + 1));
    for (int k = 0; k <= ns2; ++k) spaces[static_cast<std::size_t>(k)].m = HalfInt::from_twice(2 * k - ns2);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Eigen::Index rest = idx;
        int digits = 0;
        for (int k = 0; k < n; ++k) {
            digits += static_cast<int>(rest % d);
            rest /= d;
        }
        spaces[static_cast<std::size_t>(digits)].indices.push_back(idx);
    }
    return spaces;
}

std::uint64_t weight_dim(int n, int d, HalfInt m) {
    if (n < 1 || d < 2) throw Error(ErrorCode::BadDimension, "need n >= 1 and d >= 2");
    const int ns2 = n * (d - 1);
    const int shifted = m.twice() + ns2;  // twice the digit sum
    if (shifted < 0 || shifted > 2 * ns2 || shifted % 2 != 0) {
        throw Error(ErrorCode::OutOfRange, "weight " + m.to_string() + " outside {-ns..ns}");
    }
    const int target = shifted / 2;
    // counts[t] = number of digit tuples over the sites seen so far with sum t.
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(target + 1), 0);
    counts[0] = 1;
    for (int site = 0; site < n; ++site) {
        std::vector<std::uint64_t> next(counts.size(), 0);
        for (int t = 0; t <= target; ++t) {
            if (counts[static_cast<std::size_t>(t)] == 0) continue;
            for (int digit = 0; digit < d && t + digit <= target; ++digit) {
                next[static_cast<std::size_t>(t + digit)] += counts[static_cast<std::size_t>(t)];
            }
        }
        counts = std::move(next);
    }
    return counts[static_cast<std::size_t>(target)];
}

std::vector<Multiplicity> predicted_multiplicities(int n, int d) {
    if (n < 1 || d < 2) throw Error(ErrorCode::BadDimension, "need n >= 1 and d >= 2");
    const int ns2 = n * (d - 1);
    std::vector<Multiplicity> out;
    std::uint64_t above = 0;  // dim V_{j+1}
    for (int j2 = ns2; j2 >= 0; j2 -= 2) {
        const std::uint64_t here = weight_dim(n, d, HalfInt::from_twice(j2));
        const std::uint64_t p = here - above;
        if (p > 0) out.push_back({HalfInt::from_twice(j2), p, static_cast<std::uint64_t>(j2 + 1)});
        above = here;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

const WeightSpace& StructureDecomposition::weight_space(HalfInt m) const {
    const int ns2 = system->ns.twice();
    const int k = (m.twice() + ns2) / 2;
    if (m.twice() < -ns2 || m.twice() > ns2 || (m.twice() + ns2) % 2 != 0) {
        throw Error(ErrorCode::OutOfRange, "no weight space for m = " + m.to_string());
    }
    return weights[static_cast<std::size_t>(k)];
}

ComplexVector StructureDecomposition::vector(std::size_t b, Eigen::Index mu, Eigen::Index k) const {
    const IrrepBlock& block = blocks.at(b);
    const HalfInt m = HalfInt::from_twice(-block.j.twice() + 2 * static_cast<int>(k));
    const WeightSpace& space = weight_space(m);
    const ComplexMatrix& c = block.coords.at(static_cast<std::size_t>(k));
    ComplexVector v = ComplexVector::Zero(system->dim);
    for (Eigen::Index r = 0; r < space.dim(); ++r) v(space.indices[static_cast<std::size_t>(r)]) = c(r, mu);
    return v;
}

Eigen::Index StructureDecomposition::column(std::size_t b, Eigen::Index mu, Eigen::Index k) const {
    Eigen::Index offset = 0;
    for (std::size_t i = 0; i < b; ++i) offset += blocks[i].p * blocks[i].q;
    return offset + mu * blocks[b].q + k;
}

SparseOperator StructureDecomposition::unitary() const {
    std::vector<Eigen::Triplet<Complex>> trips;
    Eigen::Index col = 0;
    for (const IrrepBlock& block : blocks) {
        for (Eigen::Index mu = 0; mu < block.p; ++mu) {
            for (Eigen::Index k = 0; k < block.q; ++k, ++col) {
                const HalfInt m = HalfInt::from_twice(-block.j.twice() + 2 * static_cast<int>(k));
                const WeightSpace& space = weight_space(m);
                const ComplexMatrix& c = block.coords[static_cast<std::size_t>(k)];
                for (Eigen::Index r = 0; r < space.dim(); ++r) {
                    if (c(r, mu) != Complex(0.0, 0.0)) {
                        trips.emplace_back(static_cast<int>(space.indices[static_cast<std::size_t>(r)]),
                                           static_cast<int>(col), c(r, mu));
                    }
                }
            }
        }
    }
    SparseOperator u(system->dim, system->dim);
    u.setFromTriplets(trips.begin(), trips.end());
    return u;
}

ComplexMatrix StructureDecomposition::dense_unitary() const { return to_dense(unitary()); }

std::size_t StructureDecomposition::block_index(HalfInt j) const {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].j == j) return b;
    }
    throw Error(ErrorCode::UnknownBlock, "no spin-" + j.to_string() + " block");
}

namespace {

// Restriction of J_+ to V_{m-1} -> V_m, for every m above the bottom.
std::vector<SparseOperator> raising_blocks(const CollectiveSystem& sys, const std::vector<WeightSpace>& weights) {
    const int ns2 = sys.ns.twice();
    std::vector<Eigen::Index> position(static_cast<std::size_t>(sys.dim));
    for (const WeightSpace& w : weights) {
        for (std::size_t r = 0; r < w.indices.size(); ++r) position[static_cast<std::size_t>(w.indices[r])] = static_cast<Eigen::Index>(r);
    }
    std::vector<std::vector<Eigen::Triplet<Complex>>> trips(weights.size());
    for (int c = 0; c < sys.jplus.outerSize(); ++c) {
        for (SparseOperator::InnerIterator it(sys.jplus, c); it; ++it) {
            const auto k = static_cast<std::size_t>((sys.weight_twice[static_cast<std::size_t>(it.row())] + ns2) / 2);
            trips[k].emplace_back(static_cast<int>(position[static_cast<std::size_t>(it.row())]),
                                  static_cast<int>(position[static_cast<std::size_t>(it.col())]), it.value());
        }
    }
    std::vector<SparseOperator> out(weights.size());
    for (std::size_t k = 1; k < weights.size(); ++k) {
        out[k] = SparseOperator(weights[k].dim(), weights[k - 1].dim());
        out[k].setFromTriplets(trips[k].begin(), trips[k].end());
    }
    return out;
}

// Modified Gram-Schmidt in column order; keeps each column's overlap with its
// input positive.
void gram_schmidt(ComplexMatrix& cols) {
    for (Eigen::Index a = 0; a < cols.cols(); ++a) {
        for (Eigen::Index b = 0; b < a; ++b) {
            cols.col(a) -= cols.col(b).dot(cols.col(a)) * cols.col(b);
        }
        cols.col(a).normalize();
    }
}

}  // namespace

StructureDecomposition construct_irrep_basis(const CollectiveSystem& sys, const Tolerances& tol) {
    StructureDecomposition out;
    out.system = &sys;
    out.tol = tol;
    out.weights = weight_decomposition(sys.n, sys.d, static_cast<std::size_t>(sys.dim));
    const std::vector<SparseOperator> raise = raising_blocks(sys, out.weights);

    std::map<int, std::uint64_t> predicted;
    for (const Multiplicity& mult : predicted_multiplicities(sys.n, sys.d)) predicted[mult.j.twice()] = mult.p;

    // Blocks in order of discovery (descending j).
    std::vector<IrrepBlock> found;
    for (std::size_t k = 0; k < out.weights.size(); ++k) {
        const int m2 = out.weights[k].m.twice();
        const Eigen::Index dim_m = out.weights[k].dim();

        std::vector<const IrrepBlock*> lifted;
        Eigen::Index lifted_count = 0;
        for (IrrepBlock& block : found) {
            if (block.j.twice() < m2) continue;  // closed: top weight already reached
            ComplexMatrix next = raise[k] * block.coords.back();
            for (Eigen::Index mu = 0; mu < next.cols(); ++mu) {
                const double norm = next.col(mu).norm();
                if (norm <= tol.rank_tol) {
                    throw Error(ErrorCode::LiftCollapse,
                                "J_+ annihilated a spin-" + block.j.to_string() + " vector at m = " +
                                    HalfInt::from_twice(m2 - 2).to_string());
                }
                next.col(mu) /= norm;
            }
            const ComplexMatrix gram = next.adjoint() * next - ComplexMatrix::Identity(next.cols(), next.cols());
            if (gram.cwiseAbs().maxCoeff() > tol.rank_tol) {
                gram_schmidt(next);
                ++out.reorthonormalized_groups;
            }
            lifted_count += next.cols();
            block.coords.push_back(std::move(next));
            lifted.push_back(&block);
        }

        if (m2 > 0) {
            if (lifted_count != dim_m) {
                throw Error(ErrorCode::RankMismatch, "lifted " + std::to_string(lifted_count) +
                                                         " vectors into V_m of dimension " + std::to_string(dim_m) +
                                                         " at m = " + out.weights[k].m.to_string());
            }
            continue;
        }

        ComplexMatrix stacked(dim_m, lifted_count);
        Eigen::Index col = 0;
        for (const IrrepBlock* block : lifted) {
            stacked.middleCols(col, block->p) = block->coords.back();
            col += block->p;
        }
        ComplexMatrix fresh = orthocomplement_basis(stacked, tol);

        const auto it = predicted.find(-m2);
        const std::uint64_t expected = it == predicted.end() ? 0 : it->second;
        if (static_cast<std::uint64_t>(fresh.cols()) != expected) {
            throw Error(ErrorCode::RankMismatch, "complement in V_" + out.weights[k].m.to_string() + " has dimension " +
                                                     std::to_string(fresh.cols()) + ", expected " +
                                                     std::to_string(expected));
        }
        if (fresh.cols() == 0) continue;

        IrrepBlock block;
        block.j = HalfInt::from_twice(-m2);
        block.p = fresh.cols();
        block.q = -m2 + 1;
        block.coords.reserve(static_cast<std::size_t>(block.q));
        block.coords.push_back(std::move(fresh));
        found.push_back(std::move(block));
    }

    std::reverse(found.begin(), found.end());
    out.blocks = std::move(found);
    return out;
}

std::vector<CentralProjection> central_projections(const StructureDecomposition& decomp) {
    std::vector<CentralProjection> out;
    for (const IrrepBlock& block : decomp.blocks) {
        std::vector<Eigen::Triplet<Complex>> trips;
        for (Eigen::Index k = 0; k < block.q; ++k) {
            const HalfInt m = HalfInt::from_twice(-block.j.twice() + 2 * static_cast<int>(k));
            const WeightSpace& space = decomp.weight_space(m);
            const ComplexMatrix& c = block.coords[static_cast<std::size_t>(k)];
            const ComplexMatrix local = c * c.adjoint();
            for (Eigen::Index col = 0; col < local.cols(); ++col) {
                for (Eigen::Index row = 0; row < local.rows(); ++row) {
                    trips.emplace_back(static_cast<int>(space.indices[static_cast<std::size_t>(row)]),
                                       static_cast<int>(space.indices[static_cast<std::size_t>(col)]), local(row, col));
                }
            }
        }
        SparseOperator p(decomp.system->dim, decomp.system->dim);
        p.setFromTriplets(trips.begin(), trips.end());
        out.push_back({block.j, std::move(p)});
    }
    return out;
}

ComplexMatrix casimir_spectral_projection(const CollectiveSystem& sys, HalfInt j, double tol) {
    const ComplexMatrix jsq = dense_casimir(sys);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (jsq + jsq.adjoint()));
    const double target = j.value() * (j.value() + 1.0);
    ComplexMatrix p = ComplexMatrix::Zero(sys.dim, sys.dim);
    for (Eigen::Index i = 0; i < sys.dim; ++i) {
        if (std::abs(eig.eigenvalues()(i) - target) < tol) {
            p.noalias() += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).adjoint();
        }
    }
    return p;
}

BlockConjugation conjugate_to_blocks(const StructureDecomposition& decomp, const ComplexMatrix& a) {
    const Eigen::Index dim = decomp.system->dim;
    if (a.rows() != dim || a.cols() != dim) {
        throw Error(ErrorCode::ShapeMismatch, "operator must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    const SparseOperator u = decomp.unitary();
    const ComplexMatrix au = a * u;
    const ComplexMatrix conj = SparseOperator(u.adjoint()) * au;

    BlockConjugation out;
    double off_sq = conj.squaredNorm();
    Eigen::Index offset = 0;
    for (const IrrepBlock& block : decomp.blocks) {
        const Eigen::Index size = block.p * block.q;
        ComplexMatrix b = conj.block(offset, offset, size, size);
        off_sq -= b.squaredNorm();
        const ComplexMatrix first = b.topLeftCorner(block.q, block.q);
        for (Eigen::Index mu = 0; mu < block.p; ++mu) {
            for (Eigen::Index nu = 0; nu < block.p; ++nu) {
                const auto sub = b.block(mu * block.q, nu * block.q, block.q, block.q);
                const double dev = mu == nu ? (sub - first).norm() : sub.norm();
                out.linked_deviation = std::max(out.linked_deviation, dev);
            }
        }
        out.blocks.push_back(std::move(b));
        offset += size;
    }
    out.residual = std::sqrt(std::max(off_sq, 0.0));
    return out;
}

namespace {

void fill_weight_rows(StructureReport& report) {
    const int ns2 = report.n * (report.d - 1);
    for (int m2 = -ns2; m2 <= ns2; m2 += 2) {
        const HalfInt m = HalfInt::from_twice(m2);
        report.weight_dims.push_back({m, weight_dim(report.n, report.d, m)});
    }
}

void fill_totals(StructureReport& report) {
    for (const StructureRow& row : report.rows) {
        report.total_dim += row.pq();
        report.commutant_dim += row.p_sq();
        report.algebra_dim += row.q * row.q;
    }
}

}  // namespace

StructureReport structure_report(int n, int d) {
    StructureReport report;
    report.n = n;
    report.d = d;
    for (const Multiplicity& mult : predicted_multiplicities(n, d)) report.rows.push_back({mult.j, mult.p, mult.q});
    fill_weight_rows(report);
    fill_totals(report);
    return report;
}

StructureReport structure_report(const StructureDecomposition& decomp) {
    StructureReport report;
    report.n = decomp.system->n;
    report.d = decomp.system->d;
    for (const IrrepBlock& block : decomp.blocks) {
        report.rows.push_back({block.j, static_cast<std::uint64_t>(block.p), static_cast<std::uint64_t>(block.q)});
    }
    for (const WeightSpace& w : decomp.weights) report.weight_dims.push_back({w.m, static_cast<std::uint64_t>(w.dim())});
    fill_totals(report);
    return report;
}

}  // namespace crc
