#include "crc/verify.hpp"

#include "crc/commutant.hpp"
#include "crc/error.hpp"
#include "crc/spin_rep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace crc {

const char* to_string(CheckStatus status) noexcept {
    switch (status) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skipped: return "SKIPPED";
    }
    return "?";
}

BasisInvariants check_basis_invariants(const StructureDecomposition& decomp) {
    const CollectiveSystem& sys = *decomp.system;
    BasisInvariants out;
    out.min_shift = std::numeric_limits<double>::infinity();

    // Vectors of different weight have disjoint support, so U^dagger U is
    // block diagonal over the weight spaces.
    double unit_sq = 0.0;
    for (const WeightSpace& w : decomp.weights) {
        ComplexMatrix cols(w.dim(), 0);
        for (const IrrepBlock& block : decomp.blocks) {
            const int k2 = w.m.twice() + block.j.twice();
            if (k2 < 0 || k2 > 2 * block.j.twice()) continue;
            const ComplexMatrix& c = block.coords[static_cast<std::size_t>(k2 / 2)];
            ComplexMatrix grown(w.dim(), cols.cols() + c.cols());
            grown << cols, c;
            cols = std::move(grown);
        }
        out.vector_count += cols.cols();
        if (cols.cols() != w.dim()) {
            // Not square: still measure orthonormality of what is there.
            unit_sq += static_cast<double>(std::abs(w.dim() - cols.cols()));
        }
        unit_sq += (cols.adjoint() * cols - ComplexMatrix::Identity(cols.cols(), cols.cols())).squaredNorm();
    }
    out.unitarity = std::sqrt(unit_sq);

    for (std::size_t b = 0; b < decomp.blocks.size(); ++b) {
        const IrrepBlock& block = decomp.blocks[b];
        const double j = block.j.value();
        const double casimir = j * (j + 1.0);
        double mean = 0.0;
        double mean_sq = 0.0;
        Eigen::Index count = 0;
        for (Eigen::Index mu = 0; mu < block.p; ++mu) {
            std::vector<ComplexVector> ladder;
            for (Eigen::Index k = 0; k < block.q; ++k) ladder.push_back(decomp.vector(b, mu, k));
            for (Eigen::Index k = 0; k < block.q; ++k) {
                const ComplexVector& v = ladder[static_cast<std::size_t>(k)];
                const double m = -j + static_cast<double>(k);
                out.jz_eigen = std::max(out.jz_eigen, (sys.jz * v - m * v).norm());
                const ComplexVector jsq_v = sys.jsq * v;
                out.casimir_eigen = std::max(out.casimir_eigen, (jsq_v - casimir * v).norm());
                const double expect = v.dot(jsq_v).real();
                mean += expect;
                mean_sq += expect * expect;
                ++count;

                const ComplexVector up = sys.jplus * v;
                if (k + 1 < block.q) {
                    const ComplexVector& next = ladder[static_cast<std::size_t>(k + 1)];
                    const Complex c = next.dot(up);
                    out.weighted_shift = std::max(out.weighted_shift, (up - c * next).norm());
                    out.shift_phase = std::max(out.shift_phase, std::abs(c.imag()));
                    out.min_shift = std::min(out.min_shift, c.real());
                } else {
                    out.annihilation = std::max(out.annihilation, up.norm());
                }
                const ComplexVector down = sys.jminus * v;
                if (k > 0) {
                    const ComplexVector& prev = ladder[static_cast<std::size_t>(k - 1)];
                    const Complex c = prev.dot(down);
                    out.weighted_shift = std::max(out.weighted_shift, (down - c * prev).norm());
                } else {
                    out.annihilation = std::max(out.annihilation, down.norm());
                }
            }
        }
        if (count > 0) {
            mean /= static_cast<double>(count);
            out.casimir_spread = std::max(out.casimir_spread, std::max(0.0, mean_sq / static_cast<double>(count) - mean * mean));
        }
    }
    if (!std::isfinite(out.min_shift)) out.min_shift = 0.0;

    const std::vector<Multiplicity> predicted = predicted_multiplicities(sys.n, sys.d);
    out.census_matches = predicted.size() == decomp.blocks.size();
    for (std::size_t b = 0; out.census_matches && b < predicted.size(); ++b) {
        out.census_matches = predicted[b].j == decomp.blocks[b].j &&
                             predicted[b].p == static_cast<std::uint64_t>(decomp.blocks[b].p) &&
                             predicted[b].q == static_cast<std::uint64_t>(decomp.blocks[b].q);
    }
    return out;
}

double linked_block_deviation(const StructureDecomposition& decomp, int max_length, int max_power) {
    const CollectiveSystem& sys = *decomp.system;
    const std::array<const SparseOperator*, 3> letters{&sys.jplus, &sys.jminus, &sys.jz};

    // All monomials applied to `right`, depth-first; each visit is one inner product.
    std::function<void(const ComplexVector&, int, const std::function<void(const ComplexVector&)>&)> expand =
        [&](const ComplexVector& x, int depth, const std::function<void(const ComplexVector&)>& visit) {
            visit(x);
            if (depth == max_length) return;
            for (const SparseOperator* op : letters) expand(*op * x, depth + 1, visit);
        };

    auto raise = [&](ComplexVector x, int power) {
        for (int i = 0; i < power; ++i) x = sys.jplus * x;
        return x;
    };

    double worst = 0.0;
    for (std::size_t b = 0; b < decomp.blocks.size(); ++b) {
        const IrrepBlock& block = decomp.blocks[b];
        if (block.p < 2) continue;
        for (Eigen::Index k = 0; k < block.q; ++k) {
            for (int p1 = 0; p1 <= max_power; ++p1) {
                for (int p2 = 0; p2 <= max_power; ++p2) {
                    std::vector<Complex> reference;
                    for (Eigen::Index mu = 0; mu < block.p; ++mu) {
                        const ComplexVector v = decomp.vector(b, mu, k);
                        const ComplexVector left = raise(v, p1);
                        std::size_t slot = 0;
                        expand(raise(v, p2), 0, [&](const ComplexVector& ax) {
                            const Complex value = left.dot(ax);
                            if (mu == 0) {
                                reference.push_back(value);
                            } else {
                                worst = std::max(worst, std::abs(value - reference[slot]));
                            }
                            ++slot;
                        });
                    }
                }
            }
        }
    }
    return worst;
}

ProjectionChecks check_central_projections(const StructureDecomposition& decomp, std::size_t dense_budget) {
    const CollectiveSystem& sys = *decomp.system;
    const std::vector<CentralProjection> projections = central_projections(decomp);
    ProjectionChecks out;

    SparseOperator total(sys.dim, sys.dim);
    for (const CentralProjection& cp : projections) total += cp.projection;
    SparseOperator id(sys.dim, sys.dim);
    id.setIdentity();
    out.sum_identity = SparseOperator(total - id).norm();

    for (std::size_t a = 0; a < projections.size(); ++a) {
        const SparseOperator& pa = projections[a].projection;
        out.idempotence = std::max(out.idempotence, SparseOperator(SparseOperator(pa * pa) - pa).norm());
        for (std::size_t b = a + 1; b < projections.size(); ++b) {
            out.orthogonality = std::max(out.orthogonality, SparseOperator(pa * projections[b].projection).norm());
        }
    }

    if (static_cast<std::size_t>(sys.dim) <= dense_budget) {
        double gap = 0.0;
        for (const CentralProjection& cp : projections) {
            gap = std::max(gap, (to_dense(cp.projection) - casimir_spectral_projection(sys, cp.j)).norm());
        }
        out.spectral_gap = gap;
    }
    return out;
}

double collective_relation_residual(const CollectiveSystem& sys) {
    const Complex i(0.0, 1.0);
    auto rel = [&](const SparseOperator& a, const SparseOperator& b, const SparseOperator& c) {
        const SparseOperator lhs = a * b - b * a;
        return SparseOperator(lhs - i * c).norm();
    };
    return std::max({rel(sys.jx, sys.jy, sys.jz), rel(sys.jz, sys.jx, sys.jy), rel(sys.jy, sys.jz, sys.jx)});
}

double casimir_centrality_residual(const CollectiveSystem& sys) {
    double worst = 0.0;
    for (const SparseOperator* g : {&sys.jx, &sys.jy, &sys.jz}) {
        worst = std::max(worst, SparseOperator(sys.jsq * *g - *g * sys.jsq).norm());
    }
    return worst;
}

bool VerifyOutcome::passed() const { return first_failure() == nullptr; }

const CheckResult* VerifyOutcome::first_failure() const {
    for (const CheckResult& c : checks) {
        if (c.status == CheckStatus::Fail) return &c;
    }
    return nullptr;
}

namespace {

constexpr std::size_t kDenseCheckBudget = 1024;
constexpr std::size_t kKrausBudget = 512;
constexpr std::size_t kAlgebraBudget = 32;

class Recorder {
public:
    explicit Recorder(std::vector<CheckResult>& out) : out_(out) {}

    void below(std::string name, double measured, double threshold, std::string detail = {}) {
        const bool ok = std::isfinite(measured) && measured <= threshold;
        out_.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, measured, threshold,
                        std::move(detail)});
    }

    void truth(std::string name, bool ok, std::string detail = {}) {
        out_.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, ok ? 0.0 : 1.0, 0.0,
                        std::move(detail)});
    }

    void skip(std::string name, std::string why) {
        out_.push_back({std::move(name), CheckStatus::Skipped, 0.0, 0.0, std::move(why)});
    }

private:
    std::vector<CheckResult>& out_;
};

std::string over_budget(Eigen::Index dim, std::size_t budget) {
    return "dim " + std::to_string(dim) + " > " + std::to_string(budget);
}

}  // namespace

VerifyOutcome run_verification(const VerifyConfig& config) {
    config.tol.validate();
    VerifyOutcome outcome;
    Recorder rec(outcome.checks);
    const Tolerances& tol = config.tol;

    const CollectiveSystem sys = build_collective_system(config.n, config.d, config.budget_dim);
    const auto dim = static_cast<double>(sys.dim);
    const auto udim = static_cast<std::size_t>(sys.dim);

    rec.below("su2 relations (single site)", check_su2_relations(sys.rep), 1e-12 * sys.d);
    rec.below("collective commutation relations", collective_relation_residual(sys), 1e-10 * dim);
    rec.below("J^2 central", casimir_centrality_residual(sys), 1e-10 * dim);
    if (udim <= kDenseCheckBudget) {
        rec.below("J^2 = Jx^2 + Jy^2 + Jz^2", (to_dense(sys.jsq) - dense_casimir(sys)).norm(), 1e-10 * dim);
    } else {
        rec.skip("J^2 = Jx^2 + Jy^2 + Jz^2", over_budget(sys.dim, kDenseCheckBudget));
    }

    std::optional<RotationChannel> channel;
    if (udim <= kKrausBudget) {
        channel = build_channel(sys, config.thetas, tol);
        const KrausResiduals kr = kraus_residuals(*channel);
        rec.below("channel trace preserving", kr.trace_preserving, 1e-12 * dim);
        rec.below("channel unital", kr.unital, 1e-12 * dim);
    } else {
        check_angles(sys, config.thetas.value_or(default_angles(sys)));
        rec.skip("channel trace preserving", over_budget(sys.dim, kKrausBudget));
        rec.skip("channel unital", over_budget(sys.dim, kKrausBudget));
    }

    const StructureDecomposition decomp = construct_irrep_basis(sys, tol);
    outcome.reorthonormalized_groups = decomp.reorthonormalized_groups;
    const BasisInvariants inv = check_basis_invariants(decomp);
    rec.truth("block census matches prediction", inv.census_matches);
    rec.truth("basis is complete", inv.vector_count == sys.dim, std::to_string(inv.vector_count) + " vectors");
    rec.below("U unitary", inv.unitarity, tol.verify_tol * dim);
    rec.below("J_z eigenrelation", inv.jz_eigen, tol.verify_tol);
    rec.below("J^2 eigenrelation", inv.casimir_eigen, tol.verify_tol);
    rec.below("Casimir constant per block", inv.casimir_spread, tol.verify_tol);
    rec.below("weighted shift law", inv.weighted_shift, tol.verify_tol);
    rec.below("shift coefficients real", inv.shift_phase, tol.verify_tol);
    rec.truth("shift coefficients positive", inv.min_shift > 0.0);
    rec.below("ladder annihilation at block ends", inv.annihilation, tol.verify_tol);

    const ProjectionChecks pc = check_central_projections(decomp, kKrausBudget);
    rec.below("sum of central projections = I", pc.sum_identity, tol.verify_tol * dim);
    rec.below("central projections orthogonal", pc.orthogonality, tol.verify_tol * dim);
    rec.below("central projections idempotent", pc.idempotence, tol.verify_tol * dim);
    if (pc.spectral_gap) {
        rec.below("P_j = J^2 spectral projection", *pc.spectral_gap, tol.verify_tol * dim);
    } else {
        rec.skip("P_j = J^2 spectral projection", over_budget(sys.dim, kKrausBudget));
    }

    if (udim <= kDenseCheckBudget) {
        rec.below("linked-block identity", linked_block_deviation(decomp), tol.verify_tol);
        double residual = 0.0;
        double linked = 0.0;
        for (const ComplexMatrix& g : collective_generators(sys)) {
            const BlockConjugation bc = conjugate_to_blocks(decomp, g);
            residual = std::max(residual, bc.residual / g.norm());
            linked = std::max(linked, bc.linked_deviation / g.norm());
        }
        rec.below("generators block diagonal in U", residual, tol.verify_tol);
        rec.below("generators act as 1_p (x) B_j", linked, tol.verify_tol);
    } else {
        rec.skip("linked-block identity", over_budget(sys.dim, kDenseCheckBudget));
        rec.skip("generators block diagonal in U", over_budget(sys.dim, kDenseCheckBudget));
        rec.skip("generators act as 1_p (x) B_j", over_budget(sys.dim, kDenseCheckBudget));
    }

    const StructureReport report = structure_report(decomp);
    outcome.predicted_commutant_dim = report.commutant_dim;
    const std::string sum_p_sq = std::to_string(report.commutant_dim);

    if (udim <= config.oracle_budget_dim) {
        if (!channel) channel = build_channel(sys, config.thetas, tol);
        const std::vector<ComplexMatrix> gens = collective_generators(sys);
        const CommutantBasis brute = brute_force_commutant(gens, tol, config.oracle_budget_dim, "Jx,Jy,Jz");
        const CommutantBasis structural = structural_commutant_basis(decomp);
        const std::vector<ComplexMatrix> fixed = fixed_point_basis(*channel, tol, config.oracle_budget_dim);
        outcome.commutant_dim = static_cast<Eigen::Index>(brute.elements.size());

        auto count = [](const auto& v) { return static_cast<std::uint64_t>(v.size()); };
        rec.truth("brute-force commutant dim = sum p_j^2", count(brute.elements) == report.commutant_dim,
                  std::to_string(brute.elements.size()) + " vs " + sum_p_sq);
        rec.truth("structural commutant dim = sum p_j^2", count(structural.elements) == report.commutant_dim,
                  std::to_string(structural.elements.size()) + " vs " + sum_p_sq);
        rec.truth("Fix(E) dim = sum p_j^2", count(fixed) == report.commutant_dim,
                  std::to_string(fixed.size()) + " vs " + sum_p_sq);
        rec.below("Fix(E) = A' (fixed vs brute)", span_equal(fixed, brute.elements, tol).gap, 1e-8);
        rec.below("Fix(E) = A' (fixed vs structural)", span_equal(fixed, structural.elements, tol).gap, 1e-8);
        rec.below("A' brute vs structural", span_equal(brute.elements, structural.elements, tol).gap, 1e-8);
        rec.below("structural elements commute with J", max_commutator_residual(structural.elements, gens),
                  tol.verify_tol);
        rec.below("Fix(E) closed under adjoint", adjoint_closure_gap(fixed, tol), tol.verify_tol);

        const std::vector<ComplexMatrix> pair{gens[0], gens[2]};
        const CommutantBasis from_pair = brute_force_commutant(pair, tol, config.oracle_budget_dim, "Jx,Jz");
        rec.below("pair {Jx, Jz} gives the same commutant", span_equal(from_pair.elements, brute.elements, tol).gap,
                  1e-8);

        if (udim <= kAlgebraBudget) {
            const AlgebraDimension alg = algebra_dimension(gens, tol);
            rec.truth("dim Alg{J} = sum q_j^2", alg.stabilized && static_cast<std::uint64_t>(alg.dimension) == report.algebra_dim,
                      std::to_string(alg.dimension) + " vs " + std::to_string(report.algebra_dim));
            const CommutantBasis double_comm =
                brute_force_commutant(structural.elements, tol, config.oracle_budget_dim, "structural");
            rec.truth("double commutant dim = sum q_j^2", count(double_comm.elements) == report.algebra_dim,
                      std::to_string(double_comm.elements.size()) + " vs " + std::to_string(report.algebra_dim));
        } else {
            rec.skip("dim Alg{J} = sum q_j^2", over_budget(sys.dim, kAlgebraBudget));
            rec.skip("double commutant dim = sum q_j^2", over_budget(sys.dim, kAlgebraBudget));
        }
    } else {
        const std::string why = over_budget(sys.dim, config.oracle_budget_dim);
        for (const char* name : {"brute-force commutant dim = sum p_j^2", "structural commutant dim = sum p_j^2",
                                 "Fix(E) dim = sum p_j^2", "Fix(E) = A' (fixed vs brute)",
                                 "Fix(E) = A' (fixed vs structural)", "A' brute vs structural",
                                 "structural elements commute with J", "Fix(E) closed under adjoint",
                                 "pair {Jx, Jz} gives the same commutant", "dim Alg{J} = sum q_j^2",
                                 "double commutant dim = sum q_j^2"}) {
            rec.skip(name, why);
        }
    }
    return outcome;
}

}  // namespace crc
