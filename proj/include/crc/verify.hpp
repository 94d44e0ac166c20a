// verify.hpp: invariant checks over a built system, and the full verification suite

#pragma once

#include "crc/channel.hpp"
#include "crc/collective.hpp"
#include "crc/numeric.hpp"
#include "crc/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crc {

/// Residuals of the |j,m,mu> basis against its defining relations.
struct BasisInvariants {
    double unitarity = 0.0;         // |U^dagger U - I|_F
    double jz_eigen = 0.0;          // max |J_z v - m v|
    double casimir_eigen = 0.0;     // max |J^2 v - j(j+1) v|
    double casimir_spread = 0.0;    // max over blocks of the variance of <v, J^2 v>
    double weighted_shift = 0.0;    // max |J_+- v[m] - c v[m+-1]|
    double shift_phase = 0.0;       // max |Im c| over J_+ shift coefficients
    double min_shift = 0.0;         // min Re c over J_+ shift coefficients (must be > 0)
    double annihilation = 0.0;      // max of |J_+ v[j]|, |J_- v[-j]|
    bool census_matches = false;    // block (j, p) list == predicted_multiplicities
    Eigen::Index vector_count = 0;
};

BasisInvariants check_basis_invariants(const StructureDecomposition& decomp);

/// max over blocks, m, mu, monomials A in {J_+, J_-, J_z} of length <= max_length and
/// powers p1, p2 <= max_power of |<j,m,mu| J_-^p1 A J_+^p2 |j,m,mu> - (same at mu = 1)|.
double linked_block_deviation(const StructureDecomposition& decomp, int max_length = 3, int max_power = 2);

struct ProjectionChecks {
    double sum_identity = 0.0;   // |sum_j P_j - I|_F
    double orthogonality = 0.0;  // max |P_j P_j'|_F, j != j'
    double idempotence = 0.0;    // max |P_j^2 - P_j|_F
    std::optional<double> spectral_gap;  // max |P_j - spectral projection of J^2|_F, dense only
};

/// spectral_gap is computed only when dim <= dense_budget.
ProjectionChecks check_central_projections(const StructureDecomposition& decomp, std::size_t dense_budget = 512);

/// max over the cyclic relations of |[J_a, J_b] - i J_c|_F.
double collective_relation_residual(const CollectiveSystem& sys);

/// max_k |[J^2, J_k]|_F.
double casimir_centrality_residual(const CollectiveSystem& sys);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

const char* to_string(CheckStatus status) noexcept;

struct VerifyConfig {
    int n = 1;
    int d = 2;
    std::optional<Angles> thetas;
    Tolerances tol;
    std::size_t budget_dim = kStructureBudgetDim;
    std::size_t oracle_budget_dim = kSuperoperatorBudgetDim;
};

struct VerifyOutcome {
    std::vector<CheckResult> checks;
    std::optional<Eigen::Index> commutant_dim;  // brute-force oracle, when it ran
    std::uint64_t predicted_commutant_dim = 0;
    int reorthonormalized_groups = 0;  // lifted families that needed Gram-Schmidt

    bool passed() const;
    const CheckResult* first_failure() const;
};

/// Runs every check; oracle checks above oracle_budget_dim are reported as Skipped.
VerifyOutcome run_verification(const VerifyConfig& config);

}  // namespace crc
