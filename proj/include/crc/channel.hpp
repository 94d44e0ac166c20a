// channel.hpp: the three-Kraus collective rotation channel
//
//   E(T) = sum_k E_k T E_k^dagger,   E_k = exp(i theta_k J_k) / sqrt(3),  k = x, y, z.
//
// Superoperators use column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X).

#pragma once

#include "crc/collective.hpp"
#include "crc/numeric.hpp"

#include <array>
#include <optional>
#include <vector>

namespace crc {

using Angles = std::array<double, 3>;

struct RotationChannel {
    const CollectiveSystem* system = nullptr;
    Angles thetas{};
    std::array<ComplexMatrix, 3> kraus;
};

/// (0.9, 1.0, 1.1) * pi / (2ns + 1).
Angles default_angles(const CollectiveSystem& sys);

/// Throws DegenerateAngle if some theta is 0 or |theta| * 2ns >= 2 pi.
void check_angles(const CollectiveSystem& sys, const Angles& thetas);

/// The returned channel keeps a pointer to `sys`, which must outlive it.
RotationChannel build_channel(const CollectiveSystem& sys, std::optional<Angles> thetas = std::nullopt,
                              const Tolerances& tol = {});

ComplexMatrix apply(const RotationChannel& channel, const ComplexMatrix& t);

/// dim^2 x dim^2 matrix S with S vec(T) = vec(E(T)).
ComplexMatrix superoperator(const RotationChannel& channel, std::size_t budget_dim = kSuperoperatorBudgetDim);

/// Frobenius-orthonormal basis of Fix(E) = null(S - I), devectorized.
std::vector<ComplexMatrix> fixed_point_basis(const RotationChannel& channel, const Tolerances& tol = {},
                                             std::size_t budget_dim = kSuperoperatorBudgetDim);

/// |sum_k E_k^dagger E_k - I|_F and |sum_k E_k E_k^dagger - I|_F.
struct KrausResiduals {
    double trace_preserving = 0.0;
    double unital = 0.0;
};
KrausResiduals kraus_residuals(const RotationChannel& channel);

}  // namespace crc
