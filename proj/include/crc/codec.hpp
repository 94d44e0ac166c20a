// codec.hpp: noiseless-subsystem encoding into the multiplicity factor of a spin-j block
//
// Inside the spin-j block the space factors as C^{p_j} (logical) (x) C^{q_j}
// (gauge). Collective rotations act as 1 (x) B on it, so logical states
// survive any of them untouched.

#pragma once

#include "crc/channel.hpp"
#include "crc/half_integer.hpp"
#include "crc/numeric.hpp"
#include "crc/structure.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace crc {

struct NoiselessCode {
    const StructureDecomposition* decomp = nullptr;
    HalfInt j;
    std::size_t block = 0;
    Eigen::Index logical_dim = 0;  // p_j
    Eigen::Index gauge_dim = 0;    // q_j
    ComplexMatrix encoder;         // dim x (p q), columns v[mu][m], mu outer

    bool trivial() const { return logical_dim == 1; }
};

/// Throws UnknownBlock when the decomposition has no spin-j block.
NoiselessCode make_code(const StructureDecomposition& decomp, HalfInt j);

/// Throws NotDensity unless rho is Hermitian, unit trace and positive (within 1e-12 / -1e-10).
void require_density(const ComplexMatrix& rho, const char* what);

ComplexMatrix maximally_mixed(Eigen::Index dim);

/// rho = W (logical (x) gauge) W^dagger.
ComplexMatrix encode(const NoiselessCode& code, const ComplexMatrix& logical, const ComplexMatrix& gauge);

/// Encodes with the maximally mixed gauge state.
ComplexMatrix encode(const NoiselessCode& code, const ComplexMatrix& logical);

struct Decoded {
    ComplexMatrix logical;
    double leakage = 0.0;  // 1 - tr(P_j rho)
};

/// Partial trace over the gauge factor of W^dagger rho W, renormalized.
/// Throws BlockLeakage when more than half of the state lies outside the block.
Decoded decode(const NoiselessCode& code, const ComplexMatrix& rho);

/// (tr sqrt(sqrt(a) b sqrt(a)))^2
double fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// <psi| b |psi> for a normalized psi; equals fidelity(|psi><psi|, b).
double pure_fidelity(const ComplexVector& psi, const ComplexMatrix& b);

/// exp(-i 2 pi r.J), i.e. U^{(x)n} for U = exp(-i 2 pi r.Sigma).
ComplexMatrix collective_rotation(const CollectiveSystem& sys, const std::array<double, 3>& r);

/// splitmix64 output after advancing `master` by index + 1 steps.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

enum class NoiseMode { Channel, RandomRotations };

struct NoiseReport {
    int trials = 0;
    double min_fidelity = 1.0;
    double mean_fidelity = 1.0;
    double max_leakage = 0.0;
    double max_gauge_dependence = 0.0;  // decode spread between mixed and pure gauge inputs
    double control_min_fidelity = 1.0;  // same noise on the logical state held in the leading raw sites
    double control_mean_fidelity = 1.0;
};

/// RandomRotations: each trial draws r uniformly in the unit ball and a random pure logical
/// state from trial_seed(seed, i). Channel: one random logical state, the channel applied
/// once per trial, fidelity recorded after every application.
NoiseReport simulate_noise(const NoiselessCode& code, NoiseMode mode, int trials, std::uint64_t seed,
                           std::optional<Angles> thetas = std::nullopt);

}  // namespace crc
