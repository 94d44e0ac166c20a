#include "crc/codec.hpp"

#include "crc/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace crc {

NoiselessCode make_code(const StructureDecomposition& decomp, HalfInt j) {
    NoiselessCode code;
    code.decomp = &decomp;
    code.j = j;
    code.block = decomp.block_index(j);
    const IrrepBlock& block = decomp.blocks[code.block];
    code.logical_dim = block.p;
    code.gauge_dim = block.q;
    code.encoder.resize(decomp.system->dim, block.p * block.q);
    for (Eigen::Index mu = 0; mu < block.p; ++mu) {
        for (Eigen::Index k = 0; k < block.q; ++k) {
            code.encoder.col(mu * block.q + k) = decomp.vector(code.block, mu, k);
        }
    }
    return code;
}

void require_density(const ComplexMatrix& rho, const char* what) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw Error(ErrorCode::NotDensity, std::string(what) + " is not square");
    }
    if ((rho - rho.adjoint()).norm() > 1e-12 * std::max(1.0, rho.norm())) {
        throw Error(ErrorCode::NotDensity, std::string(what) + " is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-12) {
        throw Error(ErrorCode::NotDensity, std::string(what) + " does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw Error(ErrorCode::NotDensity, std::string(what) + " has a negative eigenvalue");
    }
}

ComplexMatrix maximally_mixed(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

ComplexMatrix encode(const NoiselessCode& code, const ComplexMatrix& logical, const ComplexMatrix& gauge) {
    if (logical.rows() != code.logical_dim || logical.cols() != code.logical_dim) {
        throw Error(ErrorCode::ShapeMismatch, "logical state must be " + std::to_string(code.logical_dim) + "x" +
                                                  std::to_string(code.logical_dim));
    }
    if (gauge.rows() != code.gauge_dim || gauge.cols() != code.gauge_dim) {
        throw Error(ErrorCode::ShapeMismatch, "gauge state must be " + std::to_string(code.gauge_dim) + "x" +
                                                  std::to_string(code.gauge_dim));
    }
    require_density(logical, "logical state");
    require_density(gauge, "gauge state");
    return code.encoder * kron(logical, gauge) * code.encoder.adjoint();
}

ComplexMatrix encode(const NoiselessCode& code, const ComplexMatrix& logical) {
    return encode(code, logical, maximally_mixed(code.gauge_dim));
}

Decoded decode(const NoiselessCode& code, const ComplexMatrix& rho) {
    if (rho.rows() != code.encoder.rows() || rho.cols() != code.encoder.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "state has the wrong dimension");
    }
    const ComplexMatrix compressed = code.encoder.adjoint() * rho * code.encoder;
    const Eigen::Index p = code.logical_dim;
    const Eigen::Index q = code.gauge_dim;
    ComplexMatrix logical = ComplexMatrix::Zero(p, p);
    for (Eigen::Index mu = 0; mu < p; ++mu) {
        for (Eigen::Index nu = 0; nu < p; ++nu) {
            logical(mu, nu) = compressed.block(mu * q, nu * q, q, q).trace();
        }
    }
    const double inside = compressed.trace().real();
    Decoded out;
    out.leakage = rho.trace().real() - inside;
    if (out.leakage > 0.5) {
        throw Error(ErrorCode::BlockLeakage, "leakage " + std::to_string(out.leakage) + " out of the spin-" +
                                                 code.j.to_string() + " block");
    }
    out.logical = logical / inside;
    return out;
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "fidelity shapes differ");
    // Work in the eigenbasis of a. Eigenvalues of a at rounding level are set to
    // zero: their square roots (~1e-8) would otherwise leak straight into the trace.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ea(0.5 * (a + a.adjoint()));
    const Eigen::VectorXd& lam = ea.eigenvalues();
    const double cutoff = 16.0 * static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() *
                          std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXd roots(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) roots(i) = lam(i) > cutoff ? std::sqrt(lam(i)) : 0.0;
    const ComplexMatrix v = ea.eigenvectors();
    const ComplexMatrix inner = roots.cast<Complex>().asDiagonal() * (v.adjoint() * b * v) *
                                roots.cast<Complex>().asDiagonal();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ei(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double tr = ei.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return tr * tr;
}

double pure_fidelity(const ComplexVector& psi, const ComplexMatrix& b) {
    return psi.dot(b * psi).real();
}

ComplexMatrix collective_rotation(const CollectiveSystem& sys, const std::array<double, 3>& r) {
    const SparseOperator rj = r[0] * sys.jx + r[1] * sys.jy + r[2] * sys.jz;
    return herm_expm(to_dense(rj), -2.0 * std::numbers::pi);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

ComplexVector random_pure_state(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    ComplexVector psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
    return psi / psi.norm();
}

std::array<double, 3> random_in_ball(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    while (true) {
        const std::array<double, 3> r{uni(rng), uni(rng), uni(rng)};
        if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 1.0) return r;
    }
}

// The negative control stores the logical state directly in the leading raw
// sites, with every other site in |-s>.
struct RawRegister {
    Eigen::Index lead = 1;  // d^L >= p
    Eigen::Index rest = 1;  // d^(n-L)

    RawRegister(const CollectiveSystem& sys, Eigen::Index p) {
        lead = sys.d;
        while (lead < p) lead *= sys.d;
        rest = sys.dim / lead;
    }

    ComplexMatrix embed(const ComplexVector& psi) const {
        ComplexVector full = ComplexVector::Zero(lead * rest);
        for (Eigen::Index mu = 0; mu < psi.size(); ++mu) full(mu * rest) = psi(mu);
        return full * full.adjoint();
    }

    ComplexMatrix readout(const ComplexMatrix& rho, Eigen::Index p) const {
        ComplexMatrix reduced = ComplexMatrix::Zero(p, p);
        for (Eigen::Index a = 0; a < p; ++a) {
            for (Eigen::Index b = 0; b < p; ++b) {
                for (Eigen::Index k = 0; k < rest; ++k) reduced(a, b) += rho(a * rest + k, b * rest + k);
            }
        }
        const double tr = reduced.trace().real();
        return tr > 0.0 ? ComplexMatrix(reduced / tr) : reduced;
    }
};

struct Accumulator {
    NoiseReport report;
    double sum = 0.0;
    double control_sum = 0.0;

    void add(double fid, double leak, double gauge_dev, double control) {
        ++report.trials;
        report.min_fidelity = std::min(report.min_fidelity, fid);
        report.max_leakage = std::max(report.max_leakage, leak);
        report.max_gauge_dependence = std::max(report.max_gauge_dependence, gauge_dev);
        report.control_min_fidelity = std::min(report.control_min_fidelity, control);
        sum += fid;
        control_sum += control;
    }

    NoiseReport finish() {
        if (report.trials > 0) {
            report.mean_fidelity = sum / report.trials;
            report.control_mean_fidelity = control_sum / report.trials;
        }
        return report;
    }
};

}  // namespace

NoiseReport simulate_noise(const NoiselessCode& code, NoiseMode mode, int trials, std::uint64_t seed,
                           std::optional<Angles> thetas) {
    if (trials < 1) throw Error(ErrorCode::OutOfRange, "trials must be >= 1");
    const CollectiveSystem& sys = *code.decomp->system;
    const Eigen::Index p = code.logical_dim;
    const Eigen::Index q = code.gauge_dim;
    const RawRegister raw(sys, p);
    const ComplexMatrix pure_gauge = basis_vector(q, 0) * basis_vector(q, 0).adjoint();

    Accumulator acc;
    auto record = [&](const ComplexVector& psi, const ComplexMatrix& noisy_mixed, const ComplexMatrix& noisy_pure,
                      const ComplexMatrix& noisy_raw) {
        const Decoded mixed = decode(code, noisy_mixed);
        const Decoded pure = decode(code, noisy_pure);
        const double fid = pure_fidelity(psi, mixed.logical);
        const double control = pure_fidelity(psi, raw.readout(noisy_raw, p));
        acc.add(fid, std::max(mixed.leakage, pure.leakage), (mixed.logical - pure.logical).norm(), control);
    };

    if (mode == NoiseMode::RandomRotations) {
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
            const ComplexVector psi = random_pure_state(p, rng);
            const ComplexMatrix logical = psi * psi.adjoint();
            const ComplexMatrix u = collective_rotation(sys, random_in_ball(rng));
            auto noisy = [&](const ComplexMatrix& rho) -> ComplexMatrix { return u * rho * u.adjoint(); };
            record(psi, noisy(encode(code, logical)), noisy(encode(code, logical, pure_gauge)),
                   noisy(raw.embed(psi)));
        }
        return acc.finish();
    }

    const RotationChannel channel = build_channel(sys, thetas);
    std::mt19937_64 rng(trial_seed(seed, 0));
    const ComplexVector psi = random_pure_state(p, rng);
    const ComplexMatrix logical = psi * psi.adjoint();
    ComplexMatrix rho_mixed = encode(code, logical);
    ComplexMatrix rho_pure = encode(code, logical, pure_gauge);
    ComplexMatrix rho_raw = raw.embed(psi);
    for (int t = 0; t < trials; ++t) {
        rho_mixed = crc::apply(channel, rho_mixed);
        rho_pure = crc::apply(channel, rho_pure);
        rho_raw = crc::apply(channel, rho_raw);
        record(psi, rho_mixed, rho_pure, rho_raw);
    }
    return acc.finish();
}

}  // namespace crc
