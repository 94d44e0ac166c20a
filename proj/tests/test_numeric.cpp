#include "doctest.h"

#include "crc/error.hpp"
#include "crc/numeric.hpp"

#include <numbers>
#include <random>

using namespace crc;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix pauli_half_x() { return (ComplexMatrix(2, 2) << 0, 0.5, 0.5, 0).finished(); }
ComplexMatrix pauli_half_y() { return (ComplexMatrix(2, 2) << 0, -0.5 * I, 0.5 * I, 0).finished(); }
ComplexMatrix pauli_half_z() { return (ComplexMatrix(2, 2) << 0.5, 0, 0, -0.5).finished(); }

ComplexMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index k = 0; k < c; ++k) m(i, k) = Complex(g(rng), g(rng));
    return m;
}

ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(dim, dim, rng);
    return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("kron follows the (a_kl B) block ordering") {
    const ComplexMatrix one = ComplexMatrix::Constant(1, 1, 1.0);
    const ComplexMatrix b = pauli_half_y();
    CHECK(kron(one, b) == b);

    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect.diagonal() << 0.5, 0.5, -0.5, -0.5;
    CHECK(kron(pauli_half_z(), id) == expect);
    expect.diagonal() << 0.5, -0.5, 0.5, -0.5;
    CHECK(kron(id, pauli_half_z()) == expect);

    std::mt19937_64 rng(3);
    const ComplexMatrix a = random_matrix(2, 3, rng);
    const ComplexMatrix c = random_matrix(3, 2, rng);
    const ComplexMatrix r = kron(a, c);
    for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index l = 0; l < 3; ++l) CHECK(r.block(k * 3, l * 2, 3, 2) == a(k, l) * c);
}

TEST_CASE("kron algebra: associativity and mixed products") {
    std::mt19937_64 rng(11);
    const ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(2, 2, rng);
    const ComplexMatrix d = random_matrix(3, 3, rng);
    CHECK(kron(kron(a, b), c).isApprox(kron(a, kron(b, c)), 1e-14));
    CHECK(frobenius_dist(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);

    const SparseOperator sa = to_sparse(a), sb = to_sparse(b);
    CHECK(to_dense(kron(sa, sb)) == kron(a, b));
}

TEST_CASE("dagger") {
    CHECK(dagger(ComplexMatrix::Identity(3, 3)) == ComplexMatrix::Identity(3, 3));
    CHECK(dagger(pauli_half_y()) == pauli_half_y());
    const ComplexMatrix jp = pauli_half_x() + I * pauli_half_y();
    CHECK(dagger(jp) == pauli_half_x() - I * pauli_half_y());
}

TEST_CASE("herm_expm") {
    CHECK(frobenius_dist(herm_expm(pauli_half_z(), 0.0), ComplexMatrix::Identity(2, 2)) < 1e-15);
    CHECK(frobenius_dist(herm_expm(pauli_half_z(), 2.0 * std::numbers::pi), -ComplexMatrix::Identity(2, 2)) < 1e-14);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix h = random_hermitian(6, rng);
        const ComplexMatrix u = herm_expm(h, 0.7);
        CHECK(frobenius_dist(u * herm_expm(h, -0.7), ComplexMatrix::Identity(6, 6)) < 1e-9);
        CHECK(frobenius_dist(u.adjoint() * u, ComplexMatrix::Identity(6, 6)) < 1e-9);
    }

    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(herm_expm(bad, 1.0), Error);
    try {
        herm_expm(bad, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
}

TEST_CASE("null_space") {
    CHECK(null_space(ComplexMatrix::Identity(4, 4)).cols() == 0);

    const ComplexMatrix z = null_space(ComplexMatrix::Zero(3, 3));
    CHECK(z.cols() == 3);
    CHECK(frobenius_dist(z.adjoint() * z, ComplexMatrix::Identity(3, 3)) < 1e-12);

    // Commutator map of the spin-1/2 triple; Schur's lemma leaves only the scalars.
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    ComplexMatrix stacked(12, 4);
    int row = 0;
    for (const ComplexMatrix& g : {pauli_half_x(), pauli_half_y(), pauli_half_z()}) {
        stacked.middleRows(row, 4) = kron(g.transpose(), id) - kron(id, g);
        row += 4;
    }
    const ComplexMatrix k = null_space(stacked);
    REQUIRE(k.cols() == 1);
    CHECK(std::abs(k(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(k(3, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);

    std::mt19937_64 rng(17);
    const ComplexMatrix m = random_matrix(5, 3, rng) * random_matrix(3, 8, rng);
    const ComplexMatrix n = null_space(m);
    CHECK(n.cols() == 5);
    const Tolerances tol;
    for (Eigen::Index c = 0; c < n.cols(); ++c) CHECK((m * n.col(c)).norm() <= tol.rank_tol * m.norm());
    CHECK((n.adjoint() * n - ComplexMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= tol.rank_tol);
    for (Eigen::Index c = 0; c < n.cols(); ++c) {
        Eigen::Index first = 0;
        while (std::abs(n(first, c)) < 1e-10) ++first;
        CHECK(std::abs(n(first, c).imag()) < 1e-15);
        CHECK(n(first, c).real() > 0.0);
    }
    CHECK(null_space(m) == n);
}

TEST_CASE("null_space_gram") {
    std::mt19937_64 rng(19);
    const ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(random_matrix(9, 9, rng)).householderQ();
    const ComplexMatrix v = Eigen::HouseholderQR<ComplexMatrix>(random_matrix(9, 9, rng)).householderQ();
    // The 3e-6 direction passes the loose eigenvalue cut but is not in the kernel.
    Eigen::VectorXd s = Eigen::VectorXd::Zero(9);
    s << 3.0, 1.0, 0.5, 3e-6, 0, 0, 0, 0, 0;
    const ComplexMatrix m = u * s.cast<Complex>().asDiagonal() * v.adjoint();
    const auto map = [&](const ComplexMatrix& cols) { return ComplexMatrix(m * cols); };

    const ComplexMatrix g = null_space_gram(m.adjoint() * m, map);
    REQUIRE(g.cols() == 5);
    const ComplexMatrix direct = null_space(m);
    CHECK(frobenius_dist(g * g.adjoint(), direct * direct.adjoint()) < 1e-9);
    CHECK(frobenius_dist(g.adjoint() * g, ComplexMatrix::Identity(5, 5)) < 1e-12);
    CHECK((m * g).norm() <= 1e-10 * 3.0);

    const auto zero_map = [](const ComplexMatrix& c) { return ComplexMatrix(ComplexMatrix::Zero(c.rows(), c.cols())); };
    CHECK(null_space_gram(ComplexMatrix::Zero(3, 3), zero_map).cols() == 3);
    CHECK(null_space_gram(ComplexMatrix::Identity(3, 3), [](const ComplexMatrix& c) { return c; }).cols() == 0);
    CHECK_THROWS_AS(null_space_gram(ComplexMatrix::Zero(2, 3), [](const ComplexMatrix& c) { return c; }), Error);
}

TEST_CASE("orthocomplement_basis") {
    const ComplexMatrix ambient = ComplexMatrix::Identity(3, 3).leftCols(2);
    CHECK(orthocomplement_basis(ComplexMatrix(3, 0), ambient).cols() == 2);
    CHECK(orthocomplement_basis(ambient, ambient).cols() == 0);

    // V_0 of two qubits is span{|-+>, |+->}; J_+|--> is their sum.
    ComplexMatrix v0 = ComplexMatrix::Zero(4, 2);
    v0(1, 0) = 1.0;
    v0(2, 1) = 1.0;
    ComplexMatrix lifted = ComplexMatrix::Zero(4, 1);
    lifted(1, 0) = 1.0;
    lifted(2, 0) = 1.0;
    const ComplexMatrix comp = orthocomplement_basis(lifted, v0);
    REQUIRE(comp.cols() == 1);
    ComplexVector singlet = ComplexVector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    CHECK((comp.col(0) - singlet).norm() < 1e-14);

    std::mt19937_64 rng(23);
    const ComplexMatrix some = random_matrix(6, 2, rng);
    const ComplexMatrix rest = orthocomplement_basis(some);
    CHECK(rest.cols() == 4);
    CHECK((rest.adjoint() * some).norm() < 1e-10 * some.norm());

    ComplexMatrix outside = ComplexMatrix::Zero(3, 1);
    outside(2, 0) = 1.0;
    try {
        orthocomplement_basis(outside, ambient);
        FAIL("expected InconsistentSpan");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentSpan);
    }
}

TEST_CASE("frobenius_dist") {
    std::mt19937_64 rng(29);
    const ComplexMatrix a = random_matrix(3, 3, rng);
    CHECK(frobenius_dist(a, a) == 0.0);
    CHECK(frobenius_dist(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(frobenius_dist(commutator(pauli_half_x(), pauli_half_y()), I * pauli_half_z()) == 0.0);
    try {
        frobenius_dist(a, ComplexMatrix::Zero(2, 3));
        FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
}

TEST_CASE("vec is column stacking") {
    std::mt19937_64 rng(31);
    const ComplexMatrix a = random_matrix(3, 3, rng), x = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
    CHECK((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).norm() < 1e-12);
    CHECK(unvec(vec(x), 3) == x);
    CHECK(vec(x)(1) == x(1, 0));
}

TEST_CASE("sparse round trip and drop tolerance") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 1) = 0.5;
    a(2, 2) = Complex(0.0, -1.5);
    a(1, 0) = 1e-14;
    CHECK(to_dense(to_sparse(a)) == a);
    const SparseOperator dropped = to_sparse(a, 1e-12);
    CHECK(dropped.nonZeros() == 2);
}

TEST_CASE("tolerances validate") {
    Tolerances t;
    CHECK_NOTHROW(t.validate());
    t.rank_tol = 1.0;
    CHECK_THROWS_AS(t.validate(), Error);
    t.rank_tol = 1e-10;
    t.verify_tol = -1.0;
    CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("finite check") {
    ComplexMatrix a = ComplexMatrix::Identity(2, 2);
    CHECK(all_finite(a));
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(all_finite(a));
}
