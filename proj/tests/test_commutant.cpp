#include "doctest.h"

#include "oracles.hpp"

#include "crc/channel.hpp"
#include "crc/commutant.hpp"
#include "crc/error.hpp"

using namespace crc;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("commutant of a single spin is the scalars") {
    const SpinRep rep = make_spin_rep(2);
    const CommutantBasis c = brute_force_commutant({rep.sigma_x, rep.sigma_y, rep.sigma_z});
    REQUIRE(c.elements.size() == 1);
    CHECK(frobenius_dist(c.elements[0], ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("brute-force commutant sizes and pair sufficiency") {
    for (auto [n, d, expect] : {std::tuple{2, 2, 2u}, {3, 2, 5u}, {4, 2, 14u}, {2, 3, 3u}, {3, 3, 15u}}) {
        CAPTURE(n);
        CAPTURE(d);
        const CollectiveSystem sys = build_collective_system(n, d);
        const auto gens = collective_generators(sys);
        const CommutantBasis all = brute_force_commutant(gens);
        CHECK(all.elements.size() == expect);
        const CommutantBasis pair = brute_force_commutant({gens[0], gens[2]});
        const SpanComparison cmp = span_equal(all.elements, pair.elements);
        CHECK(cmp.equal);
        CHECK(cmp.gap <= 1e-8);
        CHECK(max_commutator_residual(all.elements, gens) <= 1e-9);
        CHECK(adjoint_closure_gap(all.elements) <= 1e-9);
        const oracle::Mat st = oracle::stack(all.elements);
        CHECK(frobenius_dist(st.adjoint() * st, ComplexMatrix::Identity(st.cols(), st.cols())) < 1e-10);
    }
}

TEST_CASE("algebra dimension") {
    const SpinRep rep = make_spin_rep(2);
    const AlgebraDimension a1 = algebra_dimension({rep.sigma_x, rep.sigma_y, rep.sigma_z});
    CHECK(a1.dimension == 4);
    CHECK(a1.stabilized);
    for (auto [n, expect] : {std::pair{2, 10}, {3, 20}, {4, 35}}) {
        const CollectiveSystem sys = build_collective_system(n, 2);
        const AlgebraDimension a = algebra_dimension(collective_generators(sys));
        CHECK(a.dimension == expect);
        CHECK(a.stabilized);
    }
    // Degree 1 alone cannot reach the full algebra.
    const CollectiveSystem sys = build_collective_system(3, 2);
    const AlgebraDimension low = algebra_dimension(collective_generators(sys), {}, 1);
    CHECK_FALSE(low.stabilized);
    CHECK(low.dimension == 4);
}

TEST_CASE("span_equal") {
    const std::vector<ComplexMatrix> a{ComplexMatrix::Identity(3, 3)};
    const SpanComparison same = span_equal(a, a);
    CHECK(same.equal);
    CHECK(same.gap == 0.0);
    CHECK(span_equal(a, {2.0 * ComplexMatrix::Identity(3, 3)}).equal);

    ComplexMatrix e = ComplexMatrix::Zero(3, 3);
    e(0, 0) = 1.0;
    const SpanComparison diff = span_equal(a, {e});
    CHECK_FALSE(diff.equal);
    // Projectors onto two lines at 1/sqrt(3) overlap: gap^2 = 2 - 2/3
    CHECK(diff.gap == doctest::Approx(std::sqrt(4.0 / 3.0)));
    CHECK_FALSE(span_equal(a, {ComplexMatrix::Identity(3, 3), e}).equal);

    CHECK(code_of([&] { span_equal(a, {ComplexMatrix::Identity(2, 2)}); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("span_equal resolves small angles") {
    // Two lines separated by 1e-9 rad; the projector gap is sqrt(2) sin(angle).
    ComplexMatrix x = ComplexMatrix::Zero(2, 2), y = ComplexMatrix::Zero(2, 2);
    x(0, 0) = 1.0;
    const double eps = 1e-9;
    y(0, 0) = std::cos(eps);
    y(1, 0) = std::sin(eps);
    const SpanComparison cmp = span_equal({x}, {y});
    CHECK(cmp.gap == doctest::Approx(std::sqrt(2.0) * eps).epsilon(1e-6));
}

TEST_CASE("structural commutant") {
    const CollectiveSystem one = build_collective_system(1, 2);
    const StructureDecomposition d1 = construct_irrep_basis(one);
    const CommutantBasis s1 = structural_commutant_basis(d1);
    REQUIRE(s1.elements.size() == 1);
    CHECK(frobenius_dist(s1.elements[0], ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-14);

    const CollectiveSystem two = build_collective_system(2, 2);
    const StructureDecomposition d2 = construct_irrep_basis(two);
    const CommutantBasis s2 = structural_commutant_basis(d2);
    REQUIRE(s2.elements.size() == 2);
    const auto proj = central_projections(d2);
    CHECK(frobenius_dist(s2.elements[0], to_dense(proj[0].projection)) < 1e-14);
    CHECK(frobenius_dist(s2.elements[1], to_dense(proj[1].projection) / std::sqrt(3.0)) < 1e-14);

    const CollectiveSystem three = build_collective_system(3, 2);
    const StructureDecomposition d3 = construct_irrep_basis(three);
    const CommutantBasis s3 = structural_commutant_basis(d3);
    REQUIRE(s3.elements.size() == 5);
    // E_{mu nu} E_{nu' kappa} = delta_{nu nu'} E_{mu kappa} / sqrt(q) for the four j = 1/2 units.
    const double scale = std::sqrt(2.0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int mu = a / 2, nu = a % 2, nu2 = b / 2, kappa = b % 2;
            const ComplexMatrix prod = scale * s3.elements[static_cast<std::size_t>(a)] * s3.elements[static_cast<std::size_t>(b)];
            const ComplexMatrix expect = nu == nu2 ? ComplexMatrix(s3.elements[static_cast<std::size_t>(2 * mu + kappa)])
                                                   : ComplexMatrix::Zero(8, 8);
            CHECK(frobenius_dist(prod, expect) < 1e-12);
        }
    }
    CHECK(max_commutator_residual(s3.elements, collective_generators(three)) <= 1e-9);
}

TEST_CASE("double commutant recovers the algebra") {
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        const CollectiveSystem sys = build_collective_system(n, d);
        const StructureDecomposition dec = construct_irrep_basis(sys);
        const CommutantBasis comm = structural_commutant_basis(dec);
        const CommutantBasis back = brute_force_commutant(comm.elements);
        const AlgebraDimension alg = algebra_dimension(collective_generators(sys));
        CHECK(static_cast<Eigen::Index>(back.elements.size()) == alg.dimension);
        CHECK(static_cast<std::uint64_t>(alg.dimension) == structure_report(n, d).algebra_dim);
    }
}

TEST_CASE("oracle budgets") {
    const CollectiveSystem sys = build_collective_system(8, 2);
    const auto gens = collective_generators(sys);
    CHECK(code_of([&] { brute_force_commutant(gens); }) == ErrorCode::DimensionBudgetExceeded);
    CHECK(code_of([&] { algebra_dimension(gens); }) == ErrorCode::DimensionBudgetExceeded);
    CHECK(code_of([] { brute_force_commutant({}); }) == ErrorCode::ShapeMismatch);
}
