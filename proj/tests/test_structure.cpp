#include "doctest.h"

#include "oracles.hpp"

#include "crc/error.hpp"
#include "crc/structure.hpp"
#include "crc/verify.hpp"

#include <random>

using namespace crc;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

struct Row {
    int j2;
    std::uint64_t p, q;
    bool operator==(const Row&) const = default;
};

std::vector<Row> rows_of(const std::vector<Multiplicity>& ms) {
    std::vector<Row> out;
    for (const Multiplicity& m : ms) out.push_back({m.j.twice(), m.p, m.q});
    return out;
}

// p_j from successive differences of the enumerated weight counts.
std::vector<Row> oracle_rows(int n, int d) {
    const auto w = oracle::enumerate_weights(n, d);
    const int top = n * (d - 1);
    std::vector<Row> out;
    for (int j2 = top % 2; j2 <= top; j2 += 2) {
        const std::uint64_t here = w.at(j2);
        const std::uint64_t above = w.count(j2 + 2) ? w.at(j2 + 2) : 0;
        if (here > above) out.push_back({j2, here - above, static_cast<std::uint64_t>(j2 + 1)});
    }
    return out;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("weight decomposition") {
    auto dims = [](int n, int d) {
        std::vector<Eigen::Index> out;
        for (const WeightSpace& w : weight_decomposition(n, d)) out.push_back(w.dim());
        return out;
    };
    CHECK(dims(4, 2) == std::vector<Eigen::Index>{1, 4, 6, 4, 1});
    CHECK(dims(2, 3) == std::vector<Eigen::Index>{1, 2, 3, 2, 1});
    for (int d = 2; d <= 6; ++d) CHECK(dims(1, d) == std::vector<Eigen::Index>(static_cast<std::size_t>(d), 1));

    const auto spaces = weight_decomposition(3, 3);
    std::vector<int> seen(27, 0);
    HalfInt expect_m = h(-6);
    for (const WeightSpace& w : spaces) {
        CHECK(w.m == expect_m);
        expect_m += h(2);
        CHECK(std::is_sorted(w.indices.begin(), w.indices.end()));
        for (Eigen::Index i : w.indices) ++seen[static_cast<std::size_t>(i)];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

TEST_CASE("weight_dim against enumeration and binomials") {
    CHECK(weight_dim(4, 2, h(0)) == 6);
    CHECK(weight_dim(3, 3, h(0)) == 7);
    for (auto [n, d] : {std::pair{1, 2}, {5, 2}, {8, 2}, {3, 3}, {4, 3}, {3, 4}, {2, 5}, {4, 4}}) {
        CAPTURE(n);
        CAPTURE(d);
        for (const auto& [twice, count] : oracle::enumerate_weights(n, d)) {
            CHECK(weight_dim(n, d, h(twice)) == count);
        }
        CHECK(weight_dim(n, d, h(n * (d - 1))) == 1);
    }
    for (int n = 1; n <= 20; ++n) {
        for (int k = 0; k <= n; ++k) CHECK(weight_dim(n, 2, h(2 * k - n)) == oracle::binomial(n, k));
    }
    CHECK(code_of([] { weight_dim(3, 2, h(5)); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { weight_dim(3, 2, h(0)); }) == ErrorCode::OutOfRange);
}

TEST_CASE("predicted multiplicities") {
    CHECK(rows_of(predicted_multiplicities(4, 2)) == std::vector<Row>{{0, 2, 1}, {2, 3, 3}, {4, 1, 5}});
    CHECK(rows_of(predicted_multiplicities(3, 2)) == std::vector<Row>{{1, 2, 2}, {3, 1, 4}});
    CHECK(rows_of(predicted_multiplicities(3, 3)) == std::vector<Row>{{0, 1, 1}, {2, 3, 3}, {4, 2, 5}, {6, 1, 7}});
    for (int n = 1; n <= 7; ++n) {
        for (int d = 2; d <= 4; ++d) {
            CAPTURE(n);
            CAPTURE(d);
            CHECK(rows_of(predicted_multiplicities(n, d)) == oracle_rows(n, d));
        }
    }
}

TEST_CASE("structure reports") {
    const StructureReport r4 = structure_report(4, 2);
    REQUIRE(r4.rows.size() == 3);
    CHECK(r4.total_dim == 16);
    CHECK(r4.commutant_dim == 14);
    CHECK(r4.algebra_dim == 35);
    CHECK(r4.rows[1].pq() == 9);
    CHECK(r4.rows[1].p_sq() == 9);

    for (int d = 2; d <= 6; ++d) {
        const StructureReport r = structure_report(1, d);
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0].j.twice() == d - 1);
        CHECK(r.rows[0].p == 1);
        CHECK(r.rows[0].q == static_cast<std::uint64_t>(d));
        CHECK(r.total_dim == static_cast<std::uint64_t>(d));
        CHECK(r.commutant_dim == 1);
    }

    const StructureReport r5 = structure_report(5, 2);
    std::vector<Row> rows;
    for (const StructureRow& row : r5.rows) rows.push_back({row.j.twice(), row.p, row.q});
    CHECK(rows == std::vector<Row>{{1, 5, 2}, {3, 4, 4}, {5, 1, 6}});
    CHECK(r5.total_dim == 32);
    CHECK(r5.commutant_dim == 42);
}

TEST_CASE("two-qubit basis by hand") {
    const CollectiveSystem sys = build_collective_system(2, 2);
    const StructureDecomposition dec = construct_irrep_basis(sys);
    REQUIRE(dec.blocks.size() == 2);
    const double r = 1.0 / std::sqrt(2.0);

    ComplexVector singlet = ComplexVector::Zero(4);
    singlet << 0, r, -r, 0;
    CHECK(dec.blocks[0].j == h(0));
    CHECK((dec.vector(0, 0, 0) - singlet).norm() < 1e-14);

    ComplexVector e0 = ComplexVector::Zero(4), t0 = ComplexVector::Zero(4), e3 = ComplexVector::Zero(4);
    e0(0) = 1.0;
    t0 << 0, r, r, 0;
    e3(3) = 1.0;
    CHECK(dec.blocks[1].j == h(2));
    CHECK((dec.vector(1, 0, 0) - e0).norm() < 1e-14);
    CHECK((dec.vector(1, 0, 1) - t0).norm() < 1e-14);
    CHECK((dec.vector(1, 0, 2) - e3).norm() < 1e-14);

    ComplexMatrix u(4, 4);
    u << singlet, e0, t0, e3;
    CHECK(frobenius_dist(dec.dense_unitary(), u) < 1e-14);
}

TEST_CASE("single qudit basis is the identity") {
    for (int d = 2; d <= 4; ++d) {
        const CollectiveSystem sys = build_collective_system(1, d);
        const StructureDecomposition dec = construct_irrep_basis(sys);
        REQUIRE(dec.blocks.size() == 1);
        CHECK(dec.blocks[0].p == 1);
        CHECK(dec.blocks[0].q == d);
        CHECK(frobenius_dist(dec.dense_unitary(), ComplexMatrix::Identity(d, d)) < 1e-14);
    }
}

TEST_CASE("four-qubit census and projection ranks") {
    const CollectiveSystem sys = build_collective_system(4, 2);
    const StructureDecomposition dec = construct_irrep_basis(sys);
    std::vector<Eigen::Index> p;
    for (const IrrepBlock& b : dec.blocks) p.push_back(b.p);
    CHECK(p == std::vector<Eigen::Index>{2, 3, 1});

    const auto proj = central_projections(dec);
    REQUIRE(proj.size() == 3);
    std::vector<Eigen::Index> ranks;
    ComplexMatrix sum = ComplexMatrix::Zero(16, 16);
    for (const CentralProjection& c : proj) {
        const ComplexMatrix pj = to_dense(c.projection);
        ranks.push_back(std::lround(pj.trace().real()));
        CHECK(numerical_rank(pj) == ranks.back());
        CHECK(frobenius_dist(pj, casimir_spectral_projection(sys, c.j)) < 1e-9);
        sum += pj;
    }
    CHECK(ranks == std::vector<Eigen::Index>{2, 9, 5});
    CHECK(frobenius_dist(sum, ComplexMatrix::Identity(16, 16)) < 1e-12);
}

TEST_CASE("two-qubit and single-qubit projections") {
    const CollectiveSystem one = build_collective_system(1, 2);
    const auto p1 = central_projections(construct_irrep_basis(one));
    REQUIRE(p1.size() == 1);
    CHECK(frobenius_dist(to_dense(p1[0].projection), ComplexMatrix::Identity(2, 2)) < 1e-15);

    const CollectiveSystem two = build_collective_system(2, 2);
    const auto p2 = central_projections(construct_irrep_basis(two));
    REQUIRE(p2.size() == 2);
    CHECK(numerical_rank(to_dense(p2[0].projection)) == 1);
    CHECK(numerical_rank(to_dense(p2[1].projection)) == 3);
}

TEST_CASE("conjugate_to_blocks") {
    const CollectiveSystem two = build_collective_system(2, 2);
    const StructureDecomposition d2 = construct_irrep_basis(two);

    const BlockConjugation id = conjugate_to_blocks(d2, ComplexMatrix::Identity(4, 4));
    CHECK(id.residual < 1e-14);
    for (const ComplexMatrix& b : id.blocks) CHECK(frobenius_dist(b, ComplexMatrix::Identity(b.rows(), b.cols())) < 1e-14);

    const BlockConjugation jz = conjugate_to_blocks(d2, to_dense(two.jz));
    REQUIRE(jz.blocks.size() == 2);
    CHECK(jz.blocks[0].norm() < 1e-14);
    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag.diagonal() << -1.0, 0.0, 1.0;
    CHECK(frobenius_dist(jz.blocks[1], diag) < 1e-14);
    CHECK(jz.residual <= 1e-10);

    const CollectiveSystem three = build_collective_system(3, 2);
    const StructureDecomposition d3 = construct_irrep_basis(three);
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    const ComplexMatrix a = g(rng) * to_dense(three.jx) + g(rng) * to_dense(three.jy) + g(rng) * to_dense(three.jz);
    const BlockConjugation c = conjugate_to_blocks(d3, a);
    CHECK(c.residual <= 1e-10);
    const ComplexMatrix& half = c.blocks[0];  // j = 1/2, p = 2, q = 2
    REQUIRE(half.rows() == 4);
    CHECK(frobenius_dist(half.block(0, 0, 2, 2), half.block(2, 2, 2, 2)) < 1e-10);
    CHECK(half.block(0, 2, 2, 2).norm() < 1e-10);
    CHECK(c.linked_deviation < 1e-10);

    CHECK(code_of([&] { conjugate_to_blocks(d3, ComplexMatrix::Identity(3, 3)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("basis invariants across sizes") {
    for (auto [n, d] : {std::pair{2, 2}, {5, 2}, {6, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}}) {
        CAPTURE(n);
        CAPTURE(d);
        const CollectiveSystem sys = build_collective_system(n, d);
        const StructureDecomposition dec = construct_irrep_basis(sys);
        const BasisInvariants inv = check_basis_invariants(dec);
        CHECK(inv.vector_count == sys.dim);
        CHECK(inv.census_matches);
        CHECK(inv.unitarity <= 1e-9 * static_cast<double>(sys.dim));
        CHECK(inv.jz_eigen <= 1e-9);
        CHECK(inv.casimir_eigen <= 1e-9);
        CHECK(inv.casimir_spread <= 1e-9);
        CHECK(inv.weighted_shift <= 1e-9);
        CHECK(inv.shift_phase <= 1e-9);
        CHECK(inv.min_shift > 0.0);
        CHECK(inv.annihilation <= 1e-9);

        // Against dense J^2 from the digit oracle, independent of the sparse path.
        const oracle::Spin sp = oracle::spin(d);
        const oracle::Mat x = oracle::collective(sp.x, n), y = oracle::collective(sp.y, n),
                          z = oracle::collective(sp.z, n);
        const oracle::Mat cas = x * x + y * y + z * z;
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            const double j = dec.blocks[b].j.value();
            const ComplexVector v = dec.vector(b, dec.blocks[b].p - 1, dec.blocks[b].q - 1);
            CHECK((cas * v - j * (j + 1) * v).norm() < 1e-9);
        }
    }
}

TEST_CASE("decomposition is deterministic") {
    const CollectiveSystem sys = build_collective_system(5, 2);
    const StructureDecomposition a = construct_irrep_basis(sys);
    const StructureDecomposition b = construct_irrep_basis(sys);
    CHECK(a.dense_unitary() == b.dense_unitary());
}

TEST_CASE("column ordering is j, mu, m") {
    const CollectiveSystem sys = build_collective_system(4, 2);
    const StructureDecomposition dec = construct_irrep_basis(sys);
    Eigen::Index expect = 0;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b)
        for (Eigen::Index mu = 0; mu < dec.blocks[b].p; ++mu)
            for (Eigen::Index k = 0; k < dec.blocks[b].q; ++k) CHECK(dec.column(b, mu, k) == expect++);
    CHECK(frobenius_dist(to_dense(dec.unitary()), dec.dense_unitary()) == 0.0);
}

TEST_CASE("lookups") {
    const CollectiveSystem sys = build_collective_system(3, 2);
    const StructureDecomposition dec = construct_irrep_basis(sys);
    CHECK(dec.block_index(h(3)) == 1);
    CHECK(code_of([&] { dec.block_index(h(2)); }) == ErrorCode::UnknownBlock);
    CHECK(dec.weight_space(h(-1)).dim() == 3);
    CHECK(code_of([&] { dec.weight_space(h(0)); }) == ErrorCode::OutOfRange);
}

TEST_CASE("linked-block identity") {
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {4, 3}}) {
        const CollectiveSystem sys = build_collective_system(n, d);
        CHECK(linked_block_deviation(construct_irrep_basis(sys), 3, 2) <= 1e-9);
    }
}
