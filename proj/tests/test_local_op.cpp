#include <doctest.h>

#include "qdm/linalg.hpp"
#include "qdm/local_op.hpp"
#include "qdm/ribbon_ops.hpp"

using namespace qdm;

TEST_CASE("support index codec") {
    FiniteGroup g = FiniteGroup::builtin("s3");
    SupportIndex idx(g, {2, 5, 9});
    CHECK(idx.dim() == 216);
    int labels[3];
    for (std::uint64_t k = 0; k < idx.dim(); ++k) {
        idx.decode(k, labels);
        CHECK(idx.encode(labels) == k);
    }
    CHECK(idx.position(5) == 1);
    CHECK(idx.position(7) == -1);
    CHECK_THROWS_AS(SupportIndex(g, {3, 3}), Error);
}

TEST_CASE("edge operators") {
    FiniteGroup g = FiniteGroup::builtin("s3");
    const int n = g.order();
    SUBCASE("projectors are idempotent and resolve the identity") {
        LocalOperator sum = edge_op_proj(g, 0, 0);
        for (int x = 1; x < n; ++x) sum = sum + edge_op_proj(g, 0, x);
        CHECK(LocalOperator::deviation(sum, identity_on(g, {0})) == 0.0);
        for (int x = 0; x < n; ++x) {
            LocalOperator t = edge_op_proj(g, 0, x);
            CHECK(LocalOperator::deviation(t * t, t) == 0.0);
        }
    }
    SUBCASE("left and right actions commute; right is an antihomomorphism twist") {
        for (int h : {1, 3, 4})
            for (int k : {2, 5}) {
                LocalOperator lh = edge_op_left(g, 0, h), rk = edge_op_right(g, 0, k);
                CHECK(LocalOperator::deviation(lh * rk, rk * lh) == 0.0);
                CHECK(LocalOperator::deviation(edge_op_right(g, 0, h) * edge_op_right(g, 0, k),
                                               edge_op_right(g, 0, g.mul(h, k))) == 0.0);
                CHECK(LocalOperator::deviation(edge_op_left(g, 0, h) * edge_op_left(g, 0, k),
                                               edge_op_left(g, 0, g.mul(h, k))) == 0.0);
            }
    }
    SUBCASE("L and R are unitary") {
        for (int h = 0; h < n; ++h) {
            LocalOperator l = edge_op_left(g, 0, h);
            CHECK(LocalOperator::deviation(l * l.adjoint(), identity_on(g, {0})) == 0.0);
        }
    }
}

TEST_CASE("operator algebra across supports") {
    FiniteGroup g = FiniteGroup::builtin("z3");
    // A on edge 0, B on edge 1: the product must equal the kron oracle on {0,1}.
    LocalOperator a = edge_op_left(g, 0, 1);
    LocalOperator b = edge_op_proj(g, 1, 2);
    LocalOperator ab = a * b;
    CHECK(ab.support() == std::vector<int>{0, 1});
    // Digit 0 is least significant, so |labels> = |g0 + 3 g1> and the joint
    // matrix is kron(B, A) in Eigen's row-major kron convention.
    Matrix expect = kron(b.dense_matrix(), a.dense_matrix());
    CHECK(max_abs(ab.dense_matrix() - expect) == 0.0);
    // Operators on disjoint supports commute.
    CHECK(LocalOperator::deviation(a * b, b * a) == 0.0);
    // Overlapping non-commuting example.
    LocalOperator t = edge_op_proj(g, 0, 0);
    CHECK(LocalOperator::deviation(a * t, t * a) > 0.5);
}

TEST_CASE("deviation compares on the union support") {
    FiniteGroup g = FiniteGroup::builtin("z2");
    LocalOperator id0 = identity_on(g, {0});
    LocalOperator id01 = identity_on(g, {0, 1});
    CHECK(LocalOperator::approx_equal(id0, id01, 1e-12));
    CHECK(LocalOperator::deviation(edge_op_left(g, 0, 1), edge_op_left(g, 1, 1)) == 1.0);
}

TEST_CASE("state vector application") {
    FiniteGroup g = FiniteGroup::builtin("z3");
    auto p = Patch::make(2, 2, Boundary::torus);
    std::vector<int> labels(p->edge_count(), 0);
    StateVector psi = StateVector::basis_state(p, g, labels);
    CHECK(psi.norm() == 1.0);
    SUBCASE("left action shifts one edge label") {
        StateVector out = psi.apply(edge_op_left(g, 3, 2));
        std::vector<int> expect_labels = labels;
        expect_labels[3] = 2;
        StateVector expect = StateVector::basis_state(p, g, expect_labels);
        CHECK(std::abs(StateVector::inner(expect, out) - Complex(1, 0)) < 1e-14);
        CHECK(out.amps().size() == 1);
    }
    SUBCASE("projector kills mismatched labels") {
        StateVector out = psi.apply(edge_op_proj(g, 3, 2));
        CHECK(out.amps().empty());
    }
    SUBCASE("superposition bookkeeping") {
        StateVector a = psi;
        a.add_scaled(psi.apply(edge_op_left(g, 0, 1)), Complex(0, 1));
        CHECK(a.norm() == doctest::Approx(std::sqrt(2.0)));
        CHECK(std::abs(StateVector::inner(a, a) - Complex(2, 0)) < 1e-14);
    }
}
