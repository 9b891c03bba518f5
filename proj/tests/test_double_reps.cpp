#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "qdm/double_reps.hpp"
#include "qdm/linalg.hpp"

using namespace qdm;

namespace {

// Character-based fusion oracle: expand the character of irrep_i x irrep_j
// in the linearly independent irrep characters by least squares.
std::vector<int> fusion_by_characters(const std::vector<Representation>& irreps, int i, int j) {
    const Eigen::Index npairs = static_cast<Eigen::Index>(irreps[0].mats.size());
    Eigen::MatrixXcd chars(npairs, static_cast<Eigen::Index>(irreps.size()));
    for (size_t k = 0; k < irreps.size(); ++k)
        for (Eigen::Index p = 0; p < npairs; ++p) chars(p, k) = irreps[k].mats[p].trace();
    Representation prod = tensor_rep(irreps[i], irreps[j]);
    Eigen::VectorXcd target(npairs);
    for (Eigen::Index p = 0; p < npairs; ++p) target(p) = prod.mats[p].trace();
    Eigen::VectorXcd sol = chars.colPivHouseholderQr().solve(target);
    std::vector<int> out(irreps.size());
    for (size_t k = 0; k < irreps.size(); ++k) {
        double re = sol(k).real();
        REQUIRE(std::abs(re - std::round(re)) < 1e-8);
        REQUIRE(std::abs(sol(k).imag()) < 1e-8);
        out[k] = static_cast<int>(std::round(re));
    }
    return out;
}

}  // namespace

TEST_CASE("z2 double has 4 one-dimensional irreps") {
    FiniteGroup g = FiniteGroup::builtin("z2");
    auto irreps = irreps_of_double(g);
    REQUIRE(irreps.size() == 4);
    for (const auto& r : irreps) {
        CHECK(r.dim == 1);
        CHECK(verify_rep(r).all_pass());
    }
    // Enumeration oracle: one irrep per (class, centralizer irrep) pair.
    ConjugacyData conj = conjugacy_classes(g);
    size_t count = 0;
    for (int c = 0; c < static_cast<int>(conj.classes.size()); ++c) {
        Subgroup cent = subgroup_as_group(g, centralizer(g, conj.representative[c]));
        count += unitary_irreps(cent.group).size();
    }
    CHECK(count == irreps.size());
}

TEST_CASE("s3 double: dims (1,1,2,3,3,2,2,2) in label order") {
    FiniteGroup g = FiniteGroup::builtin("s3");
    auto irreps = irreps_of_double(g);
    REQUIRE(irreps.size() == 8);
    std::vector<int> dims;
    for (const auto& r : irreps) dims.push_back(r.dim);
    CHECK(dims == std::vector<int>{1, 1, 2, 3, 3, 2, 2, 2});
    int dimsq = 0;
    for (int d : dims) dimsq += d * d;
    CHECK(dimsq == 36);
    for (const auto& r : irreps) CHECK(verify_rep(r).all_pass());
}

TEST_CASE("irrep count equals sum over classes of centralizer irrep counts") {
    for (const char* name : {"z3", "d4", "q8"}) {
        CAPTURE(name);
        FiniteGroup g = FiniteGroup::builtin(name);
        auto irreps = irreps_of_double(g);
        ConjugacyData conj = conjugacy_classes(g);
        size_t expect = 0;
        for (int c = 0; c < static_cast<int>(conj.classes.size()); ++c) {
            Subgroup cent = subgroup_as_group(g, centralizer(g, conj.representative[c]));
            expect += unitary_irreps(cent.group).size();
        }
        CHECK(irreps.size() == expect);
        int dimsq = 0;
        for (const auto& r : irreps) dimsq += r.dim * r.dim;
        CHECK(dimsq == g.order() * g.order());
    }
}

TEST_CASE("pairwise intertwiner dimensions form the identity matrix") {
    for (const char* name : {"z2", "z3", "s3"}) {
        CAPTURE(name);
        auto irreps = irreps_of_double(FiniteGroup::builtin(name));
        for (size_t i = 0; i < irreps.size(); ++i)
            for (size_t j = 0; j < irreps.size(); ++j) {
                int expect = i == j ? 1 : 0;
                CHECK(intertwiner_space(irreps[i], irreps[j]).dimension() == expect);
            }
    }
}

TEST_CASE("trivial tensor D is equivalent to D") {
    FiniteGroup g = FiniteGroup::builtin("s3");
    auto irreps = irreps_of_double(g);
    Representation triv = trivial_rep(g);
    for (const auto& d : irreps) {
        Representation prod = tensor_rep(triv, d);
        CHECK(prod.dim == d.dim);
        CHECK(intertwiner_space(prod, d).dimension() == 1);
    }
}

TEST_CASE("z2 charge x flux is the dyon") {
    FiniteGroup g = FiniteGroup::builtin("z2");
    auto irreps = irreps_of_double(g);
    // Label order: 0 = (class e, trivial) vacuum, 1 = (class e, sign) charge,
    // 2 = (class x, trivial) flux, 3 = (class x, sign) dyon.
    REQUIRE(irreps[0].label == std::make_pair(0, 0));
    REQUIRE(irreps[3].label == std::make_pair(1, 1));
    Representation prod = tensor_rep(irreps[1], irreps[2]);
    CHECK(intertwiner_space(irreps[3], prod).dimension() == 1);
    for (int k : {0, 1, 2}) CHECK(intertwiner_space(irreps[k], prod).dimension() == 0);
}

TEST_CASE("tensor products of s3 irreps pass verify_rep") {
    FiniteGroup g = FiniteGroup::builtin("s3");
    auto irreps = irreps_of_double(g);
    for (size_t i : {size_t(0), size_t(2), size_t(3)})
        for (size_t j : {size_t(2), size_t(5)}) {
            Representation prod = tensor_rep(irreps[i], irreps[j]);
            CHECK(verify_rep(prod).all_pass());
        }
}

TEST_CASE("direct sums") {
    FiniteGroup g = FiniteGroup::builtin("s3");
    auto irreps = irreps_of_double(g);
    Representation sum = direct_sum_rep(irreps[2], irreps[3]);
    CHECK(sum.dim == irreps[2].dim + irreps[3].dim);
    CHECK(verify_rep(sum).all_pass());
    // Character additivity on a random element.
    DoubleElement a = DoubleElement::basis(g, 2, 4);
    CHECK(std::abs(sum.evaluate(a).trace() - irreps[2].evaluate(a).trace() -
                   irreps[3].evaluate(a).trace()) < 1e-12);
}

TEST_CASE("fusion tables") {
    SUBCASE("z2 fusion is the z2 x z2 group ring") {
        auto irreps = irreps_of_double(FiniteGroup::builtin("z2"));
        auto fusion = fusion_multiplicities(irreps);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                int ones = 0;
                for (size_t k = 0; k < 4; ++k) {
                    CHECK((fusion[i][j][k] == 0 || fusion[i][j][k] == 1));
                    ones += fusion[i][j][k];
                }
                CHECK(ones == 1);  // each row of the multiplication table is a delta
            }
        // Abelian fusion: row j -> unique k defines a permutation for each i.
        for (size_t i = 0; i < 4; ++i) {
            std::vector<int> image;
            for (size_t j = 0; j < 4; ++j)
                for (size_t k = 0; k < 4; ++k)
                    if (fusion[i][j][k]) image.push_back(static_cast<int>(k));
            std::sort(image.begin(), image.end());
            CHECK(image == std::vector<int>{0, 1, 2, 3});
        }
    }
    SUBCASE("vacuum column is a delta") {
        auto irreps = irreps_of_double(FiniteGroup::builtin("s3"));
        auto fusion = fusion_multiplicities(irreps);
        for (size_t j = 0; j < irreps.size(); ++j)
            for (size_t k = 0; k < irreps.size(); ++k)
                CHECK(fusion[0][j][k] == (j == k ? 1 : 0));
    }
    SUBCASE("s3 dimension count and character oracle") {
        auto irreps = irreps_of_double(FiniteGroup::builtin("s3"));
        auto fusion = fusion_multiplicities(irreps);
        for (size_t i = 0; i < irreps.size(); ++i)
            for (size_t j = 0; j < irreps.size(); ++j) {
                int total = 0;
                for (size_t k = 0; k < irreps.size(); ++k)
                    total += fusion[i][j][k] * irreps[k].dim;
                CHECK(total == irreps[i].dim * irreps[j].dim);
                auto oracle_row = fusion_by_characters(irreps, static_cast<int>(i),
                                                       static_cast<int>(j));
                for (size_t k = 0; k < irreps.size(); ++k)
                    CHECK(fusion[i][j][k] == oracle_row[k]);
            }
    }
    SUBCASE("fusion associativity for z2, z3, s3, d4") {
        for (const char* name : {"z2", "z3", "s3", "d4"}) {
            CAPTURE(name);
            auto irreps = irreps_of_double(FiniteGroup::builtin(name));
            auto fusion = fusion_multiplicities(irreps);
            const size_t m = irreps.size();
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j)
                    for (size_t k = 0; k < m; ++k)
                        for (size_t l = 0; l < m; ++l) {
                            int lhs = 0, rhs = 0;
                            for (size_t mm = 0; mm < m; ++mm) {
                                lhs += fusion[i][j][mm] * fusion[mm][k][l];
                                rhs += fusion[j][k][mm] * fusion[i][mm][l];
                            }
                            CHECK(lhs == rhs);
                        }
        }
    }
}

TEST_CASE("braiding properties") {
    SUBCASE("B(trivial, D) is the plain swap") {
        FiniteGroup g = FiniteGroup::builtin("s3");
        auto irreps = irreps_of_double(g);
        Representation triv = trivial_rep(g);
        for (size_t k : {size_t(2), size_t(3)}) {
            BraidingMatrix b = braiding(triv, irreps[k]);
            CHECK(max_abs(b.matrix - swap_matrix(1, irreps[k].dim)) < 1e-12);
        }
    }
    SUBCASE("z2 charge-flux monodromy is -1") {
        auto irreps = irreps_of_double(FiniteGroup::builtin("z2"));
        BraidingMatrix bcf = braiding(irreps[1], irreps[2]);
        BraidingMatrix bfc = braiding(irreps[2], irreps[1]);
        Complex monodromy = (bfc.matrix * bcf.matrix)(0, 0);
        CHECK(std::abs(monodromy - Complex(-1.0, 0.0)) < 1e-12);
    }
    SUBCASE("braiding is unitary and intertwines the two tensor orders") {
        FiniteGroup g = FiniteGroup::builtin("s3");
        auto irreps = irreps_of_double(g);
        for (size_t i : {size_t(1), size_t(2), size_t(3)})
            for (size_t j : {size_t(2), size_t(5)}) {
                BraidingMatrix b = braiding(irreps[i], irreps[j]);
                const int d = irreps[i].dim * irreps[j].dim;
                CHECK(max_abs(b.matrix * b.matrix.adjoint() - Matrix::Identity(d, d)) < 1e-9);
                Representation t12 = tensor_rep(irreps[i], irreps[j]);
                Representation t21 = tensor_rep(irreps[j], irreps[i]);
                for (int p = 0; p < g.order() * g.order(); ++p)
                    CHECK(max_abs(b.matrix * t12.mats[p] - t21.mats[p] * b.matrix) < 1e-9);
            }
    }
    SUBCASE("yang-baxter on the dim-2 s3 irreps") {
        FiniteGroup g = FiniteGroup::builtin("s3");
        auto irreps = irreps_of_double(g);
        for (size_t k : {size_t(2), size_t(5), size_t(6), size_t(7)}) {
            const Representation& d = irreps[k];
            REQUIRE(d.dim == 2);
            Matrix b = braiding(d, d).matrix;
            Matrix id2 = Matrix::Identity(2, 2);
            Matrix b12 = kron(b, id2), b23 = kron(id2, b);
            CHECK(max_abs(b12 * b23 * b12 - b23 * b12 * b23) < 1e-9);
        }
    }
    SUBCASE("naturality in the first argument for z2 and s3") {
        for (const char* name : {"z2", "s3"}) {
            CAPTURE(name);
            FiniteGroup g = FiniteGroup::builtin(name);
            auto irreps = irreps_of_double(g);
            // For every pair and every basis intertwiner t in (Di' | Di):
            // B(Di', Dj) (t (x) I) = (I (x) t) B(Di, Dj).  Nontrivial spaces
            // only arise from equal labels here, so build a reducible source.
            for (size_t i = 0; i < irreps.size() && i < 3; ++i)
                for (size_t j = 0; j < irreps.size() && j < 3; ++j) {
                    Representation dsum = direct_sum_rep(irreps[i], irreps[i]);
                    auto tw = intertwiner_space(dsum, irreps[i]);
                    REQUIRE(tw.dimension() == 2);
                    BraidingMatrix bsum = braiding(dsum, irreps[j]);
                    BraidingMatrix b = braiding(irreps[i], irreps[j]);
                    for (const Matrix& t : tw.basis) {
                        Matrix lhs = bsum.matrix *
                                     kron(t, Matrix::Identity(irreps[j].dim, irreps[j].dim));
                        Matrix rhs = kron(Matrix::Identity(irreps[j].dim, irreps[j].dim), t) *
                                     b.matrix;
                        CHECK(max_abs(lhs - rhs) < 1e-9);
                    }
                }
        }
    }
}

TEST_CASE("verify_rep flags a perturbed representation") {
    FiniteGroup g = FiniteGroup::builtin("z3");
    auto irreps = irreps_of_double(g);
    Representation bad = irreps[1];
    bad.mats[4](0, 0) += 1e-3;
    RepReport rep = verify_rep(bad);
    CHECK_FALSE(rep.all_pass());
    bool hom_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "rep.homomorphism" && !c.pass) hom_failed = true;
    CHECK(hom_failed);
}

TEST_CASE("central idempotents select their blocks") {
    for (const char* name : {"z2", "z3", "s3"}) {
        CAPTURE(name);
        FiniteGroup g = FiniteGroup::builtin(name);
        auto irreps = irreps_of_double(g);
        auto cents = central_idempotents(g, irreps);
        CHECK(cents.size() == irreps.size());
        // Completeness: sum of the idempotents is the unit.
        Vector total = Vector::Zero(cents[0].coeffs.size());
        for (const auto& z : cents) total += z.coeffs;
        CHECK((total - unit(g).coeffs).cwiseAbs().maxCoeff() < 1e-9);
    }
}
