#include <doctest.h>

#include "fockalg/errors.hpp"
#include "fockalg/fock.hpp"
#include "fockalg/ideals.hpp"
#include "random.hpp"

using namespace fockalg;
using namespace fockalg::ideals;
using fockalg::testing::Rng;

namespace {

NcPolynomial e(int n, std::initializer_list<int> w, Complex c = 1.0) { return NcPolynomial::monomial(n, Word(w), c); }

CMatrix grade_rows(const CMatrix& basis, int n, int k) {
    const WordIndex idx(n, k);
    return basis.middleRows(static_cast<Eigen::Index>(idx.grade_offset(k)), static_cast<Eigen::Index>(idx.grade_size(k)));
}

/// Columns of the basis supported on grade k, restricted to that grade's rows.
CMatrix grade_component(const QuotientModel& model, int k) {
    const int n = model.spec.n();
    const WordIndex idx(n, model.spec.degree());
    std::vector<Eigen::Index> cols;
    for (Eigen::Index c = 0; c < model.dim(); ++c) {
        if (model.column_grades[static_cast<std::size_t>(c)] == k) cols.push_back(c);
    }
    CMatrix out(static_cast<Eigen::Index>(idx.grade_size(k)), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) =
            model.basis.col(cols[j]).segment(static_cast<Eigen::Index>(idx.grade_offset(k)), out.rows());
    }
    return out;
}

CMatrix random_unimodular_relations(Rng& rng, int n) {
    CMatrix lambda = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) lambda(j, i) = std::polar(1.0, fockalg::testing::uniform(rng, -3.14159, 3.14159));
    }
    return lambda;
}

}  // namespace

TEST_CASE("IdealSpec validation") {
    CHECK_THROWS_AS((void)IdealSpec(2, {NcPolynomial(2)}, 3), ArgumentError);
    CHECK_THROWS_AS((void)IdealSpec(2, {e(2, {1, 1, 1, 1})}, 3), ArgumentError);
    CHECK(IdealSpec(2, {e(2, {1}) + e(2, {2, 2})}, 3).homogeneous() == false);
    CHECK(IdealSpec(2, {e(2, {1, 2}) - e(2, {2, 1})}, 3).homogeneous());
}

TEST_CASE("q_commutation_spec examples") {
    const auto s1 = q_commutation_spec(2, uniform_relations(2, 1.0), 3);
    REQUIRE(s1.generators_count() == 1);
    CHECK(s1.generators()[0] == e(2, {2, 1}) - e(2, {1, 2}));
    const auto sm = q_commutation_spec(2, uniform_relations(2, -1.0), 3);
    CHECK(sm.generators()[0] == e(2, {2, 1}) + e(2, {1, 2}));
    const auto s3 = q_commutation_spec(3, uniform_relations(3, 1.0), 3);
    CHECK(s3.generators_count() == 3);
    CHECK(s3.generators()[1] == e(3, {3, 1}) - e(3, {1, 3}));
    CHECK(s3.homogeneous());
    CHECK_THROWS_AS((void)q_commutation_spec(1, CMatrix::Zero(1, 1), 3), ArgumentError);
}

TEST_CASE("ideal_subspace examples") {
    const CMatrix m1 = ideal_subspace(IdealSpec(1, {e(1, {1})}, 2));
    CHECK(m1.cols() == 2);
    CHECK(m1.col(0).head(1).norm() + m1.col(1).head(1).norm() < 1e-14);

    const CMatrix all = ideal_subspace(IdealSpec(2, {NcPolynomial::constant(2, 1.0)}, 3));
    CHECK(all.cols() == 15);
    CHECK(build_quotient(IdealSpec(2, {NcPolynomial::constant(2, 1.0)}, 3)).trivial());

    const CMatrix q2 = ideal_subspace(q_commutation_spec(2, uniform_relations(2, 1.0), 2));
    CHECK(q2.cols() == 1);
    CHECK(grade_rows(q2, 2, 2).norm() == doctest::Approx(1.0));
}

TEST_CASE("symmetric quotient grade dimensions") {
    const auto model = build_quotient(q_commutation_spec(2, uniform_relations(2, 1.0), 6));
    CHECK_FALSE(model.approximate);
    CHECK(model.reliable_degree == 5);
    const auto dims = model.grade_dimensions();
    for (int k = 0; k <= 6; ++k) CHECK(dims[static_cast<std::size_t>(k)] == k + 1);

    const auto model3 = build_quotient(q_commutation_spec(3, uniform_relations(3, 1.0), 4));
    const auto dims3 = model3.grade_dimensions();
    CHECK(dims3 == std::vector<int>{1, 3, 6, 10, 15});
}

TEST_CASE("q = -1 grade two component") {
    const auto model = build_quotient(q_commutation_spec(2, uniform_relations(2, -1.0), 3));
    CHECK(model.grade_dimensions()[2] == 3);
    CMatrix expected = CMatrix::Zero(4, 3);
    expected(0, 0) = 1.0;                                // e11
    expected(3, 1) = 1.0;                                // e22
    expected(1, 2) = 1.0 / std::sqrt(2.0);               // e12
    expected(2, 2) = -1.0 / std::sqrt(2.0);              // -e21
    CHECK(numerics::projector_distance(grade_component(model, 2), expected) < 1e-12);
}

TEST_CASE("single-letter quotient gives the unilateral shift") {
    const int n = 3;
    const int m = 5;
    const auto model = build_quotient(IdealSpec(n, {e(n, {2}), e(n, {3})}, m));
    CHECK(model.dim() == m + 1);
    const CMatrix& b1 = model.compressions[0];
    // in the basis e_1^{⊗k} (up to phases) B1 maps grade k to grade k+1 isometrically
    const CMatrix gram = b1.adjoint() * b1;
    for (Eigen::Index c = 0; c < model.dim(); ++c) {
        const double expected = model.column_grades[static_cast<std::size_t>(c)] < m ? 1.0 : 0.0;
        CHECK(std::abs(gram(c, c) - expected) < 1e-12);
    }
    CHECK(model.compressions[1].norm() < 1e-12);
    CHECK(model.compressions[2].norm() < 1e-12);
}

TEST_CASE("graded quotient matches the direct complement") {
    Rng rng(40);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = fockalg::testing::uniform_int(rng, 2, 3);
        const int m = n == 2 ? 5 : 3;
        std::vector<NcPolynomial> gens;
        for (int g = 0; g < fockalg::testing::uniform_int(rng, 1, 2); ++g) {
            gens.push_back(fockalg::testing::random_homogeneous(rng, n, fockalg::testing::uniform_int(rng, 1, 2), 3));
        }
        const IdealSpec spec(n, gens, m);
        const auto model = build_quotient(spec);
        const CMatrix direct = numerics::orthogonal_complement(ideal_subspace(spec), model.basis.rows());
        CHECK(numerics::projector_distance(model.basis, direct) < 1e-9);
        CHECK((model.basis.adjoint() * model.basis - CMatrix::Identity(model.dim(), model.dim())).norm() < 1e-12);
        CHECK(semi_invariance_residual(model) < 1e-10);
        for (int i = 1; i <= n; ++i) {
            const CMatrix s = CMatrix(compressed_mult_matrix(NcPolynomial::generator(n, i), m));
            CHECK((model.compressions[static_cast<std::size_t>(i - 1)] - model.basis.adjoint() * s * model.basis).norm() <
                  1e-12);
        }
    }
}

TEST_CASE("grade exactness across truncations") {
    const auto spec = IdealSpec(2, {e(2, {1, 2}) - e(2, {2, 1}, 0.5), e(2, {1, 1, 2})}, 4);
    const CMatrix small = ideal_subspace(spec);
    const CMatrix large = ideal_subspace(spec.with_degree(6));
    for (int k = 0; k <= 4 - 3 + 1; ++k) {
        const auto pick = [k](const CMatrix& b) {
            const CMatrix rows = grade_rows(b, 2, k);
            return numerics::orthonormal_basis(rows);
        };
        const CMatrix a = pick(small);
        const CMatrix b = pick(large);
        CHECK(a.cols() == b.cols());
        CHECK(numerics::projector_distance(a, b) < 1e-10);
    }
}

TEST_CASE("q-relations and symmetrized basis") {
    Rng rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = fockalg::testing::uniform_int(rng, 2, 3);
        const int m = n == 2 ? 6 : 4;
        const CMatrix lambda = random_unimodular_relations(rng, n);
        const auto model = build_quotient(q_commutation_spec(n, lambda, m));
        CHECK(q_relation_residual(model, lambda) < 1e-10);
        CHECK(semi_invariance_residual(model) < 1e-10);
        CHECK(numerics::projector_distance(symmetrized_basis(n, lambda, m), model.basis) < 1e-10);
    }
    const CMatrix sym = symmetrized_basis(2, uniform_relations(2, 1.0), 2);
    CHECK(sym.cols() == 6);
    CMatrix grade2 = CMatrix::Zero(7, 3);
    grade2(3, 0) = 1.0;
    grade2(6, 1) = 1.0;
    grade2(4, 2) = grade2(5, 2) = 1.0 / std::sqrt(2.0);
    CHECK(numerics::span_residual(sym, grade2) < 1e-14);
    CHECK(numerics::span_residual(sym, CMatrix(CMatrix::Identity(7, 3))) < 1e-14);
}

TEST_CASE("quotient distance examples") {
    const auto spec = q_commutation_spec(2, uniform_relations(2, 1.0), 5);
    const auto model = build_quotient(spec);
    CHECK(quotient_distance(spec.generators()[0], model) < 1e-12);
    CHECK(quotient_distance(e(2, {1, 2}) - e(2, {2, 1}), model) < 1e-12);
    CHECK(quotient_distance(e(2, {1}) * (e(2, {1, 2}) - e(2, {2, 1})) * e(2, {2}), model) < 1e-12);
    CHECK(quotient_distance(NcPolynomial::constant(2, 1.0), model) == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = fockalg::testing::random_polynomial(rng, 2, 2, 4);
        double prev = 0.0;
        for (int m = 2; m <= 5; ++m) {
            const double d = quotient_distance(f, spec.with_degree(m));
            CHECK(d >= prev - 1e-12);
            CHECK(d <= homogeneous_l2_sum(f) + 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("functional calculus is the compression") {
    Rng rng(43);
    const auto model = build_quotient(q_commutation_spec(2, uniform_relations(2, Complex(0, 1)), 5));
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = fockalg::testing::random_polynomial(rng, 2, 3, 4);
        const CMatrix fb = functional_calculus(f, model);
        const CMatrix direct = model.basis.adjoint() * CMatrix(compressed_mult_matrix(f, 5)) * model.basis;
        CHECK((fb - direct).norm() < 1e-12);
    }
}

TEST_CASE("caratheodory distance") {
    CHECK(caratheodory_distance(e(2, {1}), 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(caratheodory_distance(NcPolynomial::constant(3, 1.0), 2) == doctest::Approx(1.0).epsilon(1e-14));
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = fockalg::testing::uniform_int(rng, 1, 3);
        const int m0 = fockalg::testing::uniform_int(rng, 1, 3);
        const auto p = fockalg::testing::random_homogeneous(rng, n, m0, 4);
        CHECK(std::abs(caratheodory_distance(p, m0) - p.l2_norm()) < 1e-12);
    }
    const auto p = NcPolynomial::constant(1, 1.0) + e(1, {1});
    double prev = 0.0;
    for (int m0 = 1; m0 <= 3; ++m0) {
        const double d = caratheodory_distance(p, m0);
        CHECK(d >= prev - 1e-14);
        prev = d;
    }
    CHECK_THROWS_AS((void)caratheodory_distance(e(2, {1, 1}), 1), ArgumentError);
}

TEST_CASE("non-homogeneous ideals are flagged") {
    const auto spec = IdealSpec(2, {e(2, {1}) - NcPolynomial::constant(2, 0.5)}, 4);
    const auto model = build_quotient(spec);
    CHECK(model.approximate);
    CHECK(model.reliable_degree == 3);
    CHECK(model.dim() >= 1);
    CHECK(numerics::projector_distance(model.basis, numerics::orthogonal_complement(ideal_subspace(spec), 31)) < 1e-9);
}

TEST_CASE("constrained von neumann on commuting points") {
    Rng rng(45);
    const std::vector<BallPoint> pts = fockalg::testing::random_points(rng, 2, 3, 0.5);
    const auto t = poisson::RowContraction::diagonal(pts);
    const auto model = build_quotient(q_commutation_spec(2, uniform_relations(2, 1.0), 8));
    const auto f = e(2, {1, 2}, 0.7) + e(2, {2}) + NcPolynomial::constant(2, Complex(0.1, 0.2));
    const auto vn = constrained_von_neumann_check(t, f, model);
    double direct = 0.0;
    for (const auto& p : pts) direct = std::max(direct, std::abs(evaluate(f, p)));
    CHECK(vn.lhs == doctest::Approx(direct).epsilon(1e-12));
    CHECK(vn.lhs <= vn.rhs + 1e-3);
    CHECK(vn.generator_norms.size() == 1);

    const auto gen = constrained_von_neumann_check(t, model.spec.generators()[0], model);
    CHECK(gen.lhs < 1e-12);
    CHECK(gen.rhs < 1e-12);

    const auto res = quotient_poisson_check(t, model);
    const double rho = 0.5 * 0.5;
    CHECK(res.range_residual <= std::pow(rho, 9) + 1e-12);
    CHECK(res.covariance_residual < 1e-4);

    Rng rng2(46);
    const auto noncommuting = fockalg::testing::random_row_contraction(rng2, 2, 2, 0.5);
    CHECK_THROWS_AS((void)constrained_von_neumann_check(noncommuting, f, model), PreconditionError);

    const auto zero = poisson::RowContraction(std::vector<CMatrix>(2, CMatrix::Zero(2, 2)));
    const auto zres = quotient_poisson_check(zero, model);
    CHECK(zres.range_residual < 1e-14);
    CHECK(zres.covariance_residual < 1e-14);

    const auto scalar = poisson::RowContraction::diagonal({BallPoint{0.4, Complex(0.2, 0.1)}});
    const auto sres = quotient_poisson_check(scalar, model);
    CHECK(sres.range_residual < 1e-12);

    // no generators: reduces to the free von neumann margin
    const auto free_model = build_quotient(IdealSpec(2, {}, 6));
    const auto free_vn = constrained_von_neumann_check(noncommuting, f, free_model);
    const auto margin = poisson::von_neumann_margin(noncommuting, f, 6);
    CHECK(free_vn.lhs == doctest::Approx(margin.lhs).epsilon(1e-12));
    CHECK(free_vn.lhs <= free_vn.rhs + 1e-12 + 0.05);
}
