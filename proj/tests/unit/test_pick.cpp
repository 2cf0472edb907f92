#include <doctest.h>

#include <algorithm>
#include <limits>

#include "fockalg/errors.hpp"
#include "fockalg/fock.hpp"
#include "fockalg/pick.hpp"
#include "random.hpp"

using namespace fockalg;
using namespace fockalg::pick;
using fockalg::testing::Rng;

namespace {

PickProblem schwarz(double r, Complex w) {
    return PickProblem::scalar({BallPoint{0.0}, BallPoint{r}}, {0.0, w});
}

PickProblem permuted(const PickProblem& p, const std::vector<int>& perm) {
    std::vector<BallPoint> pts;
    std::vector<CMatrix> ws;
    for (int j : perm) {
        pts.push_back(p.points()[j]);
        ws.push_back(p.targets()[j]);
    }
    return PickProblem(pts, ws);
}

}  // namespace

TEST_CASE("problem validation") {
    CHECK_THROWS_AS((void)PickProblem::scalar({BallPoint{1.0}}, {0.0}), DomainError);
    CHECK_THROWS_AS((void)PickProblem::scalar({BallPoint{0.2}, BallPoint{0.2}}, {0.0, 0.1}), ArgumentError);
    CHECK_THROWS_AS((void)PickProblem({BallPoint{0.1}, BallPoint{0.2}}, {CMatrix::Zero(1, 1), CMatrix::Zero(2, 2)}),
                    ArgumentError);
    CHECK_THROWS_AS((void)PickProblem({BallPoint{0.1}, BallPoint{0.2, 0.1}}, {CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)}),
                    ArgumentError);
}

TEST_CASE("gram examples") {
    const CMatrix g0 = gram(PickProblem::scalar({BallPoint{0.0, 0.0}}, {0.0}));
    CHECK(std::abs(g0(0, 0) - 1.0) < 1e-15);
    const double r = 0.6;
    const CMatrix g = gram(schwarz(r, 0.0));
    CHECK(std::abs(g(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(g(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(g(1, 1) - 1.0 / (1 - r * r)) < 1e-14);

    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto problem = fockalg::testing::random_pick_problem(rng, 2, 4, 1, 0.5, 0.5);
        const CMatrix exact = gram(problem);
        const int m = 12;
        double bound_rho = 0.0;
        for (const auto& a : problem.points()) {
            for (const auto& b : problem.points()) bound_rho = std::max(bound_rho, std::abs(inner(a, b)));
        }
        const double tail = std::pow(bound_rho, m + 1) / (1 - bound_rho);
        CHECK(tail <= std::pow(0.25, 13) / 0.75 + 1e-18);
        for (int i = 0; i < problem.nodes(); ++i) {
            for (int j = 0; j < problem.nodes(); ++j) {
                const Complex trunc = inner(z_vector(problem.points()[j], m), z_vector(problem.points()[i], m));
                // a priori summation error over the D(n, m) coefficients
                const double rounding = static_cast<double>(fock_dimension(2, m)) * std::numeric_limits<double>::epsilon() *
                                        std::sqrt(std::abs(exact(i, i) * exact(j, j)));
                CHECK(std::abs(exact(i, j) - trunc) <= tail + rounding);
            }
        }
    }
}

TEST_CASE("pick_matrix examples") {
    const auto single = pick_matrix(PickProblem::scalar({BallPoint{0.3, 0.1}}, {0.0}), 1.0);
    CHECK(single.size() == 1);
    CHECK(single(0, 0).real() > 0);
    CHECK(numerics::psd_check(single).is_psd);

    for (double w : {0.2, 0.39, 0.41, 0.6}) {
        const double r = 0.4;
        const auto pm = pick_matrix(schwarz(r, w), 1.0);
        CHECK(std::abs(pm(1, 1) - (1 - w * w) / (1 - r * r)) < 1e-14);
        CHECK(std::abs(pm(0, 1) - 1.0) < 1e-14);
        CHECK(numerics::psd_check(pm).is_psd == (w <= r));
    }

    Rng rng(13);
    const auto problem = fockalg::testing::random_pick_problem(rng, 2, 3, 2, 0.7, 3.0);
    CHECK(numerics::psd_check(pick_matrix(problem, 100.0)).is_psd);
    CHECK((pick_matrix(problem, 1.3).matrix() - pick_matrix(problem, 1.3).matrix().adjoint()).norm() == 0.0);
}

TEST_CASE("min_interpolation_norm examples") {
    Rng rng(14);
    const CMatrix w = fockalg::testing::random_matrix(rng, 3, 3);
    const PickProblem one({BallPoint{0.2, 0.3}}, {w});
    CHECK(min_interpolation_norm(one) == doctest::Approx(numerics::operator_norm(w)).epsilon(1e-12));

    const auto shift = PickProblem::scalar({BallPoint{0.0, 0.0}, BallPoint{0.5, 0.0}}, {0.0, 0.5});
    CHECK(min_interpolation_norm(shift) == doctest::Approx(1.0).epsilon(1e-12));

    const auto problem = fockalg::testing::random_pick_problem(rng, 2, 4, 2, 0.7, 1.0);
    const double c = min_interpolation_norm(problem);
    std::vector<CMatrix> scaled;
    for (const auto& t : problem.targets()) scaled.push_back(2.5 * t);
    CHECK(min_interpolation_norm(PickProblem(problem.points(), scaled)) == doctest::Approx(2.5 * c).epsilon(1e-10));
}

TEST_CASE("pick properties") {
    Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = fockalg::testing::uniform_int(rng, 1, 3);
        const int k = fockalg::testing::uniform_int(rng, 1, 5);
        const int big_n = fockalg::testing::uniform_int(rng, 1, 3);
        const auto problem = fockalg::testing::random_pick_problem(rng, n, k, big_n, 0.8, 0.4);
        const double c = min_interpolation_norm(problem);

        // PSD exactly from c* upward
        double prev = -1e300;
        for (double s : {0.5, 0.9, 1.0, 1.1, 2.0}) {
            const double ev = numerics::psd_check(pick_matrix(problem, s * c)).min_eigenvalue;
            CHECK(ev >= prev - 1e-10);
            prev = ev;
        }
        if (c > 1e-3) {
            CHECK(numerics::psd_check(pick_matrix(problem, c + 1e-6)).is_psd);
            CHECK_FALSE(numerics::psd_check(pick_matrix(problem, c - 1e-3)).is_psd);
        }

        // relabeling
        std::vector<int> perm(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) perm[static_cast<std::size_t>(j)] = k - 1 - j;
        const auto swapped = permuted(problem, perm);
        CHECK(std::abs(min_interpolation_norm(swapped) - c) < 1e-10);
        CHECK(std::abs(numerics::psd_check(pick_matrix(swapped, 1.0)).min_eigenvalue -
                       numerics::psd_check(pick_matrix(problem, 1.0)).min_eigenvalue) < 1e-10);

        // unitary covariance
        const CMatrix u = fockalg::testing::random_unitary(rng, big_n);
        const CMatrix v = fockalg::testing::random_unitary(rng, big_n);
        std::vector<CMatrix> rotated;
        for (const auto& w : problem.targets()) rotated.push_back(u * w * v.adjoint());
        CHECK(std::abs(min_interpolation_norm(PickProblem(problem.points(), rotated)) - c) < 1e-10);

        const auto cert = certify(problem);
        CHECK(cert.feasible == (c <= 1.0 + 1e-9));
    }
}

TEST_CASE("lagrange interpolant") {
    const auto k1 = lagrange_interpolant(PickProblem::scalar({BallPoint{0.3}}, {0.7}));
    CHECK(k1.degree() == 0);
    CHECK(std::abs(k1.at(0, 0).coeff(Word{}) - 0.7) < 1e-15);

    const auto two = PickProblem::scalar({BallPoint{0.0}, BallPoint{0.5}}, {1.0, 0.0});
    const auto phi = lagrange_interpolant(two);
    CHECK(std::abs(phi.at(0, 0).coeff(Word{}) - 1.0) < 1e-15);
    CHECK(std::abs(phi.at(0, 0).coeff(Word{1}) + 2.0) < 1e-15);
    CHECK(std::abs(phi.evaluate(BallPoint{0.0})(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(phi.evaluate(BallPoint{0.5})(0, 0)) < 1e-15);

    Rng rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = fockalg::testing::uniform_int(rng, 1, 5);
        const auto problem = fockalg::testing::random_pick_problem(rng, fockalg::testing::uniform_int(rng, 1, 3), k,
                                                                   fockalg::testing::uniform_int(rng, 1, 2), 0.9, 2.0);
        const auto f = lagrange_interpolant(problem);
        CHECK(f.degree() <= k - 1);
        for (int j = 0; j < k; ++j) {
            CHECK((f.evaluate(problem.points()[j]) - problem.targets()[j]).norm() < 1e-12);
        }
    }
}

TEST_CASE("classical ball matrix") {
    const auto s = schwarz(0.5, 0.3);
    CHECK((classical_ball_matrix(s).matrix() - pick_matrix(s, 1.0).matrix()).norm() < 1e-15);

    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = fockalg::testing::uniform_int(rng, 2, 3);
        const int k = fockalg::testing::uniform_int(rng, 2, 5);
        const auto pts = fockalg::testing::random_points(rng, n, k, 0.9);
        CHECK(numerics::psd_check(classical_ball_matrix(PickProblem::scalar(pts, std::vector<Complex>(k, 0.0)))).is_psd);

        std::vector<Complex> w;
        for (int j = 0; j < k; ++j) w.push_back(0.8 * fockalg::testing::random_complex(rng));
        const auto problem = PickProblem::scalar(pts, w);
        if (numerics::psd_check(pick_matrix(problem, 1.0)).is_psd) {
            CHECK(numerics::psd_check(classical_ball_matrix(problem)).is_psd);
        }
    }
    CHECK_THROWS_AS((void)classical_ball_matrix(PickProblem({BallPoint{0.1}}, {CMatrix::Zero(2, 2)})), ArgumentError);
}

TEST_CASE("sample membership") {
    Rng rng(18);
    std::vector<Sample> coord;
    std::vector<Sample> constant;
    for (const auto& p : fockalg::testing::random_points(rng, 2, 5, 0.9)) {
        coord.push_back({p, p[0]});
        constant.push_back({p, Complex(0.3, 0.4)});
    }
    CHECK(sample_membership_check(coord).is_psd);
    CHECK(sample_membership_check(constant).is_psd);
    const auto doubled = sample_membership_check({{BallPoint{0.0}, 0.0}, {BallPoint{0.4}, 0.8}});
    CHECK_FALSE(doubled.is_psd);
    CHECK_THROWS_AS((void)sample_membership_check({{BallPoint{0.0}, 0.0}, {BallPoint{0.9}, 1.8}}), PreconditionError);
}
