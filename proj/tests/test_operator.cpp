#include <doctest.h>

#include <cmath>
#include <random>

#include "lpalg/operator_weight.hpp"

using namespace lpalg;

namespace {

OperatorModel random_contraction(int n, std::mt19937_64& rng, double norm_target = 0.9) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = std::complex<double>(u(rng), u(rng));
    A *= norm_target / operator_norm(A);
    return OperatorModel(std::move(A));
}

}  // namespace

TEST_CASE("matrix exponential norms") {
    auto T2 = OperatorModel::jordan_nilpotent(2);
    CHECK(matexp_norm(T2, 0.0) == doctest::Approx(1.0));
    // e^{T} = [[1,1],[0,1]]: norm is the golden ratio
    CHECK(matexp_norm(T2, 1.0) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));

    OperatorModel zero(Eigen::MatrixXcd::Zero(3, 3));
    for (double x : {0.0, 1.0, 17.5}) CHECK(matexp_norm(zero, x) == doctest::Approx(1.0));

    // scaling-and-squaring path agrees with the nilpotent finite series
    OperatorModel dense(OperatorModel::jordan_nilpotent(4).matrix());  // no nilpotent flag
    auto exact = matrix_exp(OperatorModel::jordan_nilpotent(4), 3.0);
    auto ss = matrix_exp(dense, 3.0);
    CHECK(operator_norm(exact - ss) < 1e-12);
}

TEST_CASE("operator norm validation") {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(2, 2) * 1.5;
    CHECK_THROWS(OperatorModel(big));
    CHECK_THROWS(OperatorModel(Eigen::MatrixXcd::Identity(2, 3)));

    auto roots = OperatorModel::jordan_nilpotent(4).power_norm_roots(8);
    CHECK(roots[3] == 0.0);  // T^4 = 0
    CHECK(roots[0] == doctest::Approx(1.0));

    // quasi-nilpotent proxy: ||T^k||^{1/k} decreasing toward the spectral
    // radius for a strict contraction
    std::mt19937_64 rng(61);
    auto R = random_contraction(5, rng, 0.8);
    auto rr = R.power_norm_roots(24);
    CHECK(rr[23] < rr[0]);
    CHECK(rr[23] < 0.8 + 1e-9);
}

TEST_CASE("omega_T properties") {
    auto T = OperatorModel::jordan_nilpotent(2);
    CHECK(omega_T(T, 0.0) == doctest::Approx(1.0));
    for (double x : {0.5, 1.0, 3.0, 10.0}) {
        CHECK(omega_T(T, x) >= 1.0);
        // symmetric for Jordan blocks: e^{xT} and e^{-xT} share singular values
        CHECK(omega_T(T, x) == doctest::Approx(omega_T(T, -x)));
        // linear growth for order 2: omega <= 1 + |x| plus cross terms
        CHECK(omega_T(T, x) <= 1.0 + x + 0.5 * x * x);
    }
    // submultiplicative on a grid
    for (double x : {0.3, 1.1, 2.4})
        for (double y : {0.2, 0.9, 3.3})
            CHECK(omega_T(T, x + y) <= omega_T(T, x) * omega_T(T, y) * (1 + 1e-12));
}

TEST_CASE("epsilon growth check") {
    auto T2 = OperatorModel::jordan_nilpotent(2);
    for (double eps : {1.0, 0.1, 0.01}) {
        auto gc = epsilon_growth_check(T2, eps, 100.0);
        CHECK(gc.finite);
        CHECK(gc.N_eps == 2);
        CHECK(gc.C_bound == doctest::Approx(1.0 + std::pow(eps, -2.0)));
        // the grid max respects the split-series bound
        CHECK(gc.C_grid <= gc.C_bound * (1 + 1e-9));
    }
}

TEST_CASE("piecewise polynomials and their convolution") {
    auto f = PiecewisePoly::indicator(0.0, 1.0);
    CHECK(f.eval(0.5) == std::complex<double>(1.0, 0.0));
    CHECK(f.eval(1.5) == std::complex<double>(0.0, 0.0));
    CHECK(f.l1_norm() == doctest::Approx(1.0));

    auto xi = PiecewisePoly::xi(0.25);
    CHECK(xi.eval(0.1).real() == doctest::Approx(4.0));
    CHECK(xi.l1_norm() == doctest::Approx(1.0));

    // indicator * indicator = hat on [0,2]
    auto hat = convolve(f, f);
    CHECK(hat.support_left() == doctest::Approx(0.0));
    CHECK(hat.support_right() == doctest::Approx(2.0));
    CHECK(hat.eval(1.0).real() == doctest::Approx(1.0));
    CHECK(hat.eval(0.5).real() == doctest::Approx(0.5));
    CHECK(hat.eval(1.75).real() == doctest::Approx(0.25));

    auto sum = f + PiecewisePoly::indicator(0.5, 2.0, 2.0);
    CHECK(sum.eval(0.25).real() == doctest::Approx(1.0));
    CHECK(sum.eval(0.75).real() == doctest::Approx(3.0));
    CHECK(sum.eval(1.5).real() == doctest::Approx(2.0));
}

TEST_CASE("representation U") {
    auto T2 = OperatorModel::jordan_nilpotent(2);
    // U(xi_eps) = I + (eps/2) T exactly for order-2 nilpotent
    for (double eps : {0.5, 0.1}) {
        auto res = rep_U(T2, PiecewisePoly::xi(eps));
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(2, 2);
        expected(0, 1) = eps / 2.0;
        CHECK(operator_norm(res.U - expected) < 1e-13);
    }

    // ||U(f)|| <= int omega |f| on samples
    auto T3 = OperatorModel::jordan_nilpotent(3);
    auto f = PiecewisePoly::indicator(0.0, 2.0, std::complex<double>(0.7, 0.2));
    auto res = rep_U(T3, f);
    double bound = 0.0;
    for (int i = 0; i < 400; ++i) {
        double x = 2.0 * (i + 0.5) / 400.0;
        bound += omega_T(T3, x) * std::abs(f.eval(x)) * (2.0 / 400.0);
    }
    CHECK(operator_norm(res.U) <= bound * (1 + 1e-6));

    // linearity
    auto g = PiecewisePoly::indicator(0.5, 1.5);
    Eigen::MatrixXcd lhs = rep_U(T3, f.scaled(2.0) + g.scaled(std::complex<double>(0, 1))).U;
    Eigen::MatrixXcd rhs =
        2.0 * rep_U(T3, f).U + std::complex<double>(0, 1) * rep_U(T3, g).U;
    CHECK(operator_norm(lhs - rhs) < 1e-10);
}

TEST_CASE("homomorphism defect on indicator pairs") {
    std::mt19937_64 rng(17);
    auto f = PiecewisePoly::indicator(0.0, 1.0);
    auto g = PiecewisePoly::indicator(0.0, 1.0);
    for (int n : {2, 3, 4}) {
        auto T = OperatorModel::jordan_nilpotent(n);
        CHECK(rep_homomorphism_defect(T, f, g) < 1e-8);
    }
    auto R = random_contraction(4, rng);
    CHECK(rep_homomorphism_defect(R, f, g) < 1e-8);
}

TEST_CASE("commutator defect") {
    // 2x2 nilpotent: the series stops at the linear term, defect 0
    auto T2 = OperatorModel::jordan_nilpotent(2);
    for (double eps : {0.5, 0.1, 0.01}) CHECK(commutator_defect(T2, eps) < 1e-14);

    // 3x3: exact integral gives (eps^2/6) ||T^2|| = eps^2/6
    auto T3 = OperatorModel::jordan_nilpotent(3);
    for (double eps : {0.5, 0.1})
        CHECK(commutator_defect(T3, eps) == doctest::Approx(eps * eps / 6.0).epsilon(1e-8));

    // random contractions: defect < eps^2 (the paper chain gives (e/3) eps^2)
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        auto T = random_contraction(3 + trial, rng);
        for (double eps : {0.5, 0.1, 0.01}) {
            double d = commutator_defect(T, eps);
            CHECK(d < eps * eps);
        }
    }

    // oracle: exact series U(xi_eps) = sum eps^k T^k/(k+1)! for the nilpotent case
    double eps = 0.3;
    Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(3, 3);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(3, 3);
    double c = 1.0;
    for (int k = 0; k < 3; ++k) {
        c /= (k + 1);
        direct += P * c;  // eps^k T^k / (k+1)!
        P = P * OperatorModel::jordan_nilpotent(3).matrix() * eps;
    }
    auto viaU = rep_U(OperatorModel::jordan_nilpotent(3), PiecewisePoly::xi(eps)).U;
    CHECK(operator_norm(viaU - direct) < 1e-13);
}
