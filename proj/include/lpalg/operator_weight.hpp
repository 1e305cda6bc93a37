#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace lpalg {

/// A finite square matrix T with ||T|| <= 1 (largest singular value), used to
/// generate operator weights omega(x) = max{||e^{xT}||, ||e^{-xT}||} and the
/// representation U(f) = integral of e^{xT} f(x) dx.
class OperatorModel {
public:
    explicit OperatorModel(Eigen::MatrixXcd T, int nilpotent_order = 0);

    /// n x n single Jordan block with zero diagonal; nilpotent of order n.
    static OperatorModel jordan_nilpotent(int n);

    const Eigen::MatrixXcd& matrix() const { return T_; }
    int size() const { return static_cast<int>(T_.rows()); }
    int nilpotent_order() const { return nilpotent_order_; }  // 0 when not nilpotent

    /// ||T^k||^{1/k} for k = 1..k_max (quasi-nilpotent diagnostics).
    std::vector<double> power_norm_roots(int k_max) const;

private:
    Eigen::MatrixXcd T_;
    int nilpotent_order_;
};

double operator_norm(const Eigen::MatrixXcd& A);  // largest singular value

/// e^{xT}: terminating series for nilpotent T, otherwise scaling-and-squaring
/// with Taylor remainder below 1e-14 on the scaled matrix.
Eigen::MatrixXcd matrix_exp(const OperatorModel& model, double x);

double matexp_norm(const OperatorModel& model, double x);  // ||e^{xT}||
double omega_T(const OperatorModel& model, double x);      // max{||e^{xT}||, ||e^{-xT}||}

struct GrowthCheck {
    double C_grid = 0.0;    // max over the x grid of omega(x) e^{-eps x}
    double C_bound = 0.0;   // 1 + eps^{-N(eps)} split-series bound (when N known)
    int N_eps = 0;          // first n with ||T^k|| < eps^k for all k >= n (0 = unknown)
    bool finite = false;
};

/// Checks omega_T(x) = O(e^{eps x}) on [0, x_max]; for nilpotent T the
/// split-series constant 1 + eps^{-N} is evaluated alongside the grid max.
GrowthCheck epsilon_growth_check(const OperatorModel& model, double eps, double x_max,
                                 int grid_points = 400);

/// Compactly supported piecewise-polynomial function on the real line with
/// complex coefficients in the local variable (x - left endpoint).
class PiecewisePoly {
public:
    PiecewisePoly() = default;

    static PiecewisePoly indicator(double a, double b, std::complex<double> value = 1.0);
    /// xi_eps = eps^{-1} * indicator of [0, eps].
    static PiecewisePoly xi(double eps);

    std::complex<double> eval(double x) const;
    double support_left() const;
    double support_right() const;
    bool empty() const { return breaks_.size() < 2; }
    int max_degree() const;
    double l1_norm() const;  // integral of |f|, exact for piecewise constants, quadrature otherwise

    PiecewisePoly scaled(std::complex<double> c) const;
    friend PiecewisePoly operator+(const PiecewisePoly& f, const PiecewisePoly& g);

    /// Exact convolution; implemented for piecewise-constant operands
    /// (indicator sums), which produce piecewise-linear results.
    friend PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& g);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<std::vector<std::complex<double>>>& pieces() const { return coeffs_; }

private:
    std::vector<double> breaks_;                             // size m+1
    std::vector<std::vector<std::complex<double>>> coeffs_;  // m pieces, local coeffs
};

struct RepResult {
    Eigen::MatrixXcd U;
    double quad_error = 0.0;  // Richardson discrepancy between panel counts
};

/// U(f) = integral over supp f of e^{xT} f(x) dx by composite Gauss-Legendre
/// panels, refined until the panel-doubling discrepancy is below tol.
RepResult rep_U(const OperatorModel& model, const PiecewisePoly& f, double tol = 1e-12);

/// || U(f*g) - U(f) U(g) ||.
double rep_homomorphism_defect(const OperatorModel& model, const PiecewisePoly& f,
                               const PiecewisePoly& g, double tol = 1e-12);

/// || U(xi_eps) - Id - (eps/2) T ||, evaluated through rep_U. The bound
/// (e/3) eps^2 < eps^2 holds for any ||T|| <= 1 and 0 < eps < 1.
double commutator_defect(const OperatorModel& model, double eps);

}  // namespace lpalg
