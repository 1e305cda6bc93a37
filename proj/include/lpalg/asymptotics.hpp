#pragma once

#include <vector>

#include "lpalg/algebra.hpp"  // BoundVerdict

namespace lpalg {

/// Data of the boundary-maximum exponential integral
///   F(x) = int_0^{1/2} t^Q exp(x (1 - t^gamma - (1-t)^gamma)) dt
/// with h(0) = 0 and h strictly decreasing on (0, 1/2).
struct LaplaceProblem {
    double Q;
    double gamma;  // in (0,1)
    double q;      // > 1

    LaplaceProblem(double Q_, double gamma_, double q_);
    double h(double t) const;  // 1 - t^gamma - (1-t)^gamma
    double g(double t) const;  // t^Q
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // refinement discrepancy estimate
    int panels = 0;
};

/// Adaptive quadrature of F(x) with geometric subdivision toward the
/// endpoint t = 0 (where the exponential scale x t^gamma lives); relative
/// error target 1e-10 by panel bisection.
QuadResult numeric_F(const LaplaceProblem& prob, double x, double rel_tol = 1e-10);

/// Leading-order boundary asymptotic C2 x^{-(Q+1)/gamma},
/// C2 = (1/gamma) Gamma((Q+1)/gamma).
double asymptotic_F(const LaplaceProblem& prob, double x);
double laplace_C2(const LaplaceProblem& prob);
double laplace_C3(const LaplaceProblem& prob);  // C2 q^{-(Q+1)/gamma}

struct Case4Result {
    std::vector<double> S;      // S(m), m = 0..m_max
    std::vector<double> f_c;    // continuum bound f(m) = m^{Q+1} F(q m^gamma)
    double sup = 0.0;
    int argmax = 0;
    double C3 = 0.0;
    BoundVerdict verdict = BoundVerdict::Bounded;
    double trend_slope = 0.0;
};

/// S(m) = sum_{n=0}^{floor(m/2)} e^{q (m^g - n^g - (m-n)^g)} n^Q in log space
/// with compensated summation, against the continuum bound and C3.
/// gamma = 1 is admitted as the degenerate edge (h = 0, S ~ m^{Q+1}).
Case4Result case4_sum_check(double Q, double gamma, double q, int m_max);

}  // namespace lpalg
