#pragma once

#include <complex>
#include <vector>

#include "lpalg/group_function.hpp"

namespace lpalg {

/// Truncation orders and tolerances for the series machinery. Every truncated
/// result carries its remainder estimate.
struct SeriesBudget {
    int k_max = 64;                 // exponential-series truncation start
    int n_max = 64;                 // Fourier-sum truncation for psi{f}
    double abs_tol = 1e-9;
    std::size_t support_cap = std::size_t(1) << 22;
};

/// 2pi-periodic real C-infinity plateau bump: 0 outside [a,b] (mod 2pi),
/// identically 1 on [a+eps, b-eps], smoothstep transitions. Fourier
/// coefficients are computed by trapezoid quadrature (spectrally accurate) to
/// 4x the requested order so that truncation tails can be measured.
class PeriodicBump {
public:
    PeriodicBump(double a, double b, double eps, int n_max);

    double a() const { return a_; }
    double b() const { return b_; }
    double eps() const { return eps_; }
    int n_max() const { return n_max_; }
    int stored_order() const { return static_cast<int>(coeffs_.size()) - 1; }

    double eval(double t) const;  // exact piecewise evaluator
    std::complex<double> coefficient(int n) const;

    /// Degree-N truncated Fourier sum (N defaults to n_max).
    std::complex<double> eval_truncated(double t, int N = -1) const;

    /// Measured sum of |coefficients| with |n| > N (within the stored order),
    /// plus a fitted O(n^-6) remainder beyond it.
    double coefficient_tail(int N) const;

    /// C_m = max_{1<=n<=n_max} |psi_hat(n)| n^m for m = 1..m_up_to.
    std::vector<double> decay_constants(int m_up_to = 6) const;

private:
    double a_, b_, eps_;
    int n_max_;
    std::vector<std::complex<double>> coeffs_;  // indices 0..stored_order
};

class series_divergence_error : public std::runtime_error {
public:
    explicit series_divergence_error(const std::string& what) : std::runtime_error(what) {}
};

struct SeriesResult {
    GroupFunction value;
    double tail_bound = 0.0;  // remainder in the (p,omega) norm
    int terms = 0;
};

/// u(nf) = sum_{k>=1} (i^k/k!) n^k f^{*k}, truncated with the factorial
/// remainder below budget.abs_tol (K is auto-raised). Requires f = f*.
SeriesResult u_series(const GroupFunction& f, int n, const NormContext& ctx,
                      const SeriesBudget& budget);

/// Same element through the product identity
/// u(nf) = u((n-1)f) + u(f) + u((n-1)f) * u(f), one convolution per step.
SeriesResult u_recursive(const GroupFunction& f, int n, const NormContext& ctx,
                         const SeriesBudget& budget);

struct PsiTermDiag {
    int n;
    double u_norm;      // ||u(nf)||_{p,omega}
    double coeff_abs;   // |psi_hat(n)| + |psi_hat(-n)|
};

struct PsiOfF {
    GroupFunction value;
    double tail_estimate = 0.0;  // measured-growth extrapolation beyond n_max
    std::vector<PsiTermDiag> terms;
};

/// psi{f} = sum_{0<|n|<=n_max} psi_hat(n) u(nf). Requires f = f* and
/// ||f||_1 <= 1 (keeps character values in [-1,1] in the 2pi-periodic
/// calculus). Throws series_divergence_error when term norms stop decreasing
/// while still above tolerance.
PsiOfF psi_of_f(const GroupFunction& f, const PeriodicBump& psi, const NormContext& ctx,
                const SeriesBudget& budget);

struct SpectralMappingReport {
    double max_error = 0.0;             // against the degree-n_max evaluation of psi
    double exact_reference_gap = 0.0;   // against the exact bump evaluator (its Fourier tail)
    int characters = 0;
};

/// Verifies chi_j(psi{f}) = psi(chi_j(f)) on a cyclic model, with both sides
/// computed independently (physical-space series vs DFT of f). The primary
/// error is measured against the degree-n_max view of psi, which is the exact
/// character image of the truncated sum; the gap to the exact bump evaluator
/// (the bump's own Fourier tail) is reported alongside.
SpectralMappingReport spectral_mapping_check(const GroupFunction& f, const PeriodicBump& psi,
                                             const NormContext& ctx, const SeriesBudget& budget);

}  // namespace lpalg
