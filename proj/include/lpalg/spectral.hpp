#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lpalg/group_function.hpp"

namespace lpalg {

enum class NormSelector { L1, L1Weighted, LpWeighted };

struct SpectralPoint {
    int k = 0;
    std::int64_t N = 0;  // N = 2^k
    double root = 0.0;   // ||f^{*N}||^{1/N}
};

/// Root sequence along N = 2^k with a two-level Richardson extrapolation on
/// the log scale (which removes (a k + b)/2^k bias from polynomial
/// prefactors). The result is an interval, never a bare number.
struct SpectralEstimate {
    std::vector<SpectralPoint> points;
    double extrapolated = 0.0;
    double slack = 0.0;   // step-halving discrepancy of the extrapolation
    double lower = 0.0;
    double upper = 0.0;
    NormSelector norm = NormSelector::L1;
    bool truncated = false;        // budget stopped the sequence early
    bool self_adjoint_input = true;
    /// log of the Pytlik chain bound (2C)^k ||f||_{p,w} ||f||_1^{2^k - 1}
    /// per point, filled for polynomial weights.
    std::vector<double> pytlik_chain_log;
};

SpectralEstimate spectral_radius_estimate(const GroupFunction& f, const NormContext& ctx,
                                          int k_max, NormSelector norm,
                                          std::size_t support_budget = std::size_t(1) << 22);

/// chi_theta(f) = haar * sum f(n) e^{i n theta} on Z / MeshLine.
std::complex<double> character_eval(const GroupFunction& f, double theta);
/// DFT character at index j on CyclicGroup(N): sum f(x) e^{2 pi i j x / N}.
std::complex<double> character_eval_cyclic(const GroupFunction& f, int j);

struct CharacterDomain {
    std::vector<double> admissible;  // grid points a with e^{qan} omega^{-q}(n) summable
    double rate = 0.0;               // exponential growth rate of the weight
};

/// Decides for each grid exponent a whether sum_n e^{q a n} omega(n)^{-q}
/// converges, via the weight's exact envelope (rate comparison, with the
/// polynomial-factor test on the critical line). {0} alone witnesses that
/// only unitary characters are admissible.
CharacterDomain character_domain(const Weight& w, const GroupModel& model, double q,
                                 const std::vector<double>& a_grid);

/// Eigenvalues of the N x N circulant convolution operator g -> f*g on a
/// cyclic model.
std::vector<std::complex<double>> finite_spectrum(const GroupFunction& f);

}  // namespace lpalg
