#pragma once

#include <string>
#include <vector>

#include "lpalg/group_function.hpp"

namespace lpalg {

enum class BoundVerdict { Bounded, UnboundedTrend };

struct RatioSeries {
    std::vector<double> R;        // R(m) for m = 0..m_max
    double tail_rel_bound = 0.0;  // certified relative truncation error (worst m)
    int truncation_radius = 0;
    BoundVerdict verdict = BoundVerdict::Bounded;
    double trend_slope = 0.0;     // linear-fit slope on the trailing half
    int argmax = 0;
    double sup = 0.0;
};

class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// R(m) = (omega^{-q} * omega^{-q})(x_m) / omega^{-q}(x_m) at radius m, for
/// m = 0..m_max, on Z or MeshLine. Truncation tails are certified from the
/// weight's envelope to below rel_tol of the computed sum. Throws
/// divergence_error when omega^{-q} is not summable.
RatioSeries algebra_condition_ratio(const Weight& w, const GroupModel& model, double q,
                                    int m_max, double rel_tol = 1e-6);

struct InequalityEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    std::string witness;
};

struct InequalityReport {
    std::vector<InequalityEntry> entries;
    double pytlik_constant = 0.0;  // 0 when the Pytlik route was not applicable
    bool all_hold = true;
};

/// Evaluates the norm inequalities for the pair (f, g): the L1-module bound
/// ||f*g||_{p,w} <= ||f||_{1,w} ||g||_{p,w}, the Pytlik two-sided bound for
/// polynomial weights, the L1 embedding, the involution isometry and the
/// translation bound, each with both sides reported.
InequalityReport inequality_suite(const GroupFunction& f, const GroupFunction& g,
                                  const NormContext& ctx, double rel_slack = 1e-9);

/// sum over G of omega^{-q}, with certified tail (the embedding constant is
/// this to the power 1/q).
double inverse_q_mass(const Weight& w, const GroupModel& model, double q,
                      double rel_tol = 1e-9);

/// Normalized indicator of k mesh points around 0 on MeshLine: mass 1/(k h)
/// per point, ||f_k||_1 = 1 exactly, self-adjoint. k must be odd and the
/// support half-width (k-1)/2 * h may not exceed the compact cap.
GroupFunction approximate_unit(const GroupModel& model, int k, double compact_cap = 2.0);

}  // namespace lpalg
