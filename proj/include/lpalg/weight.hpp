#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpalg/group.hpp"
#include "lpalg/operator_weight.hpp"

namespace lpalg {

enum class WeightKind { Polynomial, SubExponential, Exponential, Product, Operator, Table };

/// Certified upper bound ln s(n) <= logK + D ln(1+n) + sum C_i n^{gamma_i} + Cexp n
/// for n >= 1; `exact` means equality holds (radial closed-form kinds).
struct LogGrowthEnvelope {
    bool available = false;
    bool exact = false;
    double logK = 0.0;
    double D = 0.0;
    std::vector<std::pair<double, double>> subexp;  // (C, gamma), gamma in (0,1)
    double Cexp = 0.0;

    double eval(double n) const;
};

/// A weight: a symmetric submultiplicative function omega >= 1 on a group
/// model. All kinds evaluate to exactly 1 at the identity and to the kind
/// formula at |x| >= 1 elsewhere, so formulas never see |x| = 0 and
/// ||delta_e||_{p,omega} = 1. Immutable; the ball-supremum cache is guarded.
class Weight {
public:
    static Weight polynomial(double K, double D);              // K (1+|x|)^D, K >= 1
    static Weight sub_exponential(double C, double gamma);     // e^{C |x|^gamma}, gamma in (0,1]
    static Weight exponential(double C);                       // e^{C |x|}
    static Weight product(const Weight& u, const Weight& w1);  // u(x) w1(x)
    static Weight operator_weight(OperatorModel T);            // max{||e^{xT}||, ||e^{-xT}||}
    static Weight table(std::map<GroupElement, double> values, double fill = 1.0);

    WeightKind kind() const;
    LengthMode length_mode() const;
    Weight with_length_mode(LengthMode mode) const;
    /// Scale by C >= 1 (renormalization); scaled weights have omega(e) = C.
    Weight scaled_by(double c) const;
    double scale() const;

    /// log omega at radius r >= 1 (radial kinds; Table not radial).
    double log_eval_radius(double r) const;
    double log_eval(const GroupModel& model, const GroupElement& x) const;
    double eval(const GroupModel& model, const GroupElement& x) const;

    /// s(n) = sup over the n-ball; closed form at radius n for monotone radial
    /// kinds, exhaustive over the ball otherwise. s(0) = omega(e).
    double log_sup_on_ball(const GroupModel& model, int n) const;
    double sup_on_ball(const GroupModel& model, int n) const;
    bool radial_monotone() const;

    LogGrowthEnvelope envelope() const;
    /// Certified lower bound on log omega built from the exact radial factors
    /// (non-exact factors are >= 1, so dropping them only lowers the bound).
    /// Drives summability certificates and truncation tails.
    LogGrowthEnvelope exact_lower_envelope() const;
    /// Growth rate limit of log omega(n)/n (exact radial kinds), used by the
    /// character-domain test. nullopt when not available.
    std::optional<double> exp_rate() const;
    /// Whether sum_{n != 0} omega(n)^{-q} converges (certified, radial kinds on Z).
    std::optional<bool> inverse_q_summable(double q) const;
    /// Certified bound on sum_{j > R} omega(j)^{-q} (j integer radii), radial kinds.
    double inverse_q_tail_bound(double q, double R) const;
    /// At the critical exponential line a = exp_rate(): is the residual
    /// sum_{n} e^{q a n} omega(n)^{-q} still convergent? (polynomial factor test)
    std::optional<bool> critical_line_summable(double q) const;

    std::string descriptor() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit Weight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

struct AxiomReport {
    bool symmetric = true;
    bool submultiplicative = true;
    double worst_ratio = 0.0;  // max omega(xy) / (omega(x) omega(y))
    GroupElement witness_x, witness_y;
    double worst_symmetry_gap = 0.0;
    GroupElement symmetry_witness;
};

/// Exhaustive symmetry and submultiplicativity scan over U^n x U^n.
AxiomReport check_weight_axioms(const Weight& w, const GroupModel& model, int n,
                                double rel_slack = 1e-9);

/// Renormalization C = max(C1, C2^{1/q}) making measured-constant conditions exact.
Weight renormalize(const Weight& w, double c1, double c2, double q);

/// Pytlik constant: max over U^n x U^n of omega(xy) / (omega(x) + omega(y)).
double pytlik_constant(const Weight& w, const GroupModel& model, int n);

}  // namespace lpalg
