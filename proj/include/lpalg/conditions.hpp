#pragma once

#include <string>
#include <vector>

#include "lpalg/group.hpp"
#include "lpalg/weight.hpp"

namespace lpalg {

enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Verdict v);

/// A condition verdict with the diagnostic sequence behind it. Verdicts other
/// than Inconclusive are only issued when the weight carries an analytic
/// envelope that certifies the limit; finite statistics alone never decide.
struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::pair<double, double>> diagnostics;  // (n, statistic)
    double tail_bound = 0.0;
    std::string note;
};

/// GRS: omega(x^n)^{1/n} -> 1. Diagnostic statistic log omega(x^n) / n.
ConditionReport check_grs(const Weight& w, const GroupModel& model, const GroupElement& x,
                          int n_max);

/// (S): sup over the n-ball of omega^{1/n} -> 1. Statistic log s(n) / n.
ConditionReport check_condition_s(const Weight& w, const GroupModel& model, int n_max);

/// Exponential envelope test: omega(x) = O(e^{eps |x|}). Statistic s(n) e^{-eps n}
/// in log form; reports C(eps) = max over n <= n_max.
ConditionReport check_o_exp(const Weight& w, const GroupModel& model, double eps, int n_max);
double o_exp_constant(const Weight& w, const GroupModel& model, double eps, int n_max);

/// BDna: sum_{n >= 16} ln(ln n) ln(s(n)) / (1+n^2) < infinity, with the tail
/// beyond n_max bounded by integral comparison using the envelope closed form.
ConditionReport check_bdna(const Weight& w, const GroupModel& model, int n_max);

struct ConditionMatrixRow {
    std::string weight;
    Verdict grs, s, o_exp_all, bdna;
    bool envelope_consistent = true;  // (S) verdict == o-exp-for-all-eps verdict
};

/// Runs the full condition battery for each weight; o_exp_all aggregates a
/// small epsilon grid and is cross-checked against (S).
std::vector<ConditionMatrixRow> condition_matrix(const std::vector<Weight>& weights,
                                                 const GroupModel& model, int n_max);

}  // namespace lpalg
