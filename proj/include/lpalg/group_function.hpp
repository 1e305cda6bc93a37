#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lpalg/group.hpp"
#include "lpalg/weight.hpp"

namespace lpalg {

using Complex = std::complex<double>;

/// A finitely supported complex function on a group model. Support is sorted
/// and unique, values are aligned; entries below 1e-15 * max|value| are
/// pruned. Every point carries Haar mass haar_mass (h on MeshLine).
class GroupFunction {
public:
    explicit GroupFunction(GroupModel model);
    GroupFunction(GroupModel model, std::vector<std::pair<GroupElement, Complex>> pairs);

    static GroupFunction delta(const GroupModel& model, const GroupElement& x,
                               Complex value = 1.0);

    const GroupModel& model() const { return model_; }
    const std::vector<GroupElement>& support() const { return support_; }
    const std::vector<Complex>& values() const { return values_; }
    std::size_t size() const { return support_.size(); }
    bool empty() const { return support_.empty(); }

    Complex value_at(const GroupElement& x) const;  // 0 off support
    double max_abs() const;

    GroupFunction& operator+=(const GroupFunction& g);
    GroupFunction& operator*=(Complex c);
    friend GroupFunction operator+(GroupFunction f, const GroupFunction& g) { return f += g; }
    friend GroupFunction operator*(Complex c, GroupFunction f) { return f *= c; }

    /// Largest |value| relative gap to f = f*; 0 means self-adjoint.
    double self_adjoint_defect() const;

private:
    GroupModel model_;
    std::vector<GroupElement> support_;
    std::vector<Complex> values_;
    void normalize();  // sort, merge duplicates, prune
};

class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// (f*g)(x) = haar * sum_y f(y) g(y^{-1} x); exact over finite supports,
/// summation order fixed by sorted supports.
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g,
                       std::size_t pair_budget = std::size_t(1) << 26);

GroupFunction involution(const GroupFunction& f);                        // f*(x) = conj(f(x^{-1}))
GroupFunction translate(const GroupElement& x, const GroupFunction& f);  // (tau_x f)(t) = f(x^{-1} t)

enum class PowerMethod { Repeated, Squaring };
GroupFunction conv_power(const GroupFunction& f, int n,
                         PowerMethod method = PowerMethod::Squaring,
                         std::size_t pair_budget = std::size_t(1) << 26);

/// p in [1, inf) with q = p/(p-1) (q unused when p = 1) and the weight
/// defining || f ||_{p,omega}.
struct NormContext {
    double p;
    double q;
    Weight weight;

    NormContext(double p_, Weight w);
};

double norm_l1(const GroupFunction& f);                           // haar * sum |f|
double weighted_norm(const GroupFunction& f, const NormContext& ctx);
double weighted_l1_norm(const GroupFunction& f, const Weight& w);  // || f ||_{1,omega}
double log_weighted_norm(const GroupFunction& f, const NormContext& ctx);  // overflow-safe
double log_norm_l1(const GroupFunction& f);

}  // namespace lpalg
