#include "lpalg/group_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lpalg {

GroupFunction::GroupFunction(GroupModel model) : model_(std::move(model)) {}

GroupFunction::GroupFunction(GroupModel model,
                             std::vector<std::pair<GroupElement, Complex>> pairs)
    : model_(std::move(model)) {
    support_.reserve(pairs.size());
    values_.reserve(pairs.size());
    for (auto& [el, v] : pairs) {
        support_.push_back(model_.canonical(el));
        values_.push_back(v);
    }
    normalize();
}

GroupFunction GroupFunction::delta(const GroupModel& model, const GroupElement& x, Complex value) {
    return GroupFunction(model, {{x, value}});
}

void GroupFunction::normalize() {
    std::vector<std::size_t> idx(support_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return support_[a] < support_[b]; });
    std::vector<GroupElement> s;
    std::vector<Complex> v;
    s.reserve(support_.size());
    v.reserve(values_.size());
    for (std::size_t k : idx) {
        if (!s.empty() && s.back() == support_[k]) {
            v.back() += values_[k];
        } else {
            s.push_back(support_[k]);
            v.push_back(values_[k]);
        }
    }
    double mx = 0.0;
    for (const auto& z : v) mx = std::max(mx, std::abs(z));
    double cut = 1e-15 * mx;
    support_.clear();
    values_.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(v[i]) > cut) {
            support_.push_back(s[i]);
            values_.push_back(v[i]);
        }
    }
}

Complex GroupFunction::value_at(const GroupElement& x) const {
    GroupElement cx = model_.canonical(x);
    auto it = std::lower_bound(support_.begin(), support_.end(), cx);
    if (it != support_.end() && *it == cx)
        return values_[static_cast<std::size_t>(it - support_.begin())];
    return 0.0;
}

double GroupFunction::max_abs() const {
    double mx = 0.0;
    for (const auto& z : values_) mx = std::max(mx, std::abs(z));
    return mx;
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& g) {
    if (!model_.same_model(g.model_)) throw std::invalid_argument("model mismatch");
    std::vector<std::pair<GroupElement, Complex>> pairs;
    pairs.reserve(size() + g.size());
    for (std::size_t i = 0; i < size(); ++i) pairs.push_back({support_[i], values_[i]});
    for (std::size_t i = 0; i < g.size(); ++i) pairs.push_back({g.support_[i], g.values_[i]});
    *this = GroupFunction(model_, std::move(pairs));
    return *this;
}

GroupFunction& GroupFunction::operator*=(Complex c) {
    for (auto& v : values_) v *= c;
    if (c == Complex(0.0, 0.0)) {
        support_.clear();
        values_.clear();
    }
    return *this;
}

double GroupFunction::self_adjoint_defect() const {
    double mx = max_abs();
    if (mx == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        Complex mirror = std::conj(value_at(model_.inverse(support_[i])));
        worst = std::max(worst, std::abs(values_[i] - mirror));
    }
    return worst / mx;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g, std::size_t pair_budget) {
    if (!f.model().same_model(g.model())) throw std::invalid_argument("convolve: model mismatch");
    const GroupModel& model = f.model();
    if (f.size() * g.size() > pair_budget)
        throw budget_error("convolve: support pair count " +
                           std::to_string(f.size() * g.size()) + " exceeds budget");
    std::map<GroupElement, Complex> acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const GroupElement& y = f.support()[i];
        const Complex fy = f.values()[i];
        for (std::size_t j = 0; j < g.size(); ++j) {
            acc[model.multiply(y, g.support()[j])] += fy * g.values()[j];
        }
    }
    const double haar = model.haar_mass();
    std::vector<std::pair<GroupElement, Complex>> pairs;
    pairs.reserve(acc.size());
    for (auto& [el, v] : acc) pairs.push_back({el, haar * v});
    return GroupFunction(model, std::move(pairs));
}

GroupFunction involution(const GroupFunction& f) {
    const GroupModel& model = f.model();
    std::vector<std::pair<GroupElement, Complex>> pairs;
    pairs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        pairs.push_back({model.inverse(f.support()[i]), std::conj(f.values()[i])});
    return GroupFunction(model, std::move(pairs));
}

GroupFunction translate(const GroupElement& x, const GroupFunction& f) {
    const GroupModel& model = f.model();
    std::vector<std::pair<GroupElement, Complex>> pairs;
    pairs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        pairs.push_back({model.multiply(x, f.support()[i]), f.values()[i]});
    return GroupFunction(model, std::move(pairs));
}

GroupFunction conv_power(const GroupFunction& f, int n, PowerMethod method,
                         std::size_t pair_budget) {
    if (n < 1) throw std::invalid_argument("conv_power: n >= 1");
    if (method == PowerMethod::Repeated) {
        GroupFunction acc = f;
        for (int k = 2; k <= n; ++k) acc = convolve(acc, f, pair_budget);
        return acc;
    }
    GroupFunction acc = GroupFunction::delta(f.model(), f.model().identity(),
                                             1.0 / f.model().haar_mass());
    GroupFunction base = f;
    int m = n;
    bool acc_used = false;
    while (m > 0) {
        if (m & 1) {
            acc = acc_used ? convolve(acc, base, pair_budget) : base;
            acc_used = true;
        }
        m >>= 1;
        if (m > 0) base = convolve(base, base, pair_budget);
    }
    return acc;
}

NormContext::NormContext(double p_, Weight w) : p(p_), q(0.0), weight(std::move(w)) {
    if (!(p >= 1.0)) throw std::invalid_argument("NormContext: p >= 1 required");
    q = p > 1.0 ? p / (p - 1.0) : std::numeric_limits<double>::infinity();
}

double norm_l1(const GroupFunction& f) {
    double s = 0.0;
    for (const auto& z : f.values()) s += std::abs(z);
    return f.model().haar_mass() * s;
}

double log_norm_l1(const GroupFunction& f) { return std::log(norm_l1(f)); }

double weighted_norm(const GroupFunction& f, const NormContext& ctx) {
    return std::exp(log_weighted_norm(f, ctx));
}

double log_weighted_norm(const GroupFunction& f, const NormContext& ctx) {
    if (f.empty()) return -std::numeric_limits<double>::infinity();
    // log-sum-exp of p*(log|f| + log omega), all in log space
    std::vector<double> terms;
    terms.reserve(f.size());
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
        double av = std::abs(f.values()[i]);
        if (av == 0.0) continue;
        double t = ctx.p * (std::log(av) + ctx.weight.log_eval(f.model(), f.support()[i]));
        terms.push_back(t);
        mx = std::max(mx, t);
    }
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    double lognorm_p = mx + std::log(s) + std::log(f.model().haar_mass());
    return lognorm_p / ctx.p;
}

double weighted_l1_norm(const GroupFunction& f, const Weight& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::abs(f.values()[i]) * w.eval(f.model(), f.support()[i]);
    return f.model().haar_mass() * s;
}

}  // namespace lpalg
