#include "lpalg/weight.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace lpalg {

double LogGrowthEnvelope::eval(double n) const {
    double v = logK + D * std::log1p(n) + Cexp * n;
    for (const auto& [c, g] : subexp) v += c * std::pow(n, g);
    return v;
}

struct Weight::Impl {
    WeightKind kind = WeightKind::Polynomial;
    double K = 1.0, D = 0.0;       // polynomial
    double C = 0.0, gamma = 0.5;   // (sub)exponential
    std::vector<Weight> factors;   // product
    std::shared_ptr<OperatorModel> op;
    std::map<GroupElement, double> table;
    double fill = 1.0;
    LengthMode mode = LengthMode::Word;
    double scale = 1.0;

    // prefix maxima of log omega over integer radii (Operator kind)
    mutable std::mutex cache_mutex;
    mutable std::vector<double> radial_max_cache;

    Impl() = default;
    Impl(const Impl& o)
        : kind(o.kind), K(o.K), D(o.D), C(o.C), gamma(o.gamma), factors(o.factors),
          op(o.op), table(o.table), fill(o.fill), mode(o.mode), scale(o.scale) {}
};

Weight Weight::polynomial(double K, double D) {
    if (!(K >= 1.0) || !(D > 0.0)) throw std::invalid_argument("polynomial weight: K >= 1, D > 0");
    auto impl = std::make_shared<Impl>();
    impl->kind = WeightKind::Polynomial;
    impl->K = K;
    impl->D = D;
    return Weight(std::move(impl));
}

Weight Weight::sub_exponential(double C, double gamma) {
    if (!(C > 0.0) || !(gamma > 0.0) || !(gamma <= 1.0))
        throw std::invalid_argument("sub_exponential weight: C > 0, gamma in (0,1]");
    auto impl = std::make_shared<Impl>();
    impl->kind = WeightKind::SubExponential;
    impl->C = C;
    impl->gamma = gamma;
    return Weight(std::move(impl));
}

Weight Weight::exponential(double C) {
    if (!(C > 0.0)) throw std::invalid_argument("exponential weight: C > 0");
    auto impl = std::make_shared<Impl>();
    impl->kind = WeightKind::Exponential;
    impl->C = C;
    return Weight(std::move(impl));
}

Weight Weight::product(const Weight& u, const Weight& w1) {
    auto impl = std::make_shared<Impl>();
    impl->kind = WeightKind::Product;
    impl->factors = {u, w1};
    impl->mode = w1.length_mode();
    return Weight(std::move(impl));
}

Weight Weight::operator_weight(OperatorModel T) {
    auto impl = std::make_shared<Impl>();
    impl->kind = WeightKind::Operator;
    impl->op = std::make_shared<OperatorModel>(std::move(T));
    return Weight(std::move(impl));
}

Weight Weight::table(std::map<GroupElement, double> values, double fill) {
    for (const auto& [el, v] : values)
        if (!(v >= 1.0)) throw std::invalid_argument("table weight: values must be >= 1");
    if (!(fill >= 1.0)) throw std::invalid_argument("table weight: fill must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = WeightKind::Table;
    impl->table = std::move(values);
    impl->fill = fill;
    return Weight(std::move(impl));
}

WeightKind Weight::kind() const { return impl_->kind; }
LengthMode Weight::length_mode() const { return impl_->mode; }
double Weight::scale() const { return impl_->scale; }

Weight Weight::with_length_mode(LengthMode mode) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->mode = mode;
    if (impl->kind == WeightKind::Product)
        for (auto& f : impl->factors) f = f.with_length_mode(mode);
    return Weight(std::move(impl));
}

Weight Weight::scaled_by(double c) const {
    if (!(c >= 1.0)) throw std::invalid_argument("scaled_by: factor >= 1 required");
    auto impl = std::make_shared<Impl>(*impl_);
    impl->scale *= c;
    return Weight(std::move(impl));
}

double Weight::log_eval_radius(double r) const {
    const Impl& im = *impl_;
    double base = std::log(im.scale);
    switch (im.kind) {
        case WeightKind::Polynomial:
            return base + std::log(im.K) + im.D * std::log1p(r);
        case WeightKind::SubExponential:
            return base + im.C * std::pow(r, im.gamma);
        case WeightKind::Exponential:
            return base + im.C * r;
        case WeightKind::Product: {
            double v = base;
            for (const auto& f : im.factors) v += f.log_eval_radius(r);
            return v;
        }
        case WeightKind::Operator:
            return base + std::log(omega_T(*im.op, r));
        case WeightKind::Table:
            throw std::invalid_argument("table weight has no radial form");
    }
    throw std::logic_error("unreachable");
}

double Weight::log_eval(const GroupModel& model, const GroupElement& x) const {
    const Impl& im = *impl_;
    if (im.kind == WeightKind::Table) {
        auto it = im.table.find(model.canonical(x));
        double v = it != im.table.end() ? it->second : im.fill;
        return std::log(im.scale) + std::log(v);
    }
    GroupElement cx = model.canonical(x);
    if (im.mode == LengthMode::Word && cx == model.identity()) return std::log(im.scale);
    return log_eval_radius(model.length(cx, im.mode));
}

double Weight::eval(const GroupModel& model, const GroupElement& x) const {
    return std::exp(log_eval(model, x));
}

bool Weight::radial_monotone() const {
    switch (impl_->kind) {
        case WeightKind::Polynomial:
        case WeightKind::SubExponential:
        case WeightKind::Exponential:
            return true;
        case WeightKind::Product:
            return std::all_of(impl_->factors.begin(), impl_->factors.end(),
                               [](const Weight& f) { return f.radial_monotone(); });
        case WeightKind::Operator:
        case WeightKind::Table:
            return false;
    }
    return false;
}

double Weight::log_sup_on_ball(const GroupModel& model, int n) const {
    const Impl& im = *impl_;
    if (n < 0) throw std::invalid_argument("sup_on_ball: n >= 0");
    if (n == 0) return std::log(im.scale);  // s(0) = omega(e)
    if (radial_monotone()) {
        double r = im.mode == LengthMode::Absolute ? n * model.mesh_step()
                                                   : static_cast<double>(n);
        return log_eval_radius(r);
    }
    if (im.kind == WeightKind::Operator) {
        // prefix maxima over integer radii; the supremum over the ball is the
        // max over mesh radii j*h (Absolute) or j (Word), j <= n
        std::lock_guard<std::mutex> lock(im.cache_mutex);
        while (static_cast<int>(im.radial_max_cache.size()) < n) {
            int j = static_cast<int>(im.radial_max_cache.size()) + 1;
            double r = im.mode == LengthMode::Absolute ? j * model.mesh_step()
                                                       : static_cast<double>(j);
            double v = log_eval_radius(r);
            double prev = im.radial_max_cache.empty() ? std::log(im.scale)
                                                      : im.radial_max_cache.back();
            im.radial_max_cache.push_back(std::max(prev, v));
        }
        return im.radial_max_cache[static_cast<std::size_t>(n - 1)];
    }
    // table: exhaustive over the ball
    double best = std::log(im.scale);
    for (const auto& x : model.ball(n)) best = std::max(best, log_eval(model, x));
    return best;
}

double Weight::sup_on_ball(const GroupModel& model, int n) const {
    return std::exp(log_sup_on_ball(model, n));
}

LogGrowthEnvelope Weight::envelope() const {
    const Impl& im = *impl_;
    LogGrowthEnvelope env;
    env.logK = std::log(im.scale);
    switch (im.kind) {
        case WeightKind::Polynomial:
            env.available = env.exact = true;
            env.logK += std::log(im.K);
            env.D = im.D;
            return env;
        case WeightKind::SubExponential:
            env.available = env.exact = true;
            if (im.gamma < 1.0)
                env.subexp.push_back({im.C, im.gamma});
            else
                env.Cexp = im.C;
            return env;
        case WeightKind::Exponential:
            env.available = env.exact = true;
            env.Cexp = im.C;
            return env;
        case WeightKind::Product: {
            env.available = env.exact = true;
            for (const auto& f : im.factors) {
                auto sub = f.envelope();
                if (!sub.available) return LogGrowthEnvelope{};
                env.exact = env.exact && sub.exact;
                env.logK += sub.logK;
                env.D += sub.D;
                env.Cexp += sub.Cexp;
                for (const auto& t : sub.subexp) env.subexp.push_back(t);
            }
            return env;
        }
        case WeightKind::Operator: {
            int m = im.op->nilpotent_order();
            if (m > 0) {
                // sum_{k<m} r^k / k! <= m (1+r)^{m-1}
                env.available = true;
                env.exact = false;
                env.logK += std::log(static_cast<double>(m));
                env.D = static_cast<double>(m - 1);
            } else {
                env.available = true;
                env.exact = false;
                env.Cexp = 1.0;  // ||e^{xT}|| <= e^{|x|}
            }
            return env;
        }
        case WeightKind::Table:
            return LogGrowthEnvelope{};
    }
    return LogGrowthEnvelope{};
}

LogGrowthEnvelope Weight::exact_lower_envelope() const {
    const Impl& im = *impl_;
    if (im.kind == WeightKind::Product) {
        LogGrowthEnvelope env;
        env.available = false;
        env.exact = true;
        env.logK = std::log(im.scale);
        for (const auto& f : im.factors) {
            auto sub = f.exact_lower_envelope();
            if (!sub.available) continue;  // factor >= 1 drops out of the lower bound
            env.available = true;
            env.logK += sub.logK;
            env.D += sub.D;
            env.Cexp += sub.Cexp;
            for (const auto& t : sub.subexp) env.subexp.push_back(t);
        }
        return env;
    }
    auto env = envelope();
    if (!env.available || !env.exact) return LogGrowthEnvelope{};
    return env;
}

std::optional<double> Weight::exp_rate() const {
    auto env = envelope();
    if (!env.available || !env.exact) return std::nullopt;
    return env.Cexp;
}

std::optional<bool> Weight::inverse_q_summable(double q) const {
    auto env = exact_lower_envelope();
    if (!env.available) return std::nullopt;
    if (env.Cexp > 0) return true;
    if (!env.subexp.empty()) return true;
    return q * env.D > 1.0;
}

double Weight::inverse_q_tail_bound(double q, double R) const {
    auto env = exact_lower_envelope();
    if (!env.available)
        throw std::invalid_argument("tail bound needs an exact radial lower envelope");
    if (R < 1) R = 1;
    const double logc = -q * env.logK;  // constant factor exp(-q logK)
    if (env.Cexp > 0) {
        // sum_{j>R} e^{-q g(j)} <= e^{-q D ln(1+R)} * sum_{j>R} e^{-q Cexp j}
        double a = q * env.Cexp;
        double geo = std::exp(-a * (R + 1)) / (1.0 - std::exp(-a));
        return std::exp(logc - q * env.D * std::log1p(R)) * geo;
    }
    if (!env.subexp.empty()) {
        // dominate with the strongest single sub-exponential term
        double best = INFINITY;
        for (const auto& [C, g] : env.subexp) {
            double a = q * C;
            double s = 1.0 / g;
            double x = a * std::pow(R, g);
            if (x <= s) continue;  // bound not valid yet; caller should enlarge R
            // int_R^inf e^{-a t^g} dt = (1/g) a^{-1/g} Gamma(1/g, a R^g)
            // Gamma(s,x) <= x^{s-1} e^{-x} / (1 - (s-1)/x) for x > s-1
            double gamma_ub = std::pow(x, s - 1.0) * std::exp(-x) / (1.0 - (s - 1.0) / x);
            double bound = (1.0 / g) * std::pow(a, -s) * gamma_ub;
            best = std::min(best, bound * std::exp(logc));
        }
        return best;
    }
    double qD = q * env.D;
    if (qD <= 1.0) return INFINITY;
    return std::exp(logc) * std::pow(1.0 + R, 1.0 - qD) / (qD - 1.0);
}

std::optional<bool> Weight::critical_line_summable(double q) const {
    auto env = envelope();
    if (!env.available || !env.exact) return std::nullopt;
    if (!env.subexp.empty()) return true;
    return q * env.D > 1.0;
}

std::string Weight::descriptor() const {
    const Impl& im = *impl_;
    std::ostringstream os;
    if (im.scale != 1.0) os << im.scale << "*";
    switch (im.kind) {
        case WeightKind::Polynomial:
            os << "poly:K=" << im.K << ",D=" << im.D;
            break;
        case WeightKind::SubExponential:
            os << "subexp:C=" << im.C << ",gamma=" << im.gamma;
            break;
        case WeightKind::Exponential:
            os << "exp:C=" << im.C;
            break;
        case WeightKind::Product: {
            os << "prod(";
            for (std::size_t i = 0; i < im.factors.size(); ++i)
                os << (i ? "|" : "") << im.factors[i].descriptor();
            os << ")";
            break;
        }
        case WeightKind::Operator:
            os << "operator:n=" << im.op->size();
            break;
        case WeightKind::Table:
            os << "table:" << im.table.size() << " entries";
            break;
    }
    return os.str();
}

AxiomReport check_weight_axioms(const Weight& w, const GroupModel& model, int n,
                                double rel_slack) {
    AxiomReport rep;
    auto b = model.ball(n);
    std::vector<double> logw(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) logw[i] = w.log_eval(model, b[i]);

    for (std::size_t i = 0; i < b.size(); ++i) {
        double li = w.log_eval(model, model.inverse(b[i]));
        double gap = std::abs(logw[i] - li);
        if (gap > rep.worst_symmetry_gap) {
            rep.worst_symmetry_gap = gap;
            rep.symmetry_witness = b[i];
        }
    }
    if (rep.worst_symmetry_gap > rel_slack) rep.symmetric = false;

    rep.worst_ratio = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            double lxy = w.log_eval(model, model.multiply(b[i], b[j]));
            double ratio = std::exp(lxy - logw[i] - logw[j]);
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.witness_x = b[i];
                rep.witness_y = b[j];
            }
        }
    }
    if (rep.worst_ratio > 1.0 + rel_slack) rep.submultiplicative = false;
    return rep;
}

Weight renormalize(const Weight& w, double c1, double c2, double q) {
    if (!(c1 >= 1.0) || !(c2 >= 1.0))
        throw std::invalid_argument("renormalize: constants >= 1 expected");
    double c = std::max(c1, std::pow(c2, 1.0 / q));
    return w.scaled_by(c);
}

double pytlik_constant(const Weight& w, const GroupModel& model, int n) {
    auto b = model.ball(n);
    std::vector<double> vals(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) vals[i] = w.eval(model, b[i]);
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            double num = w.eval(model, model.multiply(b[i], b[j]));
            worst = std::max(worst, num / (vals[i] + vals[j]));
        }
    return worst;
}

}  // namespace lpalg
