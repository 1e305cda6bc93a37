#include "lpalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpalg {

namespace {

// certified bound on sum_{j > R} omega(step*j)^{-q} over integer j, via the
// exact lower envelope of omega
double inverse_q_index_tail(const Weight& w, double q, double R, double step) {
    auto env = w.exact_lower_envelope();
    if (!env.available)
        throw divergence_error("truncation tail needs an exact radial lower envelope (" +
                               w.descriptor() + ")");
    const double logc = -q * env.logK;
    if (env.Cexp > 0) {
        double a = q * env.Cexp * step;
        double geo = std::exp(-a * (R + 1)) / (1.0 - std::exp(-a));
        return std::exp(logc - q * env.D * std::log1p(step * R)) * geo;
    }
    if (!env.subexp.empty()) {
        double best = INFINITY;
        for (const auto& [C, g] : env.subexp) {
            double a = q * C;
            double s = 1.0 / g;
            double x = a * std::pow(step * R, g);
            if (x <= s) continue;
            double gamma_ub = std::pow(x, s - 1.0) * std::exp(-x) / (1.0 - (s - 1.0) / x);
            best = std::min(best, std::exp(logc) * (1.0 / (g * step)) * std::pow(a, -s) * gamma_ub);
        }
        return best;
    }
    double qD = q * env.D;
    if (qD <= 1.0) return INFINITY;
    return std::exp(logc) * std::pow(1.0 + step * R, 1.0 - qD) / (step * (qD - 1.0));
}

GroupElement line_elem(const GroupModel& model, std::int64_t k) {
    GroupElement x = model.identity();
    x[0] = k;
    return model.canonical(x);
}

}  // namespace

RatioSeries algebra_condition_ratio(const Weight& w, const GroupModel& model, double q,
                                    int m_max, double rel_tol) {
    if (model.kind() != GroupKind::IntegerLattice && model.kind() != GroupKind::MeshLine)
        throw std::invalid_argument("algebra_condition_ratio: Z or MeshLine model expected");
    if (model.dim() != 1) throw std::invalid_argument("algebra_condition_ratio: 1-d model expected");
    auto summable = w.inverse_q_summable(q);
    if (!summable.has_value())
        throw divergence_error("weight " + w.descriptor() + " has no summability certificate");
    if (!*summable)
        throw divergence_error("omega^{-q} is not summable for " + w.descriptor());

    const double haar = model.haar_mass();
    const double step = model.kind() == GroupKind::MeshLine ? model.mesh_step() : 1.0;

    // log u at integer position k (u = omega^{-q})
    auto log_u = [&](std::int64_t k) { return -q * w.log_eval(model, line_elem(model, k)); };

    RatioSeries out;
    out.R.resize(static_cast<std::size_t>(m_max) + 1);

    // Beyond n in [-R0, m+R0] the terms u(n) u(m-n) / u(m) are dominated by
    //  - u(step j), j = index distance past the window, when omega is radially
    //    monotone (then u(m-n) <= u(m) resp. u(n) <= u(m)), or
    //  - u_lower(step j)^2 * omega_up(m)^q in general (both factors decay).
    const bool sharp = w.radial_monotone();
    double log_amp = 0.0;  // log of the omega_up(m_max)^q amplification
    if (!sharp) {
        auto up = w.envelope();
        if (!up.available)
            throw divergence_error("no growth envelope for " + w.descriptor());
        log_amp = q * up.eval(step * m_max);
    }
    auto envL = w.exact_lower_envelope();
    auto tail_at = [&](int R) {
        double t = inverse_q_index_tail(w, q, R, step);
        if (!sharp) t *= std::exp(log_amp - q * envL.eval(step * R));
        return t;
    };
    // target: 2 * TailL(R0) <= rel_tol * floor; the sum is at least
    // u(0) = omega(e)^{-q} = scale^{-q} through the n = m term
    double floor_sum = std::exp(-q * std::log(std::max(w.scale(), 1.0)));
    int R0 = std::max(64, 2 * m_max);
    while (2.0 * tail_at(R0) > rel_tol * floor_sum) {
        R0 *= 2;
        if (R0 > (1 << 28))
            throw divergence_error("truncation radius did not certify for " + w.descriptor());
    }
    const double tail = 2.0 * haar * tail_at(R0);

    // cache log u over the full index window
    const std::int64_t lo_idx = -(static_cast<std::int64_t>(R0) + m_max);
    const std::int64_t hi_idx = static_cast<std::int64_t>(R0) + m_max;
    std::vector<double> logu(static_cast<std::size_t>(hi_idx - lo_idx + 1));
    for (std::int64_t k = lo_idx; k <= hi_idx; ++k)
        logu[static_cast<std::size_t>(k - lo_idx)] = log_u(k);
    auto lu = [&](std::int64_t k) { return logu[static_cast<std::size_t>(k - lo_idx)]; };

    double worst_rel = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        double lum = lu(m);
        double sum = 0.0;
        for (std::int64_t n = -R0; n <= m + R0; ++n)
            sum += std::exp(lu(n) + lu(m - n) - lum);
        sum *= haar;
        out.R[static_cast<std::size_t>(m)] = sum;
        worst_rel = std::max(worst_rel, tail / std::max(sum, 1e-300));
    }
    out.truncation_radius = R0;
    out.tail_rel_bound = worst_rel;

    auto mx = std::max_element(out.R.begin(), out.R.end());
    out.argmax = static_cast<int>(mx - out.R.begin());
    out.sup = *mx;
    // trailing-half linear fit
    int lo = m_max / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int m = lo; m <= m_max; ++m) {
        double x = m, y = out.R[static_cast<std::size_t>(m)];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    out.trend_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    out.verdict = (out.trend_slope > 1e-3) ? BoundVerdict::UnboundedTrend : BoundVerdict::Bounded;
    return out;
}

double inverse_q_mass(const Weight& w, const GroupModel& model, double q, double rel_tol) {
    if (model.kind() == GroupKind::CyclicGroup) {
        double s = 0.0;
        for (const auto& x : model.ball(model.cyclic_order()))
            s += std::exp(-q * w.log_eval(model, x));
        return model.haar_mass() * s;
    }
    if (model.dim() != 1)
        throw std::invalid_argument("inverse_q_mass: 1-d or cyclic model expected");
    auto summable = w.inverse_q_summable(q);
    if (!summable.has_value() || !*summable)
        throw divergence_error("omega^{-q} not summable for " + w.descriptor());
    const double step = model.kind() == GroupKind::MeshLine ? model.mesh_step() : 1.0;
    std::int64_t R = 64;
    for (;;) {
        double s = 0.0;
        for (std::int64_t k = -R; k <= R; ++k) {
            GroupElement x = model.identity();
            x[0] = k;
            s += std::exp(-q * w.log_eval(model, x));
        }
        double tail = 2.0 * inverse_q_index_tail(w, q, static_cast<double>(R), step);
        if (tail <= rel_tol * s) return model.haar_mass() * (s + tail);
        R *= 2;
        if (R > (std::int64_t(1) << 24))
            throw divergence_error("inverse_q_mass did not certify for " + w.descriptor());
    }
}

InequalityReport inequality_suite(const GroupFunction& f, const GroupFunction& g,
                                  const NormContext& ctx, double rel_slack) {
    InequalityReport rep;
    const GroupModel& model = f.model();
    auto push = [&](const std::string& name, double lhs, double rhs, const std::string& wit = "") {
        InequalityEntry e;
        e.name = name;
        e.lhs = lhs;
        e.rhs = rhs;
        e.holds = lhs <= rhs * (1.0 + rel_slack) + 1e-300;
        e.witness = wit;
        rep.entries.push_back(e);
        rep.all_hold = rep.all_hold && e.holds;
    };

    GroupFunction fg = convolve(f, g);
    const bool p1 = !(ctx.p > 1.0);
    double n_fg = p1 ? weighted_l1_norm(fg, ctx.weight) : weighted_norm(fg, ctx);
    double n_f1w = weighted_l1_norm(f, ctx.weight);
    double n_gp = p1 ? weighted_l1_norm(g, ctx.weight) : weighted_norm(g, ctx);
    push("module", n_fg, n_f1w * n_gp);

    if (ctx.weight.kind() == WeightKind::Polynomial) {
        int rad = 0;
        for (const auto& x : f.support()) rad = std::max(rad, model.word_length(x));
        for (const auto& x : g.support()) rad = std::max(rad, model.word_length(x));
        rep.pytlik_constant = pytlik_constant(ctx.weight, model, rad);
        double n_fp = p1 ? weighted_l1_norm(f, ctx.weight) : weighted_norm(f, ctx);
        double rhs = rep.pytlik_constant * (n_fp * norm_l1(g) + n_gp * norm_l1(f));
        push("pytlik", n_fg, rhs);
    }

    if (!p1) {
        double mass = inverse_q_mass(ctx.weight, model, ctx.q);
        double emb = std::pow(mass, 1.0 / ctx.q);
        push("embedding", norm_l1(f), emb * weighted_norm(f, ctx));
    } else {
        push("embedding", norm_l1(f), weighted_l1_norm(f, ctx.weight));
    }

    {
        double a = p1 ? weighted_l1_norm(involution(f), ctx.weight)
                      : weighted_norm(involution(f), ctx);
        double b = p1 ? weighted_l1_norm(f, ctx.weight) : weighted_norm(f, ctx);
        InequalityEntry e;
        e.name = "involution-isometry";
        e.lhs = a;
        e.rhs = b;
        e.holds = std::abs(a - b) <= rel_slack * std::max(1.0, b);
        rep.entries.push_back(e);
        rep.all_hold = rep.all_hold && e.holds;
    }

    for (const auto& x : model.ball(std::min(3, model.radius_cap()))) {
        double lhs = p1 ? weighted_l1_norm(translate(x, f), ctx.weight)
                        : weighted_norm(translate(x, f), ctx);
        double rhs = ctx.weight.eval(model, x) *
                     (p1 ? weighted_l1_norm(f, ctx.weight) : weighted_norm(f, ctx));
        std::ostringstream wit;
        wit << "x=" << x.str();
        push("translation", lhs, rhs, wit.str());
    }
    return rep;
}

GroupFunction approximate_unit(const GroupModel& model, int k, double compact_cap) {
    if (model.kind() != GroupKind::MeshLine)
        throw std::invalid_argument("approximate_unit: MeshLine model expected");
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("approximate_unit: odd k >= 1 expected");
    const double h = model.mesh_step();
    const int half = (k - 1) / 2;
    if (half * h > compact_cap)
        throw std::invalid_argument("approximate_unit: support exceeds the compact cap");
    std::vector<std::pair<GroupElement, Complex>> pairs;
    for (int j = -half; j <= half; ++j) pairs.push_back({GroupElement{j}, 1.0 / (k * h)});
    return GroupFunction(model, std::move(pairs));
}

}  // namespace lpalg
