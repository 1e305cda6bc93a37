#include "lpalg/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lpalg/algebra.hpp"

namespace lpalg {

namespace {

double log_selected_norm(const GroupFunction& f, const NormContext& ctx, NormSelector sel) {
    switch (sel) {
        case NormSelector::L1:
            return log_norm_l1(f);
        case NormSelector::L1Weighted: {
            NormContext c1(1.0, ctx.weight);
            return log_weighted_norm(f, c1);
        }
        case NormSelector::LpWeighted:
            return log_weighted_norm(f, ctx);
    }
    throw std::logic_error("unreachable");
}

std::optional<double> pytlik_analytic_constant(const Weight& w) {
    if (w.kind() != WeightKind::Polynomial) return std::nullopt;
    // K(1+|xy|)^D <= C (K(1+|x|)^D + K(1+|y|)^D) with C = max(1, 2^{D-1})
    auto env = w.envelope();
    return std::max(1.0, std::pow(2.0, env.D - 1.0));
}

}  // namespace

SpectralEstimate spectral_radius_estimate(const GroupFunction& f, const NormContext& ctx,
                                          int k_max, NormSelector norm,
                                          std::size_t support_budget) {
    if (k_max < 3) throw std::invalid_argument("spectral_radius_estimate: k_max >= 3");
    SpectralEstimate est;
    est.norm = norm;
    est.self_adjoint_input = f.self_adjoint_defect() < 1e-12;

    auto pytlik_c = pytlik_analytic_constant(ctx.weight);
    const double log_f_sel = log_selected_norm(f, ctx, norm);
    const double log_f1 = log_norm_l1(f);

    GroupFunction g = f;
    double log_scale = 0.0;  // f^{*2^k} = g * exp(log_scale)
    for (int k = 1; k <= k_max; ++k) {
        if (g.size() * g.size() > support_budget) {
            est.truncated = true;
            break;
        }
        g = convolve(g, g);
        log_scale *= 2.0;
        double mx = g.max_abs();
        if (mx == 0.0) break;
        log_scale += std::log(mx);
        g *= Complex(1.0 / mx, 0.0);

        const std::int64_t N = std::int64_t(1) << k;
        double log_norm = log_scale + log_selected_norm(g, ctx, norm);
        SpectralPoint pt;
        pt.k = k;
        pt.N = N;
        pt.root = std::exp(log_norm / static_cast<double>(N));
        est.points.push_back(pt);
        if (pytlik_c) {
            double chain = k * std::log(2.0 * *pytlik_c) + log_f_sel +
                           (static_cast<double>(N) - 1.0) * log_f1;
            est.pytlik_chain_log.push_back(chain);
        }
    }
    if (est.points.empty()) throw budget_error("spectral_radius_estimate: no points computed");

    // two-level Richardson on x_k = log root_k, removing (a k + b)/2^k bias
    std::vector<double> x;
    for (const auto& pt : est.points) x.push_back(std::log(pt.root));
    std::vector<double> y, z;
    for (std::size_t i = 1; i < x.size(); ++i) y.push_back(2.0 * x[i] - x[i - 1]);
    for (std::size_t i = 1; i < y.size(); ++i) z.push_back(2.0 * y[i] - y[i - 1]);
    const double last_root = est.points.back().root;
    if (z.size() >= 2) {
        est.extrapolated = std::exp(z.back());
        est.slack = std::abs(std::exp(z.back()) - std::exp(z[z.size() - 2]));
    } else {
        est.extrapolated = last_root;
        est.slack = std::abs(last_root - est.points.front().root);
    }
    est.lower = std::min(est.extrapolated - 2.0 * est.slack, last_root);
    est.upper = std::max(est.extrapolated + 2.0 * est.slack, last_root);
    return est;
}

std::complex<double> character_eval(const GroupFunction& f, double theta) {
    if (f.model().kind() != GroupKind::IntegerLattice &&
        f.model().kind() != GroupKind::MeshLine)
        throw std::invalid_argument("character_eval(theta): Z or MeshLine model expected");
    if (f.model().dim() != 1)
        throw std::invalid_argument("character_eval: 1-d model expected");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double n = static_cast<double>(f.support()[i][0]);
        s += f.values()[i] * std::polar(1.0, n * theta);
    }
    return f.model().haar_mass() * s;
}

std::complex<double> character_eval_cyclic(const GroupFunction& f, int j) {
    if (f.model().kind() != GroupKind::CyclicGroup)
        throw std::invalid_argument("character_eval_cyclic: cyclic model expected");
    const int N = f.model().cyclic_order();
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double x = static_cast<double>(f.support()[i][0]);
        s += f.values()[i] * std::polar(1.0, 2.0 * M_PI * j * x / N);
    }
    return s;
}

CharacterDomain character_domain(const Weight& w, const GroupModel& model, double q,
                                 const std::vector<double>& a_grid) {
    if (model.kind() != GroupKind::IntegerLattice || model.dim() != 1)
        throw std::invalid_argument("character_domain: Z model expected");
    auto rate = w.exp_rate();
    if (!rate.has_value())
        throw std::invalid_argument("character_domain: envelope unavailable for " +
                                    w.descriptor());
    auto base_summable = w.inverse_q_summable(q);
    auto critical = w.critical_line_summable(q);
    CharacterDomain dom;
    dom.rate = *rate;
    for (double a : a_grid) {
        double aa = std::abs(a);
        bool adm;
        if (aa < *rate - 1e-12)
            adm = true;
        else if (aa > *rate + 1e-12)
            adm = false;
        else if (*rate > 0)
            adm = critical.value_or(false);
        else
            adm = base_summable.value_or(false);
        if (adm) dom.admissible.push_back(a);
    }
    return dom;
}

std::vector<std::complex<double>> finite_spectrum(const GroupFunction& f) {
    if (f.model().kind() != GroupKind::CyclicGroup)
        throw std::invalid_argument("finite_spectrum: cyclic model expected");
    const int N = f.model().cyclic_order();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            GroupElement d{static_cast<std::int64_t>(i - j)};
            A(i, j) = f.value_at(d);
        }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

}  // namespace lpalg
