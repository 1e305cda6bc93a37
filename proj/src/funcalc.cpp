#include "lpalg/funcalc.hpp"

#include <algorithm>
#include <cmath>

namespace lpalg {

namespace {

// C-infinity step: 0 at u <= 0, 1 at u >= 1.
double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double h0 = std::exp(-1.0 / u);
    double h1 = std::exp(-1.0 / (1.0 - u));
    return h0 / (h0 + h1);
}

// remainder sum_{k > K} a^k / k! computed through the leading term in log
// space; requires K + 2 > a
double factorial_tail(double a, int K) {
    if (a <= 0.0) return 0.0;
    if (K + 2 <= a) return INFINITY;
    double log_term = (K + 1) * std::log(a) - std::lgamma(static_cast<double>(K + 2));
    return std::exp(log_term) / (1.0 - a / (K + 2));
}

double norm_1w(const GroupFunction& f, const NormContext& ctx) {
    return weighted_l1_norm(f, ctx.weight);
}

double norm_pw(const GroupFunction& f, const NormContext& ctx) {
    return ctx.p > 1.0 ? weighted_norm(f, ctx) : weighted_l1_norm(f, ctx.weight);
}

}  // namespace

PeriodicBump::PeriodicBump(double a, double b, double eps, int n_max)
    : a_(a), b_(b), eps_(eps), n_max_(n_max) {
    const double two_pi = 2.0 * M_PI;
    if (!(0.0 < a && a < a + eps && a + eps < b - eps && b - eps < b && b < two_pi))
        throw std::invalid_argument("PeriodicBump: need 0 < a < a+eps < b-eps < b < 2pi");
    if (n_max < 1) throw std::invalid_argument("PeriodicBump: n_max >= 1");

    const int stored = std::max(4 * n_max, 256);
    int M = 1;
    while (M < 16 * stored || M < 16384) M *= 2;
    std::vector<double> samples(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) samples[static_cast<std::size_t>(i)] = eval(two_pi * i / M);

    coeffs_.assign(static_cast<std::size_t>(stored) + 1, 0.0);
    for (int n = 0; n <= stored; ++n) {
        std::complex<double> acc = 0.0;
        const double w = -two_pi * n / M;
        for (int i = 0; i < M; ++i)
            acc += samples[static_cast<std::size_t>(i)] * std::polar(1.0, w * i);
        coeffs_[static_cast<std::size_t>(n)] = acc / static_cast<double>(M);
    }
}

double PeriodicBump::eval(double t) const {
    const double two_pi = 2.0 * M_PI;
    t = std::fmod(t, two_pi);
    if (t < 0) t += two_pi;
    if (t <= a_ || t >= b_) return 0.0;
    if (t < a_ + eps_) return smoothstep((t - a_) / eps_);
    if (t <= b_ - eps_) return 1.0;
    return smoothstep((b_ - t) / eps_);
}

std::complex<double> PeriodicBump::coefficient(int n) const {
    int an = std::abs(n);
    if (an > stored_order())
        throw std::out_of_range("PeriodicBump::coefficient: order " + std::to_string(n) +
                                " beyond stored " + std::to_string(stored_order()));
    auto c = coeffs_[static_cast<std::size_t>(an)];
    return n >= 0 ? c : std::conj(c);
}

std::complex<double> PeriodicBump::eval_truncated(double t, int N) const {
    if (N < 0) N = n_max_;
    N = std::min(N, stored_order());
    std::complex<double> s = coeffs_[0];
    for (int n = 1; n <= N; ++n) {
        auto c = coeffs_[static_cast<std::size_t>(n)];
        s += c * std::polar(1.0, n * t) + std::conj(c) * std::polar(1.0, -n * t);
    }
    return s;
}

double PeriodicBump::coefficient_tail(int N) const {
    double s = 0.0;
    for (int n = N + 1; n <= stored_order(); ++n)
        s += 2.0 * std::abs(coeffs_[static_cast<std::size_t>(n)]);
    // fitted O(n^-6) remainder beyond the stored order
    double c6 = 0.0;
    for (int n = stored_order() / 2; n <= stored_order(); ++n)
        c6 = std::max(c6, std::abs(coeffs_[static_cast<std::size_t>(n)]) * std::pow(n, 6.0));
    s += 2.0 * c6 / (5.0 * std::pow(static_cast<double>(stored_order()), 5.0));
    return s;
}

std::vector<double> PeriodicBump::decay_constants(int m_up_to) const {
    std::vector<double> cs(static_cast<std::size_t>(m_up_to), 0.0);
    for (int n = 1; n <= n_max_ && n <= stored_order(); ++n) {
        double mag = std::abs(coeffs_[static_cast<std::size_t>(n)]);
        double pw = 1.0;
        for (int m = 1; m <= m_up_to; ++m) {
            pw *= n;
            cs[static_cast<std::size_t>(m - 1)] =
                std::max(cs[static_cast<std::size_t>(m - 1)], mag * pw);
        }
    }
    return cs;
}

SeriesResult u_series(const GroupFunction& f, int n, const NormContext& ctx,
                      const SeriesBudget& budget) {
    if (f.self_adjoint_defect() > 1e-10)
        throw std::invalid_argument("u_series: f = f* required (defect " +
                                    std::to_string(f.self_adjoint_defect()) + ")");
    SeriesResult res{GroupFunction(f.model()), 0.0, 0};
    if (n == 0 || f.empty()) return res;

    const double B = std::max(norm_1w(f, ctx), 1e-300);
    const double a = std::abs(n) * B;
    const double scale = norm_pw(f, ctx) / B;
    int K = budget.k_max;
    while (scale * factorial_tail(a, K) > budget.abs_tol) {
        K *= 2;
        if (K > 4096)
            throw series_divergence_error("u_series: remainder does not reach abs_tol");
    }
    res.tail_bound = scale * factorial_tail(a, K);
    res.terms = K;

    GroupFunction power = f;                   // f^{*k}
    std::complex<double> coef(0.0, 1.0);       // (i n)^k / k!
    coef *= static_cast<double>(n);
    GroupFunction acc(f.model());
    for (int k = 1; k <= K; ++k) {
        acc += coef * power;
        if (k == K) break;
        power = convolve(power, f, budget.support_cap);
        coef *= std::complex<double>(0.0, 1.0) * static_cast<double>(n) /
                static_cast<double>(k + 1);
    }
    res.value = std::move(acc);
    return res;
}

SeriesResult u_recursive(const GroupFunction& f, int n, const NormContext& ctx,
                         const SeriesBudget& budget) {
    if (n < 1) throw std::invalid_argument("u_recursive: n >= 1");
    SeriesBudget tight = budget;
    tight.abs_tol = budget.abs_tol * 1e-3;
    SeriesResult u1 = u_series(f, 1, ctx, tight);
    SeriesResult res = u1;
    double u1n = norm_1w(u1.value, ctx);
    for (int k = 2; k <= n; ++k) {
        double ukn = norm_1w(res.value, ctx);
        res.value = res.value + u1.value + convolve(res.value, u1.value, budget.support_cap);
        res.tail_bound = res.tail_bound * (1.0 + u1n) + u1.tail_bound * (1.0 + ukn);
        res.terms += 1;
    }
    return res;
}

PsiOfF psi_of_f(const GroupFunction& f, const PeriodicBump& psi, const NormContext& ctx,
                const SeriesBudget& budget) {
    if (f.self_adjoint_defect() > 1e-10)
        throw std::invalid_argument("psi_of_f: f = f* required");
    if (norm_l1(f) > 1.0 + 1e-12)
        throw std::invalid_argument("psi_of_f: ||f||_1 <= 1 required (got " +
                                    std::to_string(norm_l1(f)) + ")");
    const int N = std::min(budget.n_max, psi.stored_order());

    SeriesBudget tight = budget;
    tight.abs_tol = budget.abs_tol * 1e-3;
    SeriesResult u1 = u_series(f, 1, ctx, tight);

    PsiOfF out{GroupFunction(f.model()), 0.0, {}};
    GroupFunction u_n = u1.value;  // u(nf), built by the product identity
    int increasing_run = 0;
    double prev_term = INFINITY;
    for (int n = 1; n <= N; ++n) {
        if (n > 1) u_n = u_n + u1.value + convolve(u_n, u1.value, budget.support_cap);
        auto cpos = psi.coefficient(n);
        auto cneg = psi.coefficient(-n);
        out.value += cpos * u_n;
        out.value += cneg * involution(u_n);  // u(-nf) = u(nf)* for f = f*

        PsiTermDiag diag;
        diag.n = n;
        diag.u_norm = norm_pw(u_n, ctx);
        diag.coeff_abs = std::abs(cpos) + std::abs(cneg);
        out.terms.push_back(diag);

        double term = diag.u_norm * diag.coeff_abs;
        increasing_run = term > prev_term ? increasing_run + 1 : 0;
        prev_term = term;
        if (increasing_run >= 12 && term > budget.abs_tol)
            throw series_divergence_error(
                "psi_of_f: term norms increasing while above tolerance (n=" +
                std::to_string(n) + ")");
    }

    // measured-growth tail: fit ||u(nf)|| ~ A n^g on the trailing half, then
    // extrapolate against the stored coefficient tail
    double g_fit = 0.0, logA = 0.0;
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (const auto& d : out.terms) {
            if (d.n < N / 2 || d.u_norm <= 0) continue;
            double lx = std::log(static_cast<double>(d.n)), ly = std::log(d.u_norm);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++cnt;
        }
        if (cnt >= 2 && (cnt * sxx - sx * sx) > 0) {
            g_fit = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
            logA = (sy - g_fit * sx) / cnt;
        } else if (!out.terms.empty()) {
            logA = std::log(std::max(out.terms.back().u_norm, 1e-300));
        }
    }
    double tail = 0.0;
    for (int n = N + 1; n <= psi.stored_order(); ++n)
        tail += 2.0 * std::abs(psi.coefficient(n)) *
                std::exp(logA + g_fit * std::log(static_cast<double>(n)));
    tail += psi.coefficient_tail(psi.stored_order()) *
            std::exp(logA + g_fit * std::log(static_cast<double>(psi.stored_order())));
    out.tail_estimate = tail;
    return out;
}

SpectralMappingReport spectral_mapping_check(const GroupFunction& f, const PeriodicBump& psi,
                                             const NormContext& ctx,
                                             const SeriesBudget& budget) {
    if (f.model().kind() != GroupKind::CyclicGroup)
        throw std::invalid_argument("spectral_mapping_check: cyclic model expected");
    const int Ncyc = f.model().cyclic_order();
    PsiOfF pf = psi_of_f(f, psi, ctx, budget);
    const int N = std::min(budget.n_max, psi.stored_order());

    SpectralMappingReport rep;
    rep.characters = Ncyc;
    for (int j = 0; j < Ncyc; ++j) {
        std::complex<double> lam_c = 0.0, lhs = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            double x = static_cast<double>(f.support()[i][0]);
            lam_c += f.values()[i] * std::polar(1.0, 2.0 * M_PI * j * x / Ncyc);
        }
        for (std::size_t i = 0; i < pf.value.size(); ++i) {
            double x = static_cast<double>(pf.value.support()[i][0]);
            lhs += pf.value.values()[i] * std::polar(1.0, 2.0 * M_PI * j * x / Ncyc);
        }
        double lam = lam_c.real();  // real for f = f*
        // psi_N(lam) - psi_N(0): the exact character image of the truncated sum
        std::complex<double> ref =
            psi.eval_truncated(lam, N) - psi.eval_truncated(0.0, N);
        rep.max_error = std::max(rep.max_error, std::abs(lhs - ref));
        rep.exact_reference_gap =
            std::max(rep.exact_reference_gap, std::abs(lhs - psi.eval(lam)));
    }
    return rep;
}

}  // namespace lpalg
