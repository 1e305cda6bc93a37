#include "lpalg/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpalg {

namespace {

constexpr int kGL = 15;
constexpr double kNode[kGL] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272, -0.7244177313601700,
    -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
    0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kWeightGL[kGL] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
    0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <class F>
double gl_panel(const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGL; ++i) s += kWeightGL[i] * f(mid + half * kNode[i]);
    return half * s;
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, int depth, int& panels) {
    double whole = gl_panel(f, a, b);
    double mid = 0.5 * (a + b);
    double split = gl_panel(f, a, mid) + gl_panel(f, mid, b);
    if (std::abs(whole - split) <= tol || depth >= 28) {
        panels += 2;
        return split;
    }
    return adaptive(f, a, mid, 0.5 * tol, depth + 1, panels) +
           adaptive(f, mid, b, 0.5 * tol, depth + 1, panels);
}

}  // namespace

LaplaceProblem::LaplaceProblem(double Q_, double gamma_, double q_) : Q(Q_), gamma(gamma_), q(q_) {
    if (!(Q >= 0)) throw std::invalid_argument("LaplaceProblem: Q >= 0");
    if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("LaplaceProblem: gamma in (0,1)");
    if (!(q > 1)) throw std::invalid_argument("LaplaceProblem: q > 1");
    // h(0) = 0 and h decreasing on (0, 1/2]: grid check
    double prev = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        double t = 0.5 * i / 10000.0;
        double v = h(t);
        if (v >= prev + 1e-12)
            throw std::invalid_argument("LaplaceProblem: h is not decreasing on (0,1/2]");
        prev = v;
    }
}

double LaplaceProblem::h(double t) const {
    return 1.0 - std::pow(t, gamma) - std::pow(1.0 - t, gamma);
}

double LaplaceProblem::g(double t) const { return std::pow(t, Q); }

QuadResult numeric_F(const LaplaceProblem& prob, double x, double rel_tol) {
    if (!(x >= 0)) throw std::invalid_argument("numeric_F: x >= 0 required");
    auto f = [&](double t) {
        return (t <= 0.0 ? 0.0 : prob.g(t)) * std::exp(x * prob.h(t));
    };
    QuadResult res;
    // geometric panels toward the endpoint t = 0, where the Laplace scale
    // t ~ x^{-1/gamma} concentrates the mass
    std::vector<double> cuts;
    double t = 0.5;
    cuts.push_back(t);
    double t_min = std::min(1e-18, 0.01 * std::pow(1.0 / std::max(x, 1.0), 1.0 / prob.gamma));
    while (t > t_min) {
        t *= 0.25;
        cuts.push_back(t);
    }
    cuts.push_back(0.0);
    std::reverse(cuts.begin(), cuts.end());

    // first pass for the scale, then refine each panel to the shared budget
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) coarse += gl_panel(f, cuts[i], cuts[i + 1]);
    double tol = std::abs(coarse) * rel_tol;
    double total = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += adaptive(f, cuts[i], cuts[i + 1], tol / static_cast<double>(cuts.size()), 0,
                          panels);
    res.value = total;
    res.abs_error = std::abs(total - coarse);
    res.panels = panels;
    if (!(std::isfinite(res.value)))
        throw std::runtime_error("numeric_F: quadrature did not converge");
    return res;
}

double laplace_C2(const LaplaceProblem& prob) {
    return (1.0 / prob.gamma) * std::tgamma((prob.Q + 1.0) / prob.gamma);
}

double laplace_C3(const LaplaceProblem& prob) {
    return laplace_C2(prob) * std::pow(prob.q, -(prob.Q + 1.0) / prob.gamma);
}

double asymptotic_F(const LaplaceProblem& prob, double x) {
    if (!(x > 0)) throw std::invalid_argument("asymptotic_F: x > 0 required");
    return laplace_C2(prob) * std::pow(x, -(prob.Q + 1.0) / prob.gamma);
}

Case4Result case4_sum_check(double Q, double gamma, double q, int m_max) {
    if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("case4: gamma in (0,1]");
    Case4Result out;
    out.S.resize(static_cast<std::size_t>(m_max) + 1, 0.0);
    out.f_c.resize(static_cast<std::size_t>(m_max) + 1, 0.0);
    const bool degenerate = gamma >= 1.0;
    LaplaceProblem* prob = nullptr;
    LaplaceProblem storage = degenerate ? LaplaceProblem(Q, 0.5, q) : LaplaceProblem(Q, gamma, q);
    if (!degenerate) prob = &storage;

    for (int m = 0; m <= m_max; ++m) {
        // log-sum-exp over n = 0..floor(m/2), compensated accumulation
        double mg = std::pow(static_cast<double>(m), gamma);
        double peak = -INFINITY;
        std::vector<double> logs;
        logs.reserve(static_cast<std::size_t>(m / 2) + 1);
        for (int n = 0; n <= m / 2; ++n) {
            double lt = q * (mg - std::pow(static_cast<double>(n), gamma) -
                             std::pow(static_cast<double>(m - n), gamma));
            if (n == 0) {
                if (Q > 0) continue;  // n^Q = 0 for Q > 0
            } else {
                lt += Q * std::log(static_cast<double>(n));
            }
            logs.push_back(lt);
            peak = std::max(peak, lt);
        }
        double sum = 0.0, comp = 0.0;
        for (double lt : logs) {
            double y = std::exp(lt - peak) - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        out.S[static_cast<std::size_t>(m)] = logs.empty() ? 0.0 : std::exp(peak) * sum;
        if (!degenerate && m >= 1) {
            double X = q * std::pow(static_cast<double>(m), gamma);
            out.f_c[static_cast<std::size_t>(m)] =
                std::pow(static_cast<double>(m), Q + 1.0) * numeric_F(*prob, X, 1e-9).value;
        }
    }
    if (!degenerate) out.C3 = laplace_C3(*prob);

    auto mx = std::max_element(out.S.begin(), out.S.end());
    out.argmax = static_cast<int>(mx - out.S.begin());
    out.sup = *mx;
    int lo = m_max / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int m = lo; m <= m_max; ++m) {
        double xv = m, yv = out.S[static_cast<std::size_t>(m)];
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
        ++cnt;
    }
    out.trend_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double scale = std::max(1.0, out.sup);
    out.verdict = (out.trend_slope > 1e-3 * scale) ? BoundVerdict::UnboundedTrend
                                                   : BoundVerdict::Bounded;
    return out;
}

}  // namespace lpalg
