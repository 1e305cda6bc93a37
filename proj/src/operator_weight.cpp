#include "lpalg/operator_weight.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpalg {

namespace {

// Gauss-Legendre nodes/weights on [-1,1], 20 points.
constexpr int kGL = 20;
constexpr double kGLNode[kGL] = {
    -0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
    -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154196,
    -0.2277858511416451, -0.0765265211334973, 0.0765265211334973,  0.2277858511416451,
    0.3737060887154196,  0.5108670019508271,  0.6360536807265150,  0.7463319064601508,
    0.8391169718222188,  0.9122344282513259,  0.9639719272779138,  0.9931285991850949};
constexpr double kGLWeight[kGL] = {
    0.0176140071391521, 0.0406014298003869, 0.0626720483341091, 0.0832767415767048,
    0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183820,
    0.1491729864726037, 0.1527533871307258, 0.1527533871307258, 0.1491729864726037,
    0.1420961093183820, 0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869, 0.0176140071391521};

Eigen::MatrixXcd integrate_exp_f(const OperatorModel& model, const PiecewisePoly& f,
                                 int panels_per_piece) {
    const int n = model.size();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    const auto& bp = f.breakpoints();
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double a = bp[i], b = bp[i + 1];
        int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 0.5)) * panels_per_piece);
        double w = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            double lo = a + p * w, hi = lo + w;
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int g = 0; g < kGL; ++g) {
                double x = mid + half * kGLNode[g];
                std::complex<double> fx = f.eval(x);
                if (fx == std::complex<double>(0.0, 0.0)) continue;
                acc += (half * kGLWeight[g] * fx) * matrix_exp(model, x);
            }
        }
    }
    return acc;
}

}  // namespace

double operator_norm(const Eigen::MatrixXcd& A) {
    if (A.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

OperatorModel::OperatorModel(Eigen::MatrixXcd T, int nilpotent_order)
    : T_(std::move(T)), nilpotent_order_(nilpotent_order) {
    if (T_.rows() != T_.cols()) throw std::invalid_argument("OperatorModel: square matrix required");
    double nrm = operator_norm(T_);
    if (nrm > 1.0 + 1e-9)
        throw std::invalid_argument("OperatorModel: ||T|| = " + std::to_string(nrm) + " exceeds 1");
    if (nilpotent_order_ > 0) {
        Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(T_.rows(), T_.cols());
        for (int k = 0; k < nilpotent_order_; ++k) P = P * T_;
        if (operator_norm(P) > 1e-12)
            throw std::invalid_argument("OperatorModel: declared nilpotent order is wrong");
    }
}

OperatorModel OperatorModel::jordan_nilpotent(int n) {
    if (n < 1) throw std::invalid_argument("jordan_nilpotent: n >= 1");
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) T(i, i + 1) = 1.0;
    return OperatorModel(std::move(T), n);
}

std::vector<double> OperatorModel::power_norm_roots(int k_max) const {
    std::vector<double> out;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(T_.rows(), T_.cols());
    for (int k = 1; k <= k_max; ++k) {
        P = P * T_;
        double nrm = operator_norm(P);
        out.push_back(nrm > 0 ? std::pow(nrm, 1.0 / k) : 0.0);
    }
    return out;
}

Eigen::MatrixXcd matrix_exp(const OperatorModel& model, double x) {
    const auto& T = model.matrix();
    const int n = model.size();
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    if (model.nilpotent_order() > 0) {
        Eigen::MatrixXcd acc = I;
        Eigen::MatrixXcd term = I;
        for (int k = 1; k < model.nilpotent_order(); ++k) {
            term = term * T * (x / k);
            acc += term;
        }
        return acc;
    }
    // scaling and squaring; ||T|| <= 1 so theta = |x| / 2^s
    double ax = std::abs(x);
    int s = 0;
    while (ax > 0.5) {
        ax *= 0.5;
        ++s;
    }
    Eigen::MatrixXcd B = T * (x / std::ldexp(1.0, s));
    Eigen::MatrixXcd acc = I;
    Eigen::MatrixXcd term = I;
    // remainder <= theta^{K+1}/((K+1)! (1 - theta/(K+2))) < 1e-16 at theta = 0.5, K = 14
    for (int k = 1; k <= 14; ++k) {
        term = term * B / static_cast<double>(k);
        acc += term;
    }
    for (int i = 0; i < s; ++i) acc = acc * acc;
    return acc;
}

double matexp_norm(const OperatorModel& model, double x) {
    return operator_norm(matrix_exp(model, x));
}

double omega_T(const OperatorModel& model, double x) {
    return std::max(matexp_norm(model, x), matexp_norm(model, -x));
}

GrowthCheck epsilon_growth_check(const OperatorModel& model, double eps, double x_max,
                                 int grid_points) {
    if (!(eps > 0)) throw std::invalid_argument("epsilon_growth_check: eps > 0 required");
    GrowthCheck gc;
    for (int j = 0; j <= grid_points; ++j) {
        double x = x_max * j / grid_points;
        gc.C_grid = std::max(gc.C_grid, omega_T(model, x) * std::exp(-eps * x));
    }
    if (model.nilpotent_order() > 0) {
        gc.N_eps = model.nilpotent_order();
    } else {
        // first n with ||T^k|| < eps^k for all scanned k >= n
        const int k_scan = 64;
        auto roots = model.power_norm_roots(k_scan);
        int n_eps = 0;
        for (int k = k_scan; k >= 1; --k) {
            if (roots[static_cast<std::size_t>(k - 1)] >= eps) {
                n_eps = k + 1;
                break;
            }
        }
        gc.N_eps = n_eps == 0 ? 1 : n_eps;
    }
    gc.C_bound = 1.0 + std::pow(eps, -static_cast<double>(gc.N_eps));
    gc.finite = std::isfinite(gc.C_grid) && std::isfinite(gc.C_bound);
    return gc;
}

// ---------------------------------------------------------------- PiecewisePoly

PiecewisePoly PiecewisePoly::indicator(double a, double b, std::complex<double> value) {
    if (!(a < b)) throw std::invalid_argument("indicator: a < b required");
    PiecewisePoly f;
    f.breaks_ = {a, b};
    f.coeffs_ = {{value}};
    return f;
}

PiecewisePoly PiecewisePoly::xi(double eps) {
    if (!(eps > 0)) throw std::invalid_argument("xi: eps > 0 required");
    return indicator(0.0, eps, 1.0 / eps);
}

std::complex<double> PiecewisePoly::eval(double x) const {
    if (empty() || x < breaks_.front() || x >= breaks_.back()) return 0.0;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (i >= coeffs_.size()) return 0.0;
    double u = x - breaks_[i];
    std::complex<double> v = 0.0;
    for (std::size_t k = coeffs_[i].size(); k-- > 0;) v = v * u + coeffs_[i][k];
    return v;
}

double PiecewisePoly::support_left() const { return empty() ? 0.0 : breaks_.front(); }
double PiecewisePoly::support_right() const { return empty() ? 0.0 : breaks_.back(); }

int PiecewisePoly::max_degree() const {
    int d = 0;
    for (const auto& c : coeffs_) d = std::max(d, static_cast<int>(c.size()) - 1);
    return d;
}

double PiecewisePoly::l1_norm() const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double a = breaks_[i], b = breaks_[i + 1];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (int g = 0; g < kGL; ++g) s += kGLWeight[g] * std::abs(eval(mid + half * kGLNode[g]));
        total += half * s;
    }
    return total;
}

PiecewisePoly PiecewisePoly::scaled(std::complex<double> c) const {
    PiecewisePoly out = *this;
    for (auto& piece : out.coeffs_)
        for (auto& v : piece) v *= c;
    return out;
}

PiecewisePoly operator+(const PiecewisePoly& f, const PiecewisePoly& g) {
    if (f.empty()) return g;
    if (g.empty()) return f;
    std::vector<double> bp = f.breaks_;
    bp.insert(bp.end(), g.breaks_.begin(), g.breaks_.end());
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             bp.end());
    PiecewisePoly out;
    out.breaks_ = bp;
    out.coeffs_.resize(bp.size() - 1);
    auto add_into = [&](const PiecewisePoly& src) {
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            double lo = bp[i];
            // locate the src piece containing this interval
            if (lo < src.breaks_.front() - 1e-14 || lo >= src.breaks_.back() - 1e-14) continue;
            auto it = std::upper_bound(src.breaks_.begin(), src.breaks_.end(), lo + 1e-14);
            std::size_t j = static_cast<std::size_t>(it - src.breaks_.begin()) - 1;
            if (j >= src.coeffs_.size()) continue;
            // re-base local polynomial from (x - src.breaks_[j]) to (x - lo)
            const auto& c = src.coeffs_[j];
            double shift = lo - src.breaks_[j];
            std::vector<std::complex<double>> shifted(c.size(), 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) {
                // c_k (u + shift)^k, u = x - lo
                double binom = 1.0;
                double pw = 1.0;
                for (std::size_t m = 0; m <= k; ++m) {
                    shifted[k - m] += c[k] * binom * pw;
                    binom = binom * static_cast<double>(k - m) / static_cast<double>(m + 1);
                    pw *= shift;
                }
            }
            auto& dst = out.coeffs_[i];
            if (dst.size() < shifted.size()) dst.resize(shifted.size(), 0.0);
            for (std::size_t k = 0; k < shifted.size(); ++k) dst[k] += shifted[k];
        }
    };
    add_into(f);
    add_into(g);
    return out;
}

PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& g) {
    if (f.max_degree() != 0 || g.max_degree() != 0)
        throw std::invalid_argument("convolve: implemented for piecewise-constant operands");
    PiecewisePoly total;
    for (std::size_t i = 0; i + 1 < f.breaks_.size(); ++i) {
        std::complex<double> cf = f.coeffs_[i].empty() ? 0.0 : f.coeffs_[i][0];
        if (cf == std::complex<double>(0.0, 0.0)) continue;
        double a1 = f.breaks_[i], b1 = f.breaks_[i + 1];
        for (std::size_t j = 0; j + 1 < g.breaks_.size(); ++j) {
            std::complex<double> cg = g.coeffs_[j].empty() ? 0.0 : g.coeffs_[j][0];
            if (cg == std::complex<double>(0.0, 0.0)) continue;
            double a2 = g.breaks_[j], b2 = g.breaks_[j + 1];
            // trapezoid: rises on [a1+a2, lo2], flat to hi2, falls to b1+b2
            double s0 = a1 + a2, s3 = b1 + b2;
            double s1 = std::min(a1 + b2, b1 + a2), s2 = std::max(a1 + b2, b1 + a2);
            std::complex<double> c = cf * cg;
            double plateau = std::min(b1 - a1, b2 - a2);
            PiecewisePoly piece;
            piece.breaks_ = {s0, s1, s2, s3};
            piece.coeffs_.resize(3);
            piece.coeffs_[0] = {0.0, c};                      // c*(s - s0)
            piece.coeffs_[1] = {c * plateau};                 // constant
            piece.coeffs_[2] = {c * plateau, -c};             // c*plateau - c*(s - s2)
            if (s2 - s1 < 1e-14) {  // equal widths: plateau degenerates to a point
                piece.breaks_ = {s0, s1, s3};
                piece.coeffs_ = {{0.0, c}, {c * plateau, -c}};
            }
            total = total + piece;
        }
    }
    return total;
}

// ------------------------------------------------------------------- rep_U

RepResult rep_U(const OperatorModel& model, const PiecewisePoly& f, double tol) {
    RepResult r;
    if (f.empty()) {
        r.U = Eigen::MatrixXcd::Zero(model.size(), model.size());
        return r;
    }
    Eigen::MatrixXcd coarse = integrate_exp_f(model, f, 1);
    for (int refine = 2; refine <= 8; refine *= 2) {
        Eigen::MatrixXcd fine = integrate_exp_f(model, f, refine);
        r.quad_error = operator_norm(fine - coarse);
        r.U = fine;
        if (r.quad_error < tol) return r;
        coarse = fine;
    }
    return r;
}

double rep_homomorphism_defect(const OperatorModel& model, const PiecewisePoly& f,
                               const PiecewisePoly& g, double tol) {
    PiecewisePoly fg = convolve(f, g);
    // f*g is piecewise linear; integrate it directly
    Eigen::MatrixXcd Ufg = integrate_exp_f(model, fg, 2);
    Eigen::MatrixXcd Uf = rep_U(model, f, tol).U;
    Eigen::MatrixXcd Ug = rep_U(model, g, tol).U;
    return operator_norm(Ufg - Uf * Ug);
}

double commutator_defect(const OperatorModel& model, double eps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("commutator_defect: 0 < eps < 1");
    const int n = model.size();
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd U = rep_U(model, PiecewisePoly::xi(eps), 1e-14).U;
    return operator_norm(U - I - (eps / 2.0) * model.matrix());
}

}  // namespace lpalg
