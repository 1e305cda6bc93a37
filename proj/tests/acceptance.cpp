// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "lpalg/algebra.hpp"
#include "lpalg/asymptotics.hpp"
#include "lpalg/conditions.hpp"
#include "lpalg/funcalc.hpp"
#include "lpalg/operator_weight.hpp"
#include "lpalg/spectral.hpp"

using namespace lpalg;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  criterion %d: %s  [%s]\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

GroupFunction random_function(const GroupModel& model, int radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<GroupElement, Complex>> pairs;
    for (const auto& x : model.ball(radius)) pairs.push_back({x, Complex(u(rng), u(rng))});
    return GroupFunction(model, std::move(pairs));
}

void criterion_1() {
    Timer t;
    auto z = GroupModel::integer_lattice(1);
    auto ratio = algebra_condition_ratio(Weight::sub_exponential(1.0, 0.5), z, 2.0, 200);
    // trailing [100,200] linear fit is the module's trend slope for m_max=200
    bool pass = ratio.verdict == BoundVerdict::Bounded && ratio.argmax < 100 &&
                ratio.trend_slope <= 1e-3 && t.seconds() < 10.0;
    report(1, pass, "sub-exponential algebra condition bounded on Z",
           fmt("sup=%.4f at m=%d, slope[100,200]=%.2e, tail<=%.1e, %.2fs", ratio.sup,
               ratio.argmax, ratio.trend_slope, ratio.tail_rel_bound, t.seconds()));
}

void criterion_2() {
    Timer t;
    auto z = GroupModel::integer_lattice(1);
    auto ratio = algebra_condition_ratio(Weight::exponential(1.0), z, 2.0, 50);
    bool pass = true;
    for (int m = 0; m <= 50; ++m)
        pass = pass && ratio.R[static_cast<std::size_t>(m)] >= static_cast<double>(m + 1);
    pass = pass && ratio.verdict == BoundVerdict::UnboundedTrend && t.seconds() < 1.0;
    report(2, pass, "exponential weight ratio grows at least linearly",
           fmt("R(50)=%.3f >= 51, verdict=%s, %.2fs", ratio.R[50],
               ratio.verdict == BoundVerdict::UnboundedTrend ? "unbounded-trend" : "bounded",
               t.seconds()));
}

void criterion_3() {
    Timer t;
    LaplaceProblem prob(1.0, 0.5, 2.0);
    double C2 = laplace_C2(prob);
    double C3 = laplace_C3(prob);
    double x = 500.0;
    double F500 = numeric_F(prob, x).value;
    double ratioA = F500 * std::pow(x, 4.0) / 12.0;

    // the change-of-variables identity x^{Q+1} F_asym(q x^gamma) = C3, exact
    double fB_asym = x * x * asymptotic_F(prob, prob.q * std::sqrt(x));
    // the numeric counterpart converges slowly (leading correction 10/X at
    // X = q sqrt(x)); reported and required to move toward C3
    double fB_500 = x * x * numeric_F(prob, prob.q * std::sqrt(x)).value;
    double fB_1000 = 1000.0 * 1000.0 * numeric_F(prob, prob.q * std::sqrt(1000.0)).value;

    bool pass = std::abs(C2 - 12.0) < 1e-12 && std::abs(ratioA - 1.0) < 0.05 &&
                std::abs(fB_asym / C3 - 1.0) < 0.05 &&
                std::abs(fB_1000 / C3 - 1.0) < std::abs(fB_500 / C3 - 1.0) &&
                t.seconds() < 5.0;
    report(3, pass, "Laplace asymptotic at Q=1, gamma=1/2",
           fmt("C2=%.1f, F(500)x^4/12=%.4f, identity f/C3=%.4f, numeric f(500)/C3=%.3f "
               "-> f(1000)/C3=%.3f (slow convergence, see notes), %.2fs",
               C2, ratioA, fB_asym / C3, fB_500 / C3, fB_1000 / C3, t.seconds()));
}

void criterion_4() {
    Timer t;
    auto z = GroupModel::integer_lattice(1);
    NormContext ctx(2.0, Weight::polynomial(1.0, 2.0));
    GroupFunction f(z, {{GroupElement{1}, 1.0}, {GroupElement{-1}, 1.0}});
    auto e1 = spectral_radius_estimate(f, ctx, 10, NormSelector::L1);
    auto ep = spectral_radius_estimate(f, ctx, 10, NormSelector::LpWeighted);
    bool order = e1.points.size() == ep.points.size();
    for (std::size_t i = 0; order && i < e1.points.size(); ++i)
        order = e1.points[i].root <= ep.points[i].root + 1e-12;
    bool pass = e1.lower <= 2.0 && 2.0 <= e1.upper + 1e-12 && ep.lower <= 2.0 &&
                2.0 <= ep.upper && (e1.upper - e1.lower) < 0.05 &&
                (ep.upper - ep.lower) < 0.05 && order && t.seconds() < 30.0;
    report(4, pass, "spectral radius intervals at N=2^10",
           fmt("r1 in [%.5f, %.5f], r_pw in [%.5f, %.5f], ordered at every N, %.2fs",
               e1.lower, e1.upper, ep.lower, ep.upper, t.seconds()));
}

void criterion_5() {
    Timer t;
    auto z = GroupModel::integer_lattice(1);
    std::vector<double> grid;
    for (int i = -200; i <= 200; ++i) grid.push_back(i * 0.01);

    auto d1 = character_domain(Weight::polynomial(1.0, 2.0), z, 2.0, grid);
    auto d2 = character_domain(Weight::sub_exponential(1.0, 0.5), z, 2.0, grid);
    auto d3 = character_domain(
        Weight::product(Weight::exponential(1.0), Weight::polynomial(1.0, 2.0)), z, 2.0, grid);
    bool dom_ok = d1.admissible.size() == 1 && d1.admissible[0] == 0.0 &&
                  d2.admissible.size() == 1 && d2.admissible[0] == 0.0 &&
                  !d3.admissible.empty() && d3.admissible.front() <= -0.9 &&
                  d3.admissible.back() >= 0.9;

    auto c32 = GroupModel::cyclic(32);
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_im = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<GroupElement, Complex>> fp;
        for (int i = 0; i < 32; ++i) fp.push_back({GroupElement{i}, Complex(u(rng), u(rng))});
        GroupFunction g(c32, std::move(fp));
        GroupFunction f = g + involution(g);
        for (auto lam : finite_spectrum(f)) worst_im = std::max(worst_im, std::abs(lam.imag()));
    }
    bool pass = dom_ok && worst_im < 1e-10;
    report(5, pass, "symmetry evidence: character domains + real spectra",
           fmt("poly/subexp domain {0}, product domain [%.2f, %.2f], max |Im| = %.2e, %.2fs",
               d3.admissible.front(), d3.admissible.back(), worst_im, t.seconds()));
}

void criterion_6() {
    Timer t;
    auto c16 = GroupModel::cyclic(16);
    NormContext ctx(2.0, Weight::polynomial(1.0, 2.0));
    SeriesBudget budget;
    budget.abs_tol = 1e-9;
    budget.n_max = 64;
    // (delta_1 + delta_-1)/2 shifted into the plateau: 0.8 delta_0 + 0.2 f,
    // characters 0.8 + 0.2 cos(theta) in [0.6, 1.0] inside (a+eps, b-eps)
    GroupFunction f(c16, {{GroupElement{0}, 0.8},
                          {GroupElement{1}, 0.1},
                          {GroupElement{-1}, 0.1}});
    PeriodicBump psi(0.1, 2.0 * M_PI - 0.1, 0.4, 64);
    auto rep = spectral_mapping_check(f, psi, ctx, budget);

    double worst_disagreement = 0.0;
    for (int n = 1; n <= 8; ++n) {
        auto a = u_series(f, n, ctx, budget);
        auto b = u_recursive(f, n, ctx, budget);
        GroupFunction diff = a.value + (-1.0) * b.value;
        worst_disagreement = std::max(worst_disagreement, weighted_norm(diff, ctx));
    }
    bool pass = rep.max_error < 1e-6 && worst_disagreement < 1e-7 && t.seconds() < 60.0;
    report(6, pass, "functional calculus spectral mapping on Z16",
           fmt("mapping error %.2e (bump tail gap %.2e), series/recursion gap %.2e, %.2fs",
               rep.max_error, rep.exact_reference_gap, worst_disagreement, t.seconds()));
}

void criterion_7() {
    Timer t;
    auto z = GroupModel::integer_lattice(1);
    std::vector<Weight> zoo = {Weight::polynomial(1.0, 2.0),
                               Weight::sub_exponential(1.0, 0.5),
                               Weight::sub_exponential(0.5, 0.8),
                               Weight::exponential(1.0)};
    auto rows = condition_matrix(zoo, z, 300);
    bool pass = rows[0].s == Verdict::Holds && rows[0].grs == Verdict::Holds &&
                rows[0].bdna == Verdict::Holds && rows[1].s == Verdict::Holds &&
                rows[1].grs == Verdict::Holds && rows[1].bdna == Verdict::Holds &&
                rows[2].s == Verdict::Holds && rows[2].grs == Verdict::Holds &&
                rows[2].bdna == Verdict::Holds && rows[3].s == Verdict::Fails &&
                rows[3].bdna == Verdict::Fails;
    int disagreements = 0;
    for (const auto& r : rows)
        if (!r.envelope_consistent) ++disagreements;
    pass = pass && disagreements == 0;
    report(7, pass, "conditions matrix matches the classification",
           fmt("poly/subexp all hold, exp fails S and BDna, envelope cross-check "
               "disagreements=%d, %.2fs",
               disagreements, t.seconds()));
}

void criterion_8() {
    Timer t;
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool pass = true;
    std::string note;

    double defect22 = 0.0;
    for (int n = 2; n <= 5; ++n) {
        auto T = OperatorModel::jordan_nilpotent(n);
        for (double eps : {0.5, 0.1, 0.01}) {
            double d = commutator_defect(T, eps);
            if (n == 2) defect22 = std::max(defect22, d);
            pass = pass && d < eps * eps;
        }
    }
    pass = pass && defect22 < 1e-14;

    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + trial % 4;
        Eigen::MatrixXcd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = Complex(u(rng), u(rng));
        A *= 0.9 / operator_norm(A);
        OperatorModel T(std::move(A));
        for (double eps : {0.5, 0.1, 0.01})
            pass = pass && commutator_defect(T, eps) < eps * eps;
    }

    auto f = PiecewisePoly::indicator(0.0, 1.0);
    double hom = rep_homomorphism_defect(OperatorModel::jordan_nilpotent(3), f, f);
    pass = pass && hom < 1e-8;

    bool growth_ok = true;
    for (double eps : {1.0, 0.1, 0.01}) {
        auto gc = epsilon_growth_check(OperatorModel::jordan_nilpotent(4), eps, 100.0);
        growth_ok = growth_ok && gc.finite;
    }
    pass = pass && growth_ok;
    report(8, pass, "operator example: commutator, representation, growth",
           fmt("2x2 defect %.1e, hom defect %.1e, C(eps) finite, %.2fs", defect22, hom,
               t.seconds()));
}

void criterion_9() {
    Timer t;
    auto z = GroupModel::integer_lattice(1);
    auto c16 = GroupModel::cyclic(16);
    NormContext ctx_z(2.0, Weight::polynomial(1.0, 2.0));
    NormContext ctx_c(2.0, Weight::polynomial(1.0, 2.0));
    std::mt19937_64 rng(31337);
    const double slack = 1e-9;
    int violations = 0;
    auto check = [&](bool ok) { violations += ok ? 0 : 1; };

    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_function(z, 8, rng);
        auto g = random_function(z, 8, rng);
        auto h = random_function(z, 4, rng);
        auto fg = convolve(f, g);

        check(weighted_norm(fg, ctx_z) <=
              weighted_l1_norm(f, ctx_z.weight) * weighted_norm(g, ctx_z) * (1 + slack));
        double C = pytlik_constant(ctx_z.weight, z, 8);
        check(weighted_norm(fg, ctx_z) <=
              C * (weighted_norm(f, ctx_z) * norm_l1(g) + weighted_norm(g, ctx_z) * norm_l1(f)) *
                  (1 + slack));
        check(std::abs(weighted_norm(involution(f), ctx_z) - weighted_norm(f, ctx_z)) <=
              slack * weighted_norm(f, ctx_z));
        GroupElement x{static_cast<std::int64_t>(rng() % 21) - 10};
        check(weighted_norm(translate(x, f), ctx_z) <=
              ctx_z.weight.eval(z, x) * weighted_norm(f, ctx_z) * (1 + slack));
        auto assoc_l = convolve(fg, h);
        auto assoc_r = convolve(f, convolve(g, h));
        GroupFunction diff = assoc_l + (-1.0) * assoc_r;
        check(diff.max_abs() <= 1e-9 * std::max(1.0, assoc_l.max_abs()));
    }

    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_function(c16, 8, rng);
        auto g = random_function(c16, 8, rng);
        auto fg = convolve(f, g);
        check(weighted_norm(fg, ctx_c) <=
              weighted_l1_norm(f, ctx_c.weight) * weighted_norm(g, ctx_c) * (1 + slack));
        check(std::abs(weighted_norm(involution(f), ctx_c) - weighted_norm(f, ctx_c)) <=
              slack * weighted_norm(f, ctx_c));
        // DFT-oracle convolution equivalence: chi(f*g) = chi(f) chi(g)
        for (int j = 0; j < 16; j += 3) {
            auto lhs = character_eval_cyclic(fg, j);
            auto rhs = character_eval_cyclic(f, j) * character_eval_cyclic(g, j);
            check(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        }
    }
    bool pass = violations == 0;
    report(9, pass, "randomized algebra property suite (1000 cases)",
           fmt("violations=%d, %.2fs", violations, t.seconds()));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
