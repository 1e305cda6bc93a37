#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <random>

#include "lpalg/asymptotics.hpp"
#include "lpalg/conditions.hpp"
#include "lpalg/funcalc.hpp"
#include "lpalg/io.hpp"
#include "lpalg/operator_weight.hpp"
#include "lpalg/spectral.hpp"

namespace fs = std::filesystem;
using namespace lpalg;

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 ok, 2 config error, 3 computation error, 4 failing verdicts
enum ExitCode { kOk = 0, kConfigError = 2, kComputeError = 3, kVerdictFail = 4 };

struct CommonOpts {
    std::string group = "Z";
    std::string weight = "poly:K=1,D=2";
    double p = 2.0;
    double q = 2.0;
    std::string outdir = "out";
    std::uint64_t seed = 12345;
};

fs::path resolve_outdir(const CommonOpts& c) {
    const char* env = std::getenv("LPALG_OUTDIR");
    fs::path dir = env ? fs::path(env) : fs::path(c.outdir);
    fs::create_directories(dir);
    return dir;
}

// mesh models evaluate weights at the real position h*k
Weight weight_for(const GroupModel& model, const std::string& spec) {
    Weight w = parse_weight(spec);
    if (model.kind() == GroupKind::MeshLine) return w.with_length_mode(LengthMode::Absolute);
    return w;
}

void write_manifest(const fs::path& dir, const std::string& subcommand,
                    const CommonOpts& c, const nlohmann::json& inputs,
                    const std::vector<std::string>& outputs, bool checks_passed) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["version"] = kVersion;
    j["seed"] = c.seed;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["checks_passed"] = checks_passed;
    write_file((dir / "manifest.json").string(), j.dump(2) + "\n");
}

int run_check_weight(const CommonOpts& c, int m_max, int axiom_ball) {
    GroupModel model = parse_group(c.group);
    Weight w = weight_for(model, c.weight);
    fs::path dir = resolve_outdir(c);

    auto ax = check_weight_axioms(w, model, axiom_ball);
    auto ratio = algebra_condition_ratio(w, model, c.q, m_max);

    CsvWriter csv({"m", "ratio"});
    for (int m = 0; m <= m_max; ++m)
        csv.add_row({static_cast<double>(m), ratio.R[static_cast<std::size_t>(m)]});
    csv.write((dir / "ratio.csv").string());

    CsvWriter profile({"n", "s", "s_root"});
    for (int n = 1; n <= m_max; ++n) {
        double logs = w.log_sup_on_ball(model, n);
        profile.add_row({static_cast<double>(n), std::exp(logs), std::exp(logs / n)});
    }
    profile.write((dir / "profile.csv").string());

    nlohmann::json inputs = {{"group", c.group}, {"weight", c.weight}, {"q", c.q},
                             {"m_max", m_max}};
    nlohmann::json rj = {{"verdict", ratio.verdict == BoundVerdict::Bounded ? "bounded"
                                                                            : "unbounded-trend"},
                         {"sup", ratio.sup},
                         {"argmax", ratio.argmax},
                         {"trend_slope", ratio.trend_slope},
                         {"tail_rel_bound", ratio.tail_rel_bound},
                         {"truncation_radius", ratio.truncation_radius},
                         {"axioms", {{"symmetric", ax.symmetric},
                                     {"submultiplicative", ax.submultiplicative},
                                     {"worst_ratio", ax.worst_ratio}}}};
    write_file((dir / "check_weight.json").string(), rj.dump(2) + "\n");
    bool ok = ax.symmetric && ax.submultiplicative && ratio.verdict == BoundVerdict::Bounded;
    write_manifest(dir, "check-weight", c, inputs, {"ratio.csv", "check_weight.json"}, ok);
    std::cout << "check-weight: " << c.weight << " on " << c.group << " -> "
              << (ratio.verdict == BoundVerdict::Bounded ? "bounded" : "unbounded-trend")
              << " (sup " << ratio.sup << " at m=" << ratio.argmax << ")\n";
    return ok ? kOk : kVerdictFail;
}

int run_conditions(const CommonOpts& c, int n_max) {
    GroupModel model = parse_group(c.group);
    Weight w = weight_for(model, c.weight);
    fs::path dir = resolve_outdir(c);

    auto rows = condition_matrix({w}, model, n_max);
    const auto& r = rows.front();
    CsvWriter csv({"weight", "GRS", "S", "o_exp", "BDna", "envelope_consistent"});
    csv.add_row_mixed({r.weight, to_string(r.grs), to_string(r.s), to_string(r.o_exp_all),
                       to_string(r.bdna), r.envelope_consistent ? "1" : "0"});
    csv.write((dir / "conditions.csv").string());

    // per-condition diagnostics
    GroupElement gen = model.identity();
    gen[0] = 1;
    nlohmann::json diag;
    for (const auto& rep :
         {check_grs(w, model, gen, n_max), check_condition_s(w, model, n_max),
          check_o_exp(w, model, 0.1, n_max), check_bdna(w, model, n_max)}) {
        nlohmann::json d = {{"verdict", to_string(rep.verdict)},
                            {"note", rep.note},
                            {"tail_bound", rep.tail_bound}};
        nlohmann::json seq = nlohmann::json::array();
        for (auto& [n, s] : rep.diagnostics) seq.push_back({n, s});
        d["sequence"] = seq;
        diag[rep.condition] = d;
    }
    write_file((dir / "conditions_diagnostics.json").string(), diag.dump(2) + "\n");

    nlohmann::json inputs = {{"group", c.group}, {"weight", c.weight}, {"n_max", n_max}};
    bool all_hold = r.grs == Verdict::Holds && r.s == Verdict::Holds &&
                    r.bdna == Verdict::Holds && r.envelope_consistent;
    write_manifest(dir, "conditions", c, inputs,
                   {"conditions.csv", "conditions_diagnostics.json"}, all_hold);
    std::cout << "conditions: " << r.weight << ": GRS " << to_string(r.grs) << ", S "
              << to_string(r.s) << ", BDna " << to_string(r.bdna) << "\n";
    return all_hold ? kOk : kVerdictFail;
}

int run_spectral(const CommonOpts& c, int k_max) {
    GroupModel model = parse_group(c.group);
    Weight w = weight_for(model, c.weight);
    fs::path dir = resolve_outdir(c);
    NormContext ctx(c.p, w);

    GroupFunction f(model, {{GroupElement{1}, 1.0}, {GroupElement{-1}, 1.0}});
    auto est1 = spectral_radius_estimate(f, ctx, k_max, NormSelector::L1);
    auto estp = spectral_radius_estimate(f, ctx, k_max, NormSelector::LpWeighted);

    CsvWriter csv({"k", "N", "root_l1", "root_pw"});
    for (std::size_t i = 0; i < est1.points.size(); ++i)
        csv.add_row({static_cast<double>(est1.points[i].k),
                     static_cast<double>(est1.points[i].N), est1.points[i].root,
                     i < estp.points.size() ? estp.points[i].root : 0.0});
    csv.write((dir / "spectral_roots.csv").string());

    std::vector<double> grid;
    for (int i = -200; i <= 200; ++i) grid.push_back(i * 0.01);
    nlohmann::json dj;
    bool domain_ok = true;
    if (model.kind() == GroupKind::IntegerLattice) {
        auto dom = character_domain(w, model, c.q, grid);
        dj["admissible_count"] = dom.admissible.size();
        dj["rate"] = dom.rate;
        if (!dom.admissible.empty()) {
            dj["lo"] = dom.admissible.front();
            dj["hi"] = dom.admissible.back();
        }
    }
    nlohmann::json sj = {{"l1", {{"lower", est1.lower}, {"upper", est1.upper}}},
                         {"pw", {{"lower", estp.lower}, {"upper", estp.upper}}},
                         {"character_domain", dj}};
    write_file((dir / "spectral.json").string(), sj.dump(2) + "\n");

    nlohmann::json inputs = {{"group", c.group}, {"weight", c.weight}, {"p", c.p},
                             {"k_max", k_max}};
    write_manifest(dir, "spectral", c, inputs, {"spectral_roots.csv", "spectral.json"},
                   domain_ok);
    std::cout << "spectral: r_1 in [" << est1.lower << ", " << est1.upper << "], r_pw in ["
              << estp.lower << ", " << estp.upper << "]\n";
    return kOk;
}

int run_funcalc(const CommonOpts& c, int n_cyclic, int n_max_budget) {
    fs::path dir = resolve_outdir(c);
    Weight w = parse_weight(c.weight);
    GroupModel model = GroupModel::cyclic(n_cyclic);
    NormContext ctx(c.p, w);

    GroupFunction f(model, {{GroupElement{0}, 0.8},
                            {GroupElement{1}, 0.1},
                            {GroupElement{-1}, 0.1}});
    PeriodicBump psi(0.1, 2.0 * M_PI - 0.1, 0.4, n_max_budget);
    SeriesBudget budget;
    budget.n_max = n_max_budget;
    auto rep = spectral_mapping_check(f, psi, ctx, budget);
    auto pf = psi_of_f(f, psi, ctx, budget);

    CsvWriter csv({"n", "u_norm", "coeff_abs"});
    for (const auto& t : pf.terms)
        csv.add_row({static_cast<double>(t.n), t.u_norm, t.coeff_abs});
    csv.write((dir / "funcalc_terms.csv").string());

    auto cs = psi.decay_constants(6);
    nlohmann::json coeffs = nlohmann::json::array();
    for (int n = 0; n <= psi.n_max(); ++n)
        coeffs.push_back({psi.coefficient(n).real(), psi.coefficient(n).imag()});
    nlohmann::json fj = {{"spectral_mapping_error", rep.max_error},
                         {"bump_tail_gap", rep.exact_reference_gap},
                         {"psi_tail_estimate", pf.tail_estimate},
                         {"bump", {{"a", psi.a()}, {"b", psi.b()}, {"eps", psi.eps()},
                                   {"n_max", psi.n_max()}, {"coefficients", coeffs}}},
                         {"decay_constants", cs}};
    write_file((dir / "funcalc.json").string(), fj.dump(2) + "\n");

    nlohmann::json inputs = {{"weight", c.weight}, {"cyclic", n_cyclic},
                             {"n_max", n_max_budget}};
    bool ok = rep.max_error < 1e-6;
    write_manifest(dir, "funcalc", c, inputs, {"funcalc_terms.csv", "funcalc.json"}, ok);
    std::cout << "funcalc: spectral mapping error " << rep.max_error << " (bump tail gap "
              << rep.exact_reference_gap << ")\n";
    return ok ? kOk : kVerdictFail;
}

int run_laplace(const CommonOpts& c, double Q, double gamma, double x, int m_max) {
    fs::path dir = resolve_outdir(c);
    LaplaceProblem prob(Q, gamma, c.q);
    CsvWriter csv({"x", "numeric_F", "asymptotic_F", "ratio"});
    for (double xx : {x / 8, x / 4, x / 2, x, 2 * x}) {
        auto nf = numeric_F(prob, xx);
        double af = asymptotic_F(prob, xx);
        csv.add_row({xx, nf.value, af, nf.value / af});
    }
    csv.write((dir / "laplace_F.csv").string());

    auto c4 = case4_sum_check(Q, gamma, c.q, m_max);
    CsvWriter s_csv({"m", "S", "f_continuum"});
    for (int m = 0; m <= m_max; ++m)
        s_csv.add_row({static_cast<double>(m), c4.S[static_cast<std::size_t>(m)],
                       c4.f_c[static_cast<std::size_t>(m)]});
    s_csv.write((dir / "laplace_case4.csv").string());

    auto nf = numeric_F(prob, x);
    nlohmann::json lj = {{"C2", laplace_C2(prob)},
                         {"C3", laplace_C3(prob)},
                         {"ratio_at_x", nf.value / asymptotic_F(prob, x)},
                         {"case4_sup", c4.sup},
                         {"case4_verdict", c4.verdict == BoundVerdict::Bounded
                                               ? "bounded" : "unbounded-trend"}};
    write_file((dir / "laplace.json").string(), lj.dump(2) + "\n");

    nlohmann::json inputs = {{"Q", Q}, {"gamma", gamma}, {"q", c.q}, {"x", x},
                             {"m_max", m_max}};
    bool ok = std::abs(nf.value / asymptotic_F(prob, x) - 1.0) < 0.05 &&
              c4.verdict == BoundVerdict::Bounded;
    write_manifest(dir, "laplace", c, inputs,
                   {"laplace_F.csv", "laplace_case4.csv", "laplace.json"}, ok);
    std::cout << "laplace: F ratio at x=" << x << ": "
              << nf.value / asymptotic_F(prob, x) << ", case4 sup " << c4.sup << "\n";
    return ok ? kOk : kVerdictFail;
}

int run_operator(const CommonOpts& c, int size, double x_max) {
    fs::path dir = resolve_outdir(c);
    OperatorModel T = OperatorModel::jordan_nilpotent(size);

    CsvWriter csv({"x", "omega_T"});
    for (int i = 0; i <= 100; ++i) {
        double x = x_max * i / 100.0;
        csv.add_row({x, omega_T(T, x)});
    }
    csv.write((dir / "operator_omega.csv").string());

    nlohmann::json sweeps = nlohmann::json::array();
    bool ok = true;
    for (double eps : {0.5, 0.1, 0.01}) {
        double defect = commutator_defect(T, eps);
        bool pass = defect < eps * eps;
        ok = ok && pass;
        sweeps.push_back({{"eps", eps}, {"defect", defect}, {"bound", eps * eps},
                          {"pass", pass}});
    }
    nlohmann::json gj = nlohmann::json::array();
    for (double eps : {1.0, 0.1, 0.01}) {
        auto gc = epsilon_growth_check(T, eps, x_max);
        gj.push_back({{"eps", eps}, {"C_grid", gc.C_grid}, {"C_bound", gc.C_bound},
                      {"N_eps", gc.N_eps}, {"finite", gc.finite}});
        ok = ok && gc.finite;
    }
    auto fg = rep_homomorphism_defect(T, PiecewisePoly::indicator(0, 1),
                                      PiecewisePoly::indicator(0, 1));
    ok = ok && fg < 1e-8;

    // U(xi_0.1) as a row-major re/im table
    Eigen::MatrixXcd U = rep_U(T, PiecewisePoly::xi(0.1)).U;
    CsvWriter ucsv({"row", "col", "re", "im"});
    for (int i = 0; i < U.rows(); ++i)
        for (int j = 0; j < U.cols(); ++j)
            ucsv.add_row({static_cast<double>(i), static_cast<double>(j), U(i, j).real(),
                          U(i, j).imag()});
    ucsv.write((dir / "operator_U.csv").string());

    // the companion L^p weight omega_1 = omega_T (1+|x|)^2 on the mesh line:
    // measure the algebra-condition ratio it satisfies
    auto mesh = GroupModel::mesh_line(0.25, 4000);
    auto omega1 = Weight::product(Weight::operator_weight(T), Weight::polynomial(1.0, 2.0))
                      .with_length_mode(LengthMode::Absolute);
    auto ratio1 = algebra_condition_ratio(omega1, mesh, c.q, 40);
    nlohmann::json oj = {{"size", size}, {"commutator_sweep", sweeps},
                         {"growth", gj}, {"homomorphism_defect", fg},
                         {"omega1_ratio", {{"sup", ratio1.sup},
                                           {"argmax", ratio1.argmax},
                                           {"verdict", ratio1.verdict == BoundVerdict::Bounded
                                                           ? "bounded" : "unbounded-trend"}}}};
    write_file((dir / "operator.json").string(), oj.dump(2) + "\n");

    nlohmann::json inputs = {{"size", size}, {"x_max", x_max}};
    write_manifest(dir, "operator", c, inputs, {"operator_omega.csv", "operator.json"}, ok);
    std::cout << "operator: commutator defects within eps^2: " << (ok ? "yes" : "no")
              << ", U(f*g) defect " << fg << "\n";
    return ok ? kOk : kVerdictFail;
}

int run_growth(const CommonOpts& c, int n_max) {
    GroupModel model = parse_group(c.group);
    fs::path dir = resolve_outdir(c);
    auto fit = growth_fit(model, n_max);
    CsvWriter csv({"n", "ball_size"});
    for (std::size_t i = 0; i < fit.ball_sizes.size(); ++i)
        csv.add_row({static_cast<double>(i + 1), static_cast<double>(fit.ball_sizes[i])});
    csv.write((dir / "growth.csv").string());
    write_file((dir / "ball.csv").string(), ball_to_csv(model, std::min(n_max, 6)));
    nlohmann::json gj = {{"C", fit.C}, {"Q", fit.Q}};
    write_file((dir / "growth.json").string(), gj.dump(2) + "\n");
    nlohmann::json inputs = {{"group", c.group}, {"n_max", n_max}};
    write_manifest(dir, "growth", c, inputs, {"growth.csv", "ball.csv", "growth.json"}, true);
    std::cout << "growth: " << c.group << " fitted Q = " << fit.Q << ", C = " << fit.C << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for weighted Lp convolution algebras on groups of "
                 "polynomial growth"};
    app.set_config("--config");
    app.require_subcommand(1);

    CommonOpts c;
    const auto take_last = CLI::MultiOptionPolicy::TakeLast;
    app.add_option("--group", c.group, "group model: Z | Z2 | Z3 | heis | cyclic:N | mesh:h")
        ->multi_option_policy(take_last);
    app.add_option("--weight", c.weight,
                   "weight: poly:K=..,D=.. | subexp:C=..,gamma=.. | exp:C=.. | prod:a|b")
        ->multi_option_policy(take_last);
    app.add_option("--p", c.p, "Lp exponent")->multi_option_policy(take_last);
    app.add_option("--q", c.q, "conjugate exponent")->multi_option_policy(take_last);
    app.add_option("--outdir", c.outdir, "output directory (env LPALG_OUTDIR overrides)")
        ->multi_option_policy(take_last);
    app.add_option("--seed", c.seed, "seed recorded in the manifest")
        ->multi_option_policy(take_last);

    int m_max = 200, axiom_ball = 10, n_max_cond = 400, k_max = 10;
    int cyclic_n = 16, n_max_budget = 64, op_size = 3, growth_n = 16;
    double Q = 1.0, gamma = 0.5, x = 500.0;
    double x_max = 100.0;
    int case4_m = 400;

    auto* cw = app.add_subcommand("check-weight", "weight axioms + algebra-condition ratio");
    cw->add_option("--m-max", m_max, "ratio range");
    cw->add_option("--axiom-ball", axiom_ball, "ball radius for the axiom scan");
    auto* cond = app.add_subcommand("conditions", "GRS / S / o-exp / BDna matrix");
    cond->add_option("--n-max", n_max_cond, "diagnostic range");
    auto* spec = app.add_subcommand("spectral", "radius estimates, character domains");
    spec->add_option("--k-max", k_max, "powers up to 2^k");
    auto* fc = app.add_subcommand("funcalc", "bump build, psi{f}, spectral mapping");
    fc->add_option("--cyclic", cyclic_n, "cyclic group order");
    fc->add_option("--n-max", n_max_budget, "Fourier truncation");
    auto* lap = app.add_subcommand("laplace", "F tables and case-4 sums");
    lap->add_option("--Q", Q, "growth exponent");
    lap->add_option("--gamma", gamma, "weight exponent");
    lap->add_option("--x", x, "evaluation point");
    lap->add_option("--m-max", case4_m, "case-4 sum range");
    auto* op = app.add_subcommand("operator", "operator weight, representation, commutator");
    op->add_option("--size", op_size, "Jordan block size");
    op->add_option("--x-max", x_max, "growth check range");
    auto* gr = app.add_subcommand("growth", "ball counts and growth fit");
    gr->add_option("--n-max", growth_n, "ball radius range");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (cw->parsed()) return run_check_weight(c, m_max, axiom_ball);
        if (cond->parsed()) return run_conditions(c, n_max_cond);
        if (spec->parsed()) return run_spectral(c, k_max);
        if (fc->parsed()) return run_funcalc(c, cyclic_n, n_max_budget);
        if (lap->parsed()) return run_laplace(c, Q, gamma, x, case4_m);
        if (op->parsed()) return run_operator(c, op_size, x_max);
        if (gr->parsed()) return run_growth(c, growth_n);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return kComputeError;
    }
    return kOk;
}
