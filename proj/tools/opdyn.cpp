// Command-line front end: level-curve traces, qualifying-arc checks with
// inflation, witness-convergence runs and zero-parity tables, all bound to
// CSV/SVG/JSON files.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opdyn/catalog.hpp"
#include "opdyn/criterion.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/io.hpp"
#include "opdyn/obstruction.hpp"
#include "opdyn/svg.hpp"
#include "opdyn/witness.hpp"

namespace {

using namespace opdyn;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitStrict = 4;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    os << content;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) out.push_back(parse_complex(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct TraceArgs {
    std::string symbol;
    double level = 1.0;
    double seed_ray = std::numbers::pi / 4;
    int rays = 0;  // when > 0, seed several rays instead of one
    double t_min = 1e-3, t_max = 8.0;
    double step = 4e-3;
    int max_points = 20000;
    double arc_len = 0.0;  // 0 = until closure / max_points
    std::string out = "trace.csv";
    std::string svg;
};

int run_trace(const TraceArgs& args) {
    const Symbol phi = parse_symbol(args.symbol);
    std::cerr << "config: trace symbol=" << phi.describe() << " level=" << args.level
              << " step=" << args.step << " t-range=[" << args.t_min << "," << args.t_max
              << "] max-points=" << args.max_points << " arc-len=" << args.arc_len
              << (args.rays > 0 ? " rays=" + std::to_string(args.rays)
                                : " seed-ray=" + std::to_string(args.seed_ray))
              << "\n";

    std::vector<double> thetas;
    if (args.rays > 0) {
        for (int i = 0; i < args.rays; ++i)
            thetas.push_back(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / args.rays);
    } else {
        thetas.push_back(args.seed_ray);
    }

    std::vector<LevelArc> arcs;
    for (double theta : thetas) {
        Complex seed;
        try {
            seed = find_seed(phi, args.level, theta, {args.t_min, args.t_max});
        } catch (const Error& e) {
            if (args.rays == 0) throw;
            std::cerr << "ray " << theta << ": " << e.what() << "\n";
            continue;
        }
        bool covered = false;
        for (const LevelArc& arc : arcs)
            for (const Complex& p : arc.points)
                if (std::abs(p - seed) < 3.0 * args.step) {
                    covered = true;
                    break;
                }
        if (covered) continue;
        TraceOptions opt;
        opt.step = args.step;
        opt.max_points = args.max_points;
        if (args.arc_len > 0.0) {
            const double radius = 0.5 * args.arc_len;
            opt.stop = [seed, radius](Complex z) { return std::abs(z - seed) > radius; };
        }
        arcs.push_back(trace_bidirectional(phi, seed, args.level, opt));
    }
    if (arcs.empty()) throw NoRootOnRay("no branch of the level set was found");

    std::ofstream os(args.out);
    if (!os) throw ConfigError("cannot open output file '" + args.out + "'");
    if (arcs.size() == 1) {
        write_arc_csv(os, arcs.front(), &phi);
    } else {
        os << "branch,x,y,abs_phi,curvature\n";
        os.precision(17);
        for (std::size_t b = 0; b < arcs.size(); ++b)
            for (std::size_t i = 0; i < arcs[b].points.size(); ++i) {
                const Complex z = arcs[b].points[i];
                os << b << "," << z.real() << "," << z.imag() << ","
                   << std::abs(phi.eval(z)) << "," << arcs[b].curvatures[i] << "\n";
            }
    }
    if (!args.svg.empty()) write_file(args.svg, render_arcs_svg(arcs, true));
    std::cout << "traced " << arcs.size() << " branch(es), "
              << [&] {
                     std::size_t n = 0;
                     for (const auto& a : arcs) n += a.points.size();
                     return n;
                 }()
              << " samples -> " << args.out << "\n";
    return kExitOk;
}

struct CheckArgs {
    std::string symbol;
    double level = 1.0;
    int rays = 24;
    double ray_lo = 0.05, ray_hi = std::numbers::pi - 0.05;
    double arc_len = 2.0;
    int grid_theta = 200, grid_t = 200;
    double margin_floor = kDefaultMarginFloor;
    int m = 2;
    bool inflate = true;
    bool strict = false;
    std::string out = "check_report.json";
    std::string svg;
    std::string emit_problem;  // write a ready witness problem on success
};

int run_check(const CheckArgs& args) {
    const Symbol phi = parse_symbol(args.symbol);
    std::cerr << "config: check symbol=" << phi.describe() << " level=" << args.level
              << " rays=" << args.rays << " arc-len=" << args.arc_len << " grid="
              << args.grid_theta << "x" << args.grid_t << " margin-floor=" << args.margin_floor
              << " m=" << args.m << " inflate=" << (args.inflate ? "yes" : "no") << "\n";

    ScanOptions sopt;
    for (int i = 0; i < args.rays; ++i)
        sopt.rays.push_back(args.ray_lo + (args.ray_hi - args.ray_lo) *
                                              (static_cast<double>(i) + 0.5) / args.rays);
    sopt.arc_len = args.arc_len;
    sopt.grid = {args.grid_theta, args.grid_t};
    sopt.margin_floor = args.margin_floor;
    auto candidates = scan_for_arcs(phi, args.level, sopt);

    const std::pair<LevelArc, CriterionReport>* best = nullptr;
    for (const auto& cand : candidates) {
        if (!best) {
            best = &cand;
            continue;
        }
        const bool cand_pass = cand.second.verdict == Verdict::pass;
        const bool best_pass = best->second.verdict == Verdict::pass;
        if (cand_pass != best_pass) {
            if (cand_pass) best = &cand;
        } else if (cand.second.min_margin > best->second.min_margin) {
            best = &cand;
        }
    }

    CriterionReport report;
    report.level = args.level;
    if (best == nullptr) {
        report.verdict = Verdict::inconclusive;
        report.note = "no candidate arcs found on the seeded rays";
    } else {
        report = best->second;
    }

    if (best != nullptr && report.verdict == Verdict::pass && args.inflate && args.m >= 1) {
        SectorRegion region = validate_arc(best->first);
        InflateOptions iopt;
        iopt.margin_floor = std::min(args.margin_floor, 1e-6);
        auto search = inflate_arc(phi, region, args.m, iopt);
        if (search.found) {
            report.chosen_r = search.found->r;
            report.chosen_eps = search.found->eps;
            report.minkowski_ok.assign(static_cast<std::size_t>(std::max(0, args.m - 1)), true);
            if (!args.emit_problem.empty()) {
                // Frequencies straight off the search result: gamma from the
                // level-r arc, lambda from the accepted subsector.
                WitnessProblem problem;
                problem.phi = phi;
                problem.m = args.m;
                problem.r = search.found->r;
                const auto& pts = search.found->arc.points;
                problem.gamma = {pts[pts.size() / 2]};
                const double theta = 0.5 * (search.found->region_r.arg_min +
                                            search.found->region_r.arg_max);
                problem.lambda = {std::polar(0.8 * search.found->eps, theta)};
                problem.a = {{1, 0}};
                problem.b = {{1, 0}};
                write_file(args.emit_problem, problem_to_json(problem));
            }
        } else {
            report.note = "inflation exhausted its grid; " +
                          (search.log.empty() ? std::string("no attempts logged")
                                              : search.log.back());
        }
        if (!args.svg.empty()) {
            std::vector<Complex> sum_samples;
            if (search.found)
                for (int j = 1; j < args.m; ++j) {
                    const double s = static_cast<double>(j) / args.m;
                    for (std::size_t i = 0; i < search.found->arc.points.size(); i += 4)
                        sum_samples.push_back(s * search.found->arc.points[i]);
                }
            write_file(args.svg, render_region_svg(region, sum_samples,
                                                   search.found ? search.found->eps : 0.0));
        }
    } else if (best != nullptr && !args.svg.empty()) {
        try {
            SectorRegion region = validate_arc(best->first);
            write_file(args.svg, render_region_svg(region, {}, 0.0));
        } catch (const Error&) {
            write_file(args.svg, render_arcs_svg({best->first}, true));
        }
    }

    write_file(args.out, report_to_json(report, phi.describe()));
    std::cout << "verdict: " << to_string(report.verdict) << "  min_margin: " << report.min_margin;
    if (report.chosen_r) std::cout << "  r: " << *report.chosen_r << "  eps: " << *report.chosen_eps;
    std::cout << "  candidates: " << candidates.size() << "\n";
    if (args.strict && report.verdict != Verdict::pass) return kExitStrict;
    return kExitOk;
}

struct WitnessArgs {
    std::string problem_file;
    std::string symbol;
    int m = 2;
    double r = 0.0;
    std::string lambda, gamma, a, b;
    double eps = 1e-6;
    double rho = 1.0;
    int q_max = 200;
    int branch = 0;
    std::string out = "witness_trace.csv";
    std::string residual;  // final-step residual as exponential-sum records
};

int run_witness(const WitnessArgs& args) {
    WitnessProblem problem;
    if (!args.problem_file.empty()) {
        std::ifstream is(args.problem_file);
        if (!is) throw ConfigError("cannot read problem file '" + args.problem_file + "'");
        std::stringstream buf;
        buf << is.rdbuf();
        problem = problem_from_json(buf.str());
    } else {
        if (args.symbol.empty()) throw ConfigError("need --problem or --symbol plus frequencies");
        problem.phi = parse_symbol(args.symbol);
        problem.m = args.m;
        problem.r = args.r;
        problem.lambda = parse_complex_list(args.lambda);
        problem.gamma = parse_complex_list(args.gamma);
        problem.a = parse_complex_list(args.a);
        problem.b = parse_complex_list(args.b);
    }
    problem.rho = args.rho;
    std::cerr << "config: witness symbol=" << problem.phi.describe() << " m=" << problem.m
              << " r=" << problem.r << " p=" << problem.p() << " eps=" << args.eps
              << " rho=" << args.rho << " q-max=" << args.q_max << " branch=" << args.branch
              << "\n";

    const auto outcome = find_q(problem, args.eps, args.rho, args.q_max, args.branch);
    std::ofstream os(args.out);
    if (!os) throw ConfigError("cannot open output file '" + args.out + "'");
    write_witness_csv(os, outcome.trace);
    if (!args.residual.empty() && !outcome.trace.empty())
        write_file(args.residual, exppoly_to_json(outcome.trace.back().residual));

    if (outcome.q) {
        std::cout << "certified q = " << *outcome.q << " (crude bounds <= " << args.eps
                  << " on D(0," << args.rho << ")) -> " << args.out << "\n";
    } else {
        std::cout << "not reached within q_max = " << args.q_max;
        if (outcome.slowest)
            std::cout << "; slowest factor " << outcome.slowest->factor << " at order "
                      << outcome.slowest->j;
        std::cout << " -> " << args.out << "\n";
    }
    return kExitOk;
}

struct ZerosArgs {
    std::string f = "-1,1";       // z - 1
    std::string weight;           // Q coefficients; empty = weight 1
    std::string phi_scale = "1";
    std::string phi_shift = "1";
    int power = 2;
    int n = 3;
    std::string disks = "-2,0,0.5";
    int n_quad = 1024;
    std::string out = "zeros_table.csv";
};

int run_zeros(const ZerosArgs& args) {
    const auto f_coeffs = parse_complex_list(args.f);
    ZeroFreeWeight weight;
    if (!args.weight.empty()) weight.q_coeffs = parse_complex_list(args.weight);
    AffineMap phi{parse_complex(args.phi_scale), parse_complex(args.phi_shift)};
    std::vector<DiskSpec> disks;
    std::size_t pos = 0;
    while (pos < args.disks.size()) {
        const std::size_t semi = args.disks.find(';', pos);
        const std::string item =
            args.disks.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        const auto parts = parse_complex_list(item);
        if (parts.size() != 3) throw ConfigError("disk spec needs cx,cy,r");
        disks.push_back({{parts[0].real(), parts[1].real()}, parts[2].real()});
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    std::cerr << "config: zeros f=[" << args.f << "] weight=[" << args.weight << "] phi=z*"
              << args.phi_scale << "+" << args.phi_shift << " power=" << args.power
              << " n=" << args.n << " disks=" << disks.size() << " n-quad=" << args.n_quad
              << "\n";

    const auto counts =
        orbit_power_zero_parity(f_coeffs, weight, phi, args.power, args.n, disks, args.n_quad);
    std::ofstream os(args.out);
    if (!os) throw ConfigError("cannot open output file '" + args.out + "'");
    os << "center_x,center_y,radius,count,multiple_of_power\n";
    os.precision(17);
    for (std::size_t i = 0; i < disks.size(); ++i) {
        os << disks[i].center.real() << "," << disks[i].center.imag() << "," << disks[i].radius
           << "," << counts[i] << "," << (counts[i] % args.power == 0 ? 1 : 0) << "\n";
        std::cout << "disk(" << format_complex(disks[i].center) << ", " << disks[i].radius
                  << "): " << counts[i] << " zero(s), multiple of " << args.power << ": "
                  << (counts[i] % args.power == 0 ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

// --- the examples catalog -------------------------------------------------

struct SummaryRow {
    std::string name;
    std::string verdict;
    double min_margin = 0.0;
    std::optional<double> r, eps;
    std::string note;
};

SummaryRow run_closed_form_example(const std::string& name, const Symbol& phi,
                                   const LevelArc& arc, double floor, int m,
                                   const std::filesystem::path& dir) {
    SummaryRow row;
    row.name = name;
    SectorRegion region = validate_arc(arc);
    CriterionReport rep = check_hypothesis(phi, region, arc.level, {200, 200}, floor);
    row.verdict = to_string(rep.verdict);
    row.min_margin = rep.min_margin;
    {
        std::ofstream os(dir / (name + "_arc.csv"));
        write_arc_csv(os, arc, &phi);
    }
    if (rep.verdict == Verdict::pass && m >= 2) {
        InflateOptions iopt;
        auto search = inflate_arc(phi, region, m, iopt);
        if (search.found) {
            row.r = search.found->r;
            row.eps = search.found->eps;
            rep.chosen_r = search.found->r;
            rep.chosen_eps = search.found->eps;
            std::vector<Complex> sums;
            for (int j = 1; j < m; ++j)
                for (std::size_t i = 0; i < search.found->arc.points.size(); i += 4)
                    sums.push_back(static_cast<double>(j) / m * search.found->arc.points[i]);
            write_file((dir / (name + "_region.svg")).string(),
                       render_region_svg(region, sums, search.found->eps));
        } else {
            row.note = "inflation exhausted its grid";
        }
    }
    write_file((dir / (name + "_report.json")).string(), report_to_json(rep, phi.describe()));
    return row;
}

int run_examples(const std::string& outdir) {
    namespace fs = std::filesystem;
    const fs::path dir(outdir);
    fs::create_directories(dir);
    std::vector<SummaryRow> rows;

    rows.push_back(run_closed_form_example("cos", Symbol::cosine(),
                                           cos_level_one_arc(1.45, 2.6, 400), 1e-6, 3, dir));
    rows.push_back(run_closed_form_example("sin", Symbol::sine(),
                                           sin_level_one_arc(-1.2, 1.2, 400), 1e-4, 2, dir));
    {
        const Symbol phi = Symbol::z_exp();
        const Complex x_star = find_seed(phi, 1.0, 0.0, {0.01, 1.0});
        rows.push_back(run_closed_form_example(
            "zexp", phi, zexp_level_one_arc(0.0, x_star.real() - 1e-3, 400), 1e-4, 2, dir));
    }
    for (double a : {0.25, 0.5, 1.0}) {
        std::ostringstream name;
        name << "exp-a" << a;
        rows.push_back(run_closed_form_example(
            name.str(), Symbol::exp_minus({a, 0.0}),
            exp_minus_level_one_arc(a, 0.01, std::numbers::pi / 4, 400), 1e-4, 2, dir));
    }

    // Power stability family (a0 + z^2)^n: the n = 1 region decides n = 2.
    for (double a0 : {0.0, 0.5, 1.0}) {
        const Symbol base = Symbol::polynomial({{a0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
        ScanOptions sopt;
        for (int i = 0; i < 16; ++i)
            sopt.rays.push_back(0.9 + (2.2 - 0.9) * (static_cast<double>(i) + 0.5) / 16.0);
        sopt.margin_floor = 1e-7;
        auto candidates = scan_for_arcs(base, 1.0, sopt);
        SummaryRow row;
        std::ostringstream name;
        name << "power-family-a0=" << a0;
        row.name = name.str();
        const std::pair<LevelArc, CriterionReport>* best = nullptr;
        for (const auto& cand : candidates)
            if (cand.second.verdict == Verdict::pass &&
                (!best || cand.second.min_margin > best->second.min_margin))
                best = &cand;
        if (best == nullptr) {
            row.verdict = "inconclusive";
            row.note = "no passing base arc found";
        } else {
            SectorRegion region = validate_arc(best->first);
            const auto squared = polynomial_power(std::vector<Complex>{{a0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, 2);
            CriterionReport rep1 = check_hypothesis(base, region, 1.0, {200, 200}, 1e-7);
            CriterionReport rep2 = check_hypothesis(Symbol::polynomial(squared), region, 1.0,
                                                    {200, 200}, 1e-7);
            row.verdict = to_string(rep1.verdict);
            row.min_margin = rep1.min_margin;
            row.note = rep1.verdict == rep2.verdict ? "n=1 and n=2 verdicts coincide"
                                                    : "POWER STABILITY VIOLATED";
        }
        rows.push_back(row);
    }

    // Rose polynomial: zero passing candidates is the expected (evidence,
    // not proof) outcome.
    {
        ScanOptions sopt;
        for (int k = 1; k < 128; ++k)
            sopt.rays.push_back(std::numbers::pi * static_cast<double>(k) / 64.0);
        sopt.grid = {400, 400};
        sopt.margin_floor = 1e-7;
        auto candidates = scan_for_arcs(Symbol::rose(), 1.0, sopt);
        std::size_t passes = 0;
        for (const auto& cand : candidates)
            if (cand.second.verdict == Verdict::pass) ++passes;
        SummaryRow row;
        row.name = "rose";
        row.verdict = passes == 0 ? "no qualifying arc found" : "pass";
        std::ostringstream note;
        note << candidates.size() << " candidate arcs, " << passes
             << " passed; numerical evidence only";
        row.note = note.str();
        rows.push_back(row);
        std::vector<LevelArc> arcs;
        for (const auto& cand : candidates) arcs.push_back(cand.first);
        write_file((dir / "rose_levelset.svg").string(), render_arcs_svg(arcs, true));
    }

    std::ofstream os(dir / "summary.csv");
    os << "name,verdict,min_margin,r,eps,note\n";
    os.precision(17);
    for (const SummaryRow& row : rows) {
        os << row.name << "," << row.verdict << "," << row.min_margin << ",";
        if (row.r) os << *row.r;
        os << ",";
        if (row.eps) os << *row.eps;
        os << ",\"" << row.note << "\"\n";
        std::cout << row.name << ": " << row.verdict;
        if (row.r) std::cout << " (r=" << *row.r << ", eps=" << *row.eps << ")";
        if (!row.note.empty()) std::cout << " -- " << row.note;
        std::cout << "\n";
    }
    std::cout << "summary -> " << (dir / "summary.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "opdyn: level-set geometry, qualifying-arc criterion checks, witness\n"
        "convergence runs and zero-parity tables for convolution-operator symbols"};
    app.require_subcommand(1);

    TraceArgs trace_args;
    auto* trace_cmd = app.add_subcommand("trace", "trace a branch of |phi(z)| = r to CSV/SVG");
    trace_cmd->add_option("--symbol", trace_args.symbol, "symbol literal")->required();
    trace_cmd->add_option("--level", trace_args.level, "level r (default 1)");
    trace_cmd->add_option("--seed-ray", trace_args.seed_ray, "seed ray angle (default pi/4)");
    trace_cmd->add_option("--rays", trace_args.rays, "seed this many rays over (0, 2pi)");
    trace_cmd->add_option("--t-min", trace_args.t_min, "ray search lower bound (default 1e-3)");
    trace_cmd->add_option("--t-max", trace_args.t_max, "ray search upper bound (default 8)");
    trace_cmd->add_option("--step", trace_args.step, "tracer step (default 4e-3)");
    trace_cmd->add_option("--max-points", trace_args.max_points, "per-branch cap (default 20000)");
    trace_cmd->add_option("--arc-len", trace_args.arc_len, "trace budget; 0 = until closure");
    trace_cmd->add_option("--out", trace_args.out, "CSV path (default trace.csv)");
    trace_cmd->add_option("--svg", trace_args.svg, "optional SVG path");

    CheckArgs check_args;
    auto* check_cmd =
        app.add_subcommand("check", "scan, validate and check qualifying arcs; inflate on pass");
    check_cmd->add_option("--symbol", check_args.symbol, "symbol literal")->required();
    check_cmd->add_option("--level", check_args.level, "level (default 1)");
    check_cmd->add_option("--rays", check_args.rays, "seed ray count (default 24)");
    check_cmd->add_option("--ray-lo", check_args.ray_lo, "first ray angle (default 0.05)");
    check_cmd->add_option("--ray-hi", check_args.ray_hi, "last ray angle (default pi-0.05)");
    check_cmd->add_option("--arc-len", check_args.arc_len, "trace budget per seed (default 2)");
    check_cmd->add_option("--grid-theta", check_args.grid_theta, "ray grid (default 200)");
    check_cmd->add_option("--grid-t", check_args.grid_t, "radial grid (default 200)");
    check_cmd->add_option("--margin-floor", check_args.margin_floor,
                          "pass needs min margin >= floor (default 1e-3)");
    check_cmd->add_option("--m", check_args.m, "inflation target power (default 2)");
    check_cmd->add_flag("--inflate,!--no-inflate", check_args.inflate,
                        "search (r, eps) after a pass (default on)");
    check_cmd->add_flag("--strict", check_args.strict, "exit 4 unless the verdict is pass");
    check_cmd->add_option("--out", check_args.out, "report path (default check_report.json)");
    check_cmd->add_option("--svg", check_args.svg, "optional region SVG path");
    check_cmd->add_option("--emit-problem", check_args.emit_problem,
                          "write a witness problem JSON when inflation succeeds");

    WitnessArgs witness_args;
    auto* witness_cmd =
        app.add_subcommand("witness", "run the eigenvalue-power construction until certified");
    witness_cmd->add_option("--problem", witness_args.problem_file, "problem JSON file");
    witness_cmd->add_option("--symbol", witness_args.symbol, "symbol literal (inline problem)");
    witness_cmd->add_option("--m", witness_args.m, "algebra power m (default 2)");
    witness_cmd->add_option("--r", witness_args.r, "level of the gamma frequencies");
    witness_cmd->add_option("--lambda", witness_args.lambda, "comma-separated interior freqs");
    witness_cmd->add_option("--gamma", witness_args.gamma, "comma-separated level freqs");
    witness_cmd->add_option("--a", witness_args.a, "amplitudes of A");
    witness_cmd->add_option("--b", witness_args.b, "amplitudes of B");
    witness_cmd->add_option("--eps", witness_args.eps, "certification target (default 1e-6)");
    witness_cmd->add_option("--rho", witness_args.rho, "norm disk radius (default 1)");
    witness_cmd->add_option("--q-max", witness_args.q_max, "search cap (default 200)");
    witness_cmd->add_option("--branch", witness_args.branch, "m-th root branch (default 0)");
    witness_cmd->add_option("--out", witness_args.out, "trace CSV (default witness_trace.csv)");
    witness_cmd->add_option("--residual", witness_args.residual,
                            "write the final residual as exponential-sum JSON records");

    ZerosArgs zeros_args;
    auto* zeros_cmd =
        app.add_subcommand("zeros", "argument-principle zero counts of orbit powers");
    zeros_cmd->add_option("--f", zeros_args.f, "polynomial coefficients c0,c1,...");
    zeros_cmd->add_option("--weight", zeros_args.weight, "weight exponent Q coefficients");
    zeros_cmd->add_option("--phi-scale", zeros_args.phi_scale, "affine scale (default 1)");
    zeros_cmd->add_option("--phi-shift", zeros_args.phi_shift, "affine shift (default 1)");
    zeros_cmd->add_option("--power", zeros_args.power, "orbit power p (default 2)");
    zeros_cmd->add_option("--n", zeros_args.n, "iteration count (default 3)");
    zeros_cmd->add_option("--disks", zeros_args.disks, "cx,cy,r;cx,cy,r;...");
    zeros_cmd->add_option("--n-quad", zeros_args.n_quad, "quadrature nodes (default 1024)");
    zeros_cmd->add_option("--out", zeros_args.out, "table CSV (default zeros_table.csv)");

    std::string examples_outdir = "examples_out";
    auto* examples_cmd =
        app.add_subcommand("examples", "run the whole symbol catalog, write a summary table");
    examples_cmd->add_option("--outdir", examples_outdir, "output directory (default examples_out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(trace_cmd)) return run_trace(trace_args);
        if (app.got_subcommand(check_cmd)) return run_check(check_args);
        if (app.got_subcommand(witness_cmd)) return run_witness(witness_args);
        if (app.got_subcommand(zeros_cmd)) return run_zeros(zeros_args);
        if (app.got_subcommand(examples_cmd)) return run_examples(examples_outdir);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
