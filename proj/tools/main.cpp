// fpx: simulation and verification lab for the friendship paradox index on
// circular random geometric graphs.
//
// Subcommands: tau, simulate, converge, verify-moments, oracle-check.
// Exit codes: 0 success/PASS, 1 usage error, 2 verdict FAIL, 3 infeasible
// parameters. Data written to stdout/--out is byte-deterministic for a fixed
// master seed and any worker count; timing and progress go to stderr.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpx/errors.hpp"
#include "fpx/experiment.hpp"
#include "fpx/format.hpp"
#include "fpx/moments.hpp"
#include "fpx/rgg.hpp"
#include "fpx/stats.hpp"
#include "fpx/theory.hpp"

using json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
    std::string format = "csv";
};

struct DensityOpts {
    std::string density = "uniform";
    double kappa = 1.0;
    double mu = 0.0;
    std::string file;

    fpx::DensitySpec to_spec() const {
        fpx::DensitySpec spec;
        if (density == "uniform") {
            spec.kind = fpx::DensityKind::Uniform;
        } else if (density == "vonmises") {
            spec.kind = fpx::DensityKind::VonMises;
            spec.kappa = kappa;
            spec.mu = mu;
        } else if (density == "csv") {
            spec.kind = fpx::DensityKind::Tabulated;
            if (file.empty())
                throw CLI::ValidationError("--density csv requires --density-file");
            spec.csv_path = file;
        } else {
            throw CLI::ValidationError("--density must be uniform|vonmises|csv");
        }
        return spec;
    }

    std::string label() const {
        if (density == "uniform") return "uniform";
        if (density == "vonmises")
            return "vonmises(kappa=" + fpx::fmt_double(kappa) +
                   ",mu=" + fpx::fmt_double(mu) + ")";
        return "csv(" + file + ")";
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--workers", o.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Write the data artifact to this file");
    if (with_format)
        cmd->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
}

void add_density(CLI::App* cmd, DensityOpts& o) {
    cmd->add_option("--density", o.density, "uniform|vonmises|csv")
        ->check(CLI::IsMember({"uniform", "vonmises", "csv"}));
    cmd->add_option("--kappa", o.kappa, "von Mises concentration");
    cmd->add_option("--mu", o.mu, "von Mises phase (radians, as printed)");
    cmd->add_option("--density-file", o.file, "CSV file for --density csv");
}

// The artifact goes to stdout and, byte-identically, to --out when given.
void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    std::cout.flush();
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << text;
    }
}

fpx::MotifKind motif_from_name(const std::string& name) {
    static const std::map<std::string, fpx::MotifKind> names = {
        {"edge", fpx::MotifKind::Edge},
        {"cherry", fpx::MotifKind::Cherry},
        {"path", fpx::MotifKind::Path},
        {"triangle", fpx::MotifKind::Triangle},
        {"three_edge_path", fpx::MotifKind::ThreeEdgePath},
        {"triangle_plus_edge", fpx::MotifKind::TrianglePlusEdge},
    };
    auto it = names.find(name);
    if (it == names.end())
        throw CLI::ValidationError("unknown motif: " + name);
    return it->second;
}

bool has_exact_form(fpx::MotifKind m) {
    return m == fpx::MotifKind::Edge || m == fpx::MotifKind::Cherry ||
           m == fpx::MotifKind::Path || m == fpx::MotifKind::Triangle;
}

// ---------------------------------------------------------------- tau -----

int cmd_tau(const CommonOpts& common, const std::vector<double>& kappas,
            const std::vector<double>& mus) {
    std::string text;
    if (common.format == "csv") {
        text = "kappa,mu,tau_f\n";
        for (double mu : mus)
            for (double k : kappas)
                text += fpx::fmt_double(k) + "," + fpx::fmt_double(mu) + "," +
                        fpx::fmt_double(fpx::tau_f(k, mu)) + "\n";
    } else {
        json rows = json::array();
        for (double mu : mus)
            for (double k : kappas)
                rows.push_back({{"kappa", k}, {"mu", mu}, {"tau_f", fpx::tau_f(k, mu)}});
        text = rows.dump() + "\n";
    }
    emit(text, common.out);
    return 0;
}

// ----------------------------------------------------------- simulate -----

int cmd_simulate(const CommonOpts& common, const DensityOpts& dopts,
                 std::size_t n, double r, const std::string& per_node,
                 const std::string& dump_nodes, const std::string& dump_edges) {
    const fpx::PeriodicDensity density = dopts.to_spec().make();
    const fpx::SimulateResult res = fpx::run_simulate(density, n, r, common.seed);

    json out = {
        {"n", res.n},
        {"r", res.r},
        {"f_n", res.f_n},
        {"prediction", res.prediction},
        {"nr3", res.nr3},
        {"integral_fprime_sq", res.fprime_sq_integral},
        {"regime", fpx::regime_name(res.regime)},
        {"seed", res.seed},
        {"n_isolated", res.n_isolated},
    };
    emit(out.dump() + "\n", common.out);

    if (!dump_nodes.empty()) {
        std::string text = "node,position,degree\n";
        for (std::size_t i = 0; i < res.n; ++i)
            text += std::to_string(i) + "," + fpx::fmt_double(res.positions.x[i]) +
                    "," + std::to_string(res.degrees[i]) + "\n";
        std::ofstream f(dump_nodes, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open node file: " + dump_nodes);
        f << text;
    }

    if (!per_node.empty()) {
        std::string text = "node,position,degree,delta\n";
        for (std::size_t i = 0; i < res.n; ++i)
            text += std::to_string(i) + "," + fpx::fmt_double(res.positions.x[i]) +
                    "," + std::to_string(res.degrees[i]) + "," +
                    fpx::fmt_double(res.paradox.delta[i]) + "\n";
        text += "# summary," + std::to_string(res.n) + "," + fpx::fmt_double(res.r) +
                "," + fpx::fmt_double(res.f_n) + "," +
                std::to_string(res.n_isolated) + "\n";
        std::ofstream f(per_node, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open per-node file: " + per_node);
        f << text;
    }

    if (!dump_edges.empty()) {
        // Edge list (u, v) with u before v in sorted-rank terms.
        fpx::Rng rng(res.seed);
        fpx::CircularRGG g = fpx::build_graph(density.sample(n, rng), r);
        auto edges = g.edges();
        std::vector<std::pair<std::uint32_t, std::uint32_t>> by_rank;
        by_rank.reserve(edges.size());
        for (auto [a, b] : edges) {
            if (g.rank_of(a) > g.rank_of(b)) std::swap(a, b);
            by_rank.emplace_back(a, b);
        }
        std::sort(by_rank.begin(), by_rank.end(),
                  [&](const auto& e1, const auto& e2) {
                      return std::make_pair(g.rank_of(e1.first), g.rank_of(e1.second)) <
                             std::make_pair(g.rank_of(e2.first), g.rank_of(e2.second));
                  });
        std::string text = "u,v\n";
        for (const auto& [a, b] : by_rank)
            text += std::to_string(a) + "," + std::to_string(b) + "\n";
        std::ofstream f(dump_edges, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open edge file: " + dump_edges);
        f << text;
    }
    return 0;
}

// ----------------------------------------------------------- converge -----

void load_grid_config(const std::string& path, fpx::ExperimentGrid& grid,
                      DensityOpts& dopts) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    json cfg = json::parse(f);
    if (cfg.contains("density")) {
        const auto& d = cfg["density"];
        dopts.density = d.value("kind", dopts.density);
        dopts.kappa = d.value("kappa", dopts.kappa);
        dopts.mu = d.value("mu", dopts.mu);
        dopts.file = d.value("file", dopts.file);
    }
    if (cfg.contains("n_values"))
        grid.n_values = cfg["n_values"].get<std::vector<std::size_t>>();
    if (cfg.contains("radius_rule")) {
        const auto& r = cfg["radius_rule"];
        const std::string kind = r.value("kind", "fixed");
        if (kind == "fixed") {
            grid.rule.kind = fpx::RadiusRuleKind::Fixed;
            grid.rule.r = r.value("r", grid.rule.r);
        } else if (kind == "power") {
            grid.rule.kind = fpx::RadiusRuleKind::PowerLaw;
            grid.rule.c = r.value("c", grid.rule.c);
            grid.rule.alpha = r.value("alpha", grid.rule.alpha);
        } else if (kind == "lambda") {
            grid.rule.kind = fpx::RadiusRuleKind::Lambda;
            grid.rule.lambda = r.value("lambda", grid.rule.lambda);
        } else {
            throw std::runtime_error("config: radius_rule.kind must be fixed|power|lambda");
        }
    }
    grid.replications = cfg.value("replications", grid.replications);
    grid.master_seed = cfg.value("master_seed", grid.master_seed);
    grid.workers = cfg.value("workers", grid.workers);
    if (cfg.contains("regime_thresholds")) {
        grid.thresholds.sparse =
            cfg["regime_thresholds"].value("sparse", grid.thresholds.sparse);
        grid.thresholds.dense =
            cfg["regime_thresholds"].value("dense", grid.thresholds.dense);
    }
}

std::string converge_csv(const fpx::ConvergenceReport& report) {
    std::string text =
        "n,r,nr3,regime,fn_mean,fn_std,prediction,abs_err,rel_err,replications\n";
    for (const auto& row : report.rows) {
        text += std::to_string(row.n) + "," + fpx::fmt_double(row.r) + "," +
                fpx::fmt_double(row.nr3) + "," + fpx::regime_name(row.regime) + "," +
                fpx::fmt_double(row.fn_mean) + "," + fpx::fmt_double(row.fn_std) +
                "," + fpx::fmt_double(row.prediction) + "," +
                fpx::fmt_double(row.abs_err) + "," + fpx::fmt_double(row.rel_err) +
                "," + std::to_string(row.replications) + "\n";
    }
    return text;
}

int cmd_converge(fpx::ExperimentGrid grid, const std::string& out_path,
                 const std::string& format) {
    const auto report = fpx::run_convergence(grid);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& row : report.rows)
        std::cerr << "n=" << row.n << " took " << row.wall_time_ms << " ms\n";

    // `grid.workers` only affects wall time; the artifact below is identical
    // for any worker count.
    std::string text;
    if (format == "json") {
        json rows = json::array();
        for (const auto& row : report.rows)
            rows.push_back({{"n", row.n},
                            {"r", row.r},
                            {"nr3", row.nr3},
                            {"regime", fpx::regime_name(row.regime)},
                            {"fn_mean", row.fn_mean},
                            {"fn_std", row.fn_std},
                            {"prediction", row.prediction},
                            {"abs_err", row.abs_err},
                            {"rel_err", row.rel_err},
                            {"replications", row.replications}});
        json doc = {{"rows", rows}, {"verdict", report.pass ? "PASS" : "FAIL"}};
        text = doc.dump() + "\n";
        emit(text, out_path);
    } else {
        text = converge_csv(report);
        emit(text, out_path);
        std::cout << "# verdict: " << (report.pass ? "PASS" : "FAIL") << "\n";
    }
    return report.pass ? 0 : 2;
}

// ------------------------------------------------------ verify-moments ----

int cmd_verify_moments(const CommonOpts& common, const DensityOpts& dopts,
                       std::vector<double> radii, std::vector<double> anchors,
                       std::uint64_t samples, std::vector<std::string> motif_names,
                       bool check_families) {
    if (radii.size() < 2)
        throw CLI::ValidationError("verify-moments needs at least 2 radii");
    const fpx::PeriodicDensity density = dopts.to_spec().make();

    std::vector<fpx::MotifKind> motifs;
    for (const auto& nm : motif_names) motifs.push_back(motif_from_name(nm));

    struct Cell {
        fpx::MomentEstimate mc;
        double exact = std::numeric_limits<double>::quiet_NaN();
        double asym = 0.0;
    };
    std::vector<Cell> cells;
    for (fpx::MotifKind m : motifs)
        for (double a : anchors)
            for (double r : radii) {
                Cell c;
                c.mc = fpx::estimate_motif(density, a, r, m, samples, common.seed,
                                           common.workers);
                if (has_exact_form(m)) c.exact = fpx::motif_prob_exact(density, a, r, m);
                c.asym = fpx::motif_prob_asymptotic(density, a, r, m);
                cells.push_back(c);
            }

    std::size_t gated = 0, within = 0;
    for (const auto& c : cells) {
        if (!std::isnan(c.exact)) {
            ++gated;
            if (std::abs(c.mc.mean - c.exact) <= 4.0 * c.mc.stderr_) ++within;
        }
    }

    // Observed order of |exact - asymptotic| under radius halving-style steps.
    struct OrderRow {
        fpx::MotifKind motif;
        double anchor, r_hi, r_lo, order;
    };
    std::vector<double> sorted_r = radii;
    std::sort(sorted_r.begin(), sorted_r.end(), std::greater<>());
    std::vector<OrderRow> orders;
    bool orders_ok = true;
    for (fpx::MotifKind m : motifs) {
        if (!has_exact_form(m)) continue;
        for (double a : anchors) {
            for (std::size_t k = 0; k + 1 < sorted_r.size(); ++k) {
                const double r1 = sorted_r[k], r2 = sorted_r[k + 1];
                const double e1 =
                    std::abs(fpx::motif_prob_exact(density, a, r1, m) -
                             fpx::motif_prob_asymptotic(density, a, r1, m));
                const double e2 =
                    std::abs(fpx::motif_prob_exact(density, a, r2, m) -
                             fpx::motif_prob_asymptotic(density, a, r2, m));
                const double order = std::log(e1 / e2) / std::log(r1 / r2);
                if (!(order >= 3.5)) orders_ok = false;
                orders.push_back({m, a, r1, r2, order});
            }
        }
    }

    struct FamilyRow {
        fpx::MotifIndicator a, b;
        double gap, combined_se;
        bool ok;
    };
    std::vector<FamilyRow> families;
    bool families_ok = true;
    if (check_families) {
        for (fpx::MotifKind fam :
             {fpx::MotifKind::ThreeEdgePath, fpx::MotifKind::TrianglePlusEdge}) {
            const auto members = fpx::family_members(fam);
            std::vector<fpx::MomentEstimate> ests;
            for (std::size_t k = 0; k < members.size(); ++k)
                ests.push_back(fpx::estimate_indicator(
                    density, anchors.front(), sorted_r.front(), members[k], samples,
                    fpx::hash64(common.seed, 0xFA01 + k), common.workers));
            for (std::size_t i = 0; i < ests.size(); ++i)
                for (std::size_t j = i + 1; j < ests.size(); ++j) {
                    const double gap = std::abs(ests[i].mean - ests[j].mean);
                    const double combined = std::sqrt(ests[i].stderr_ * ests[i].stderr_ +
                                                      ests[j].stderr_ * ests[j].stderr_);
                    const bool ok = gap <= 5.0 * combined;
                    families_ok = families_ok && ok;
                    families.push_back({ests[i].indicator, ests[j].indicator, gap,
                                        combined, ok});
                }
        }
    }

    const bool mc_ok = gated == 0 || static_cast<double>(within) >=
                                         0.95 * static_cast<double>(gated);
    const bool pass = mc_ok && orders_ok && families_ok;

    if (common.format == "json") {
        json cell_rows = json::array();
        for (const auto& c : cells) {
            const bool has_exact = !std::isnan(c.exact);
            json row = {{"motif", fpx::motif_name(c.mc.motif)},
                        {"anchor_x", c.mc.anchor_x},
                        {"r", c.mc.r},
                        {"samples", c.mc.samples},
                        {"mean", c.mc.mean},
                        {"stderr", c.mc.stderr_},
                        {"exact", nullptr},
                        {"asymptotic", c.asym},
                        {"abs_err_exact", nullptr},
                        {"abs_err_asymptotic", std::abs(c.mc.mean - c.asym)}};
            if (has_exact) {
                row["exact"] = c.exact;
                row["abs_err_exact"] = std::abs(c.mc.mean - c.exact);
            }
            cell_rows.push_back(row);
        }
        json order_rows = json::array();
        for (const auto& o : orders)
            order_rows.push_back({{"motif", fpx::motif_name(o.motif)},
                                  {"anchor_x", o.anchor},
                                  {"r_hi", o.r_hi},
                                  {"r_lo", o.r_lo},
                                  {"order", o.order}});
        json family_rows = json::array();
        for (const auto& f : families)
            family_rows.push_back({{"a", fpx::indicator_name(f.a)},
                                   {"b", fpx::indicator_name(f.b)},
                                   {"gap", f.gap},
                                   {"combined_se", f.combined_se},
                                   {"ok", f.ok}});
        json doc = {{"cells", cell_rows},
                    {"orders", order_rows},
                    {"families", family_rows},
                    {"verdict", pass ? "PASS" : "FAIL"}};
        emit(doc.dump() + "\n", common.out);
        return pass ? 0 : 2;
    }

    std::string text =
        "motif,anchor_x,r,samples,mean,stderr,exact,asymptotic,abs_err_exact,"
        "abs_err_asymptotic\n";
    for (const auto& c : cells) {
        const bool has_exact = !std::isnan(c.exact);
        text += std::string(fpx::motif_name(c.mc.motif)) + "," +
                fpx::fmt_double(c.mc.anchor_x) + "," + fpx::fmt_double(c.mc.r) + "," +
                std::to_string(c.mc.samples) + "," + fpx::fmt_double(c.mc.mean) + "," +
                fpx::fmt_double(c.mc.stderr_) + ",";
        text += (has_exact ? fpx::fmt_double(c.exact) : std::string()) + ",";
        text += fpx::fmt_double(c.asym) + ",";
        text += (has_exact ? fpx::fmt_double(std::abs(c.mc.mean - c.exact))
                           : std::string()) +
                ",";
        text += fpx::fmt_double(std::abs(c.mc.mean - c.asym)) + "\n";
    }
    emit(text, common.out);
    for (const auto& o : orders)
        std::cout << "# order," << fpx::motif_name(o.motif) << ","
                  << fpx::fmt_double(o.anchor) << "," << fpx::fmt_double(o.r_hi) << ","
                  << fpx::fmt_double(o.r_lo) << "," << fpx::fmt_double(o.order) << "\n";
    for (const auto& f : families)
        std::cout << "# family," << fpx::indicator_name(f.a) << ","
                  << fpx::indicator_name(f.b) << "," << fpx::fmt_double(f.gap) << ","
                  << fpx::fmt_double(f.combined_se) << ","
                  << (f.ok ? "ok" : "mismatch") << "\n";
    std::cout << "# verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 2;
}

// -------------------------------------------------------- oracle-check ----

int cmd_oracle_check(const CommonOpts& common, std::vector<std::size_t> n_values,
                     std::vector<double> radii, std::vector<double> kappas,
                     double mu, std::size_t instances) {
    for (std::size_t n : n_values)
        if (n > 20000)
            throw fpx::TooLargeForOracle("oracle-check: n > 20000");

    struct Combo {
        std::string label;
        fpx::PeriodicDensity density;
        std::size_t n;
        double r;
    };
    std::vector<Combo> combos;
    for (std::size_t n : n_values)
        for (double r : radii) {
            combos.push_back({"uniform", fpx::PeriodicDensity::uniform(), n, r});
            for (double k : kappas)
                combos.push_back({"vonmises(kappa=" + fpx::fmt_double(k) + ")",
                                  fpx::PeriodicDensity::von_mises(k, mu), n, r});
        }

    std::size_t mismatches_total = 0;
    std::vector<std::size_t> per_combo(combos.size(), 0);
    std::vector<std::size_t> runs(combos.size(), 0);
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t c = i % combos.size();
        const Combo& combo = combos[c];
        ++runs[c];
        fpx::Rng rng(fpx::hash64(common.seed, i));
        fpx::NodePositions pos = combo.density.sample(combo.n, rng);
        const fpx::CircularRGG g = fpx::build_graph(pos, combo.r);
        const fpx::NaiveAdjacency naive = fpx::naive_adjacency(g.positions(), combo.r);

        bool ok = g.degrees() == naive.degrees && g.edges() == naive.edges;
        if (ok) {
            // F_n equality: identical per-node deltas summed in the identical
            // (sorted-rank) order must give bitwise-equal means.
            std::vector<std::int64_t> deg_rank(combo.n), sum_rank(combo.n);
            std::vector<std::int64_t> nbr(combo.n, 0);
            for (const auto& [a, b] : naive.edges) {
                nbr[a] += naive.degrees[b];
                nbr[b] += naive.degrees[a];
            }
            for (std::size_t k = 0; k < combo.n; ++k) {
                const std::size_t node = g.positions().sorted_order[k];
                deg_rank[k] = naive.degrees[node];
                sum_rank[k] = nbr[node];
            }
            const double f_naive = fpx::friendship_paradox(deg_rank, sum_rank).f_n;
            const double f_sweep = fpx::friendship_paradox(g).f_n;
            ok = f_naive == f_sweep;
        }
        if (!ok) {
            ++mismatches_total;
            ++per_combo[c];
        }
    }
    if (common.format == "json") {
        json rows = json::array();
        for (std::size_t c = 0; c < combos.size(); ++c)
            rows.push_back({{"density", combos[c].label},
                            {"n", combos[c].n},
                            {"r", combos[c].r},
                            {"instances", runs[c]},
                            {"mismatches", per_combo[c]}});
        json doc = {{"rows", rows},
                    {"verdict", mismatches_total == 0 ? "PASS" : "FAIL"}};
        emit(doc.dump() + "\n", common.out);
        return mismatches_total == 0 ? 0 : 2;
    }
    std::string text = "density,n,r,instances,mismatches\n";
    for (std::size_t c = 0; c < combos.size(); ++c)
        text += combos[c].label + "," + std::to_string(combos[c].n) + "," +
                fpx::fmt_double(combos[c].r) + "," + std::to_string(runs[c]) + "," +
                std::to_string(per_combo[c]) + "\n";
    emit(text, common.out);
    std::cout << "# verdict: " << (mismatches_total == 0 ? "PASS" : "FAIL") << "\n";
    return mismatches_total == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"friendship paradox index lab on circular random geometric graphs"};
    app.require_subcommand(1);

    // --- tau
    CommonOpts tau_common;
    std::vector<double> tau_kappas{0.1, 0.5, 1.0, 5.0, 10.0};
    std::vector<double> tau_mus{0.1, 0.3, 0.5};
    auto* tau = app.add_subcommand("tau", "Evaluate tau_f over a (kappa, mu) grid");
    add_common(tau, tau_common);
    tau->add_option("--kappa", tau_kappas, "kappa values");
    tau->add_option("--mu", tau_mus, "mu values");

    // --- simulate
    CommonOpts sim_common;
    DensityOpts sim_density;
    std::size_t sim_n = 10000;
    double sim_r = 0.01;
    std::string sim_per_node, sim_dump_nodes, sim_dump_edges;
    auto* sim = app.add_subcommand("simulate", "One sample-build-measure run");
    add_common(sim, sim_common, /*with_format=*/false);
    add_density(sim, sim_density);
    sim->add_option("--n", sim_n, "node count")->required();
    sim->add_option("--r", sim_r, "radius")->required();
    sim->add_option("--per-node", sim_per_node,
                    "write per-node CSV (node,position,degree,delta) here");
    sim->add_option("--dump-nodes", sim_dump_nodes,
                    "write graph CSV (node,position,degree) here");
    sim->add_option("--dump-edges", sim_dump_edges,
                    "write edge list CSV here (n <= 20000)");

    // --- converge
    CommonOpts conv_common;
    DensityOpts conv_density;
    std::string conv_config, conv_rule = "power";
    std::vector<std::size_t> conv_n{2000, 8000, 32000};
    double conv_r = 0.01, conv_c = 1.0, conv_alpha = 0.7, conv_lambda = 0.5;
    std::size_t conv_reps = 20;
    auto* conv = app.add_subcommand("converge", "Replicated n-sweep with trend verdict");
    add_common(conv, conv_common);
    add_density(conv, conv_density);
    conv->add_option("--config", conv_config, "JSON config mirroring the grid");
    conv->add_option("--n-values", conv_n, "graph sizes");
    conv->add_option("--rule", conv_rule, "fixed|power|lambda")
        ->check(CLI::IsMember({"fixed", "power", "lambda"}));
    conv->add_option("--r", conv_r, "radius for --rule fixed");
    conv->add_option("--c", conv_c, "prefactor for --rule power");
    conv->add_option("--alpha", conv_alpha, "exponent for --rule power");
    conv->add_option("--lambda", conv_lambda, "n*r^3 target for --rule lambda");
    conv->add_option("--replications", conv_reps, "replicates per n");

    // --- verify-moments
    CommonOpts mom_common;
    DensityOpts mom_density;
    std::vector<double> mom_r{0.04, 0.02, 0.01};
    std::vector<double> mom_anchors{0.005, 0.3, 0.995};
    std::uint64_t mom_samples = 1000000;
    std::vector<std::string> mom_motifs{"edge", "cherry", "path", "triangle"};
    bool mom_families = false;
    auto* mom = app.add_subcommand("verify-moments",
                                   "Monte Carlo vs quadrature vs leading order");
    add_common(mom, mom_common);
    add_density(mom, mom_density);
    mom->add_option("--r-list", mom_r, "radii (>= 2 for the order table)");
    mom->add_option("--anchors", mom_anchors, "anchor points in [0,1)");
    mom->add_option("--samples", mom_samples, "replicates per cell");
    mom->add_option("--motifs", mom_motifs, "motifs to verify");
    mom->add_flag("--check-families", mom_families,
                  "also compare the r^3 family members pairwise");

    // --- oracle-check
    CommonOpts ora_common;
    std::vector<std::size_t> ora_n{1000};
    std::vector<double> ora_r{0.005, 0.02, 0.1};
    std::vector<double> ora_kappas{0.5, 2.0};
    double ora_mu = 0.3;
    std::size_t ora_instances = 100;
    auto* ora = app.add_subcommand("oracle-check",
                                   "Sweep vs brute-force equivalence sweep");
    add_common(ora, ora_common);
    ora->add_option("--n-values", ora_n, "graph sizes (<= 20000)");
    ora->add_option("--r-list", ora_r, "radii");
    ora->add_option("--kappa-list", ora_kappas, "von Mises kappas to include");
    ora->add_option("--mu", ora_mu, "von Mises phase");
    ora->add_option("--instances", ora_instances, "total random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (tau->parsed()) return cmd_tau(tau_common, tau_kappas, tau_mus);
        if (sim->parsed())
            return cmd_simulate(sim_common, sim_density, sim_n, sim_r, sim_per_node,
                                sim_dump_nodes, sim_dump_edges);
        if (conv->parsed()) {
            // Start from the flag values (defaults included), then let a
            // config file fill in everything the user did not set by flag.
            fpx::ExperimentGrid grid;
            DensityOpts dopts = conv_density;
            grid.n_values = conv_n;
            grid.rule.kind = conv_rule == "fixed"   ? fpx::RadiusRuleKind::Fixed
                             : conv_rule == "power" ? fpx::RadiusRuleKind::PowerLaw
                                                    : fpx::RadiusRuleKind::Lambda;
            grid.rule.r = conv_r;
            grid.rule.c = conv_c;
            grid.rule.alpha = conv_alpha;
            grid.rule.lambda = conv_lambda;
            grid.replications = conv_reps;
            grid.master_seed = conv_common.seed;
            grid.workers = conv_common.workers;
            if (!conv_config.empty()) {
                fpx::ExperimentGrid cfg = grid;
                DensityOpts cfg_d = dopts;
                load_grid_config(conv_config, cfg, cfg_d);
                if (!conv->count("--n-values")) grid.n_values = cfg.n_values;
                if (!conv->count("--rule")) grid.rule.kind = cfg.rule.kind;
                if (!conv->count("--r")) grid.rule.r = cfg.rule.r;
                if (!conv->count("--c")) grid.rule.c = cfg.rule.c;
                if (!conv->count("--alpha")) grid.rule.alpha = cfg.rule.alpha;
                if (!conv->count("--lambda")) grid.rule.lambda = cfg.rule.lambda;
                if (!conv->count("--replications")) grid.replications = cfg.replications;
                if (!conv->count("--seed")) grid.master_seed = cfg.master_seed;
                if (!conv->count("--workers")) grid.workers = cfg.workers;
                grid.thresholds = cfg.thresholds;
                if (!conv->count("--density")) dopts.density = cfg_d.density;
                if (!conv->count("--kappa")) dopts.kappa = cfg_d.kappa;
                if (!conv->count("--mu")) dopts.mu = cfg_d.mu;
                if (!conv->count("--density-file")) dopts.file = cfg_d.file;
            }
            grid.density = dopts.to_spec();
            return cmd_converge(std::move(grid), conv_common.out, conv_common.format);
        }
        if (mom->parsed())
            return cmd_verify_moments(mom_common, mom_density, mom_r, mom_anchors,
                                      mom_samples, mom_motifs, mom_families);
        if (ora->parsed())
            return cmd_oracle_check(ora_common, ora_n, ora_r, ora_kappas, ora_mu,
                                    ora_instances);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const fpx::RadiusOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fpx::InfeasibleRadius& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fpx::SampleBudgetTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fpx::TooLargeForOracle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fpx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
