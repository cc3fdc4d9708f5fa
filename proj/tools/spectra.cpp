#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spectra/spectra.hpp"

using namespace spectra;

namespace {

constexpr int kExitParse = 2;
constexpr double kAgreementTol = 1e-9;

std::string fmt(double x, const char* spec = "%.12f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
  }
};

int cmd_rho(const std::string& arg, double tol) {
  const auto in = parse_graph_input(arg);
  const Graph& g = in.graph;
  std::ostringstream os;
  os << "input " << in.label << "\norder " << g.order() << "\nedges " << g.edge_count() << "\ngraph6 " << to_graph6(g)
     << '\n';
  if (g.order() == 0) throw InvalidInput("the graph has no vertices");
  if (!is_connected(g)) {
    os << "rho_power " << fmt(spectral_radius_any(g)) << " (largest component; graph is disconnected)\n";
    std::cout << os.str();
    return 0;
  }
  const auto power = perron_pair(g, tol);
  os << "rho_power " << fmt(power.rho) << " residual " << fmt(power.residual, "%.3e") << '\n';
  double worst = 0.0;
  if (g.order() <= kDenseCap) {
    const auto dense = perron_pair_dense(g);
    worst = std::max(worst, std::abs(dense.rho - power.rho));
    os << "rho_dense " << fmt(dense.rho) << " delta " << fmt(std::abs(dense.rho - power.rho), "%.3e") << '\n';
  }
  if (in.spec && in.spec->family == Family::B) {
    const auto a = rho_analytic(in.spec->m, in.spec->p, in.spec->q);
    worst = std::max(worst, std::abs(a.rho() - power.rho));
    os << "rho_analytic " << fmt(a.rho()) << " delta " << fmt(std::abs(a.rho() - power.rho), "%.3e") << " a "
       << fmt(a.a) << " b " << fmt(a.b) << '\n';
  }
  if (g.order() <= kExactCap) {
    const auto b = rho_bracket(g, BigRational(1, BigInt(1) << 40));
    worst = std::max(worst, std::abs(b.midpoint() - power.rho));
    os << "bracket " << b.to_string() << " midpoint " << fmt(b.midpoint()) << " delta "
       << fmt(std::abs(b.midpoint() - power.rho), "%.3e") << '\n';
  }
  os << "perron";
  for (double x : power.perron) os << ' ' << fmt(x);
  os << "\nagreement " << (worst <= kAgreementTol ? "ok" : "FAILED") << " max delta " << fmt(worst, "%.3e")
     << " tolerance " << fmt(kAgreementTol, "%.0e") << '\n';
  std::cout << os.str();
  return worst <= kAgreementTol ? 0 : 1;
}

struct VerifyArgs {
  std::string claim;
  std::string ns;
  std::string grid = "3..9";
  bool extended = false;
  int workers = 1;
  Output out;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a) {
  const auto grid_range = parse_range(a.grid);
  const GridConfig grid{grid_range.lo, grid_range.hi};
  MinimizerOptions opt;
  opt.workers = a.workers;
  opt.extended = a.extended;
  std::vector<VerificationReport> reports;
  auto add = [&reports](std::vector<VerificationReport> r) { reports.insert(reports.end(), r.begin(), r.end()); };
  const bool all = a.claim == "all";

  if (a.claim == "main-theorem" || all) {
    const auto ns = parse_int_set(a.ns.empty() ? std::string("7..9,10,12,14,16") : a.ns);
    for (int n : ns) {
      MinimizerOptions o = opt;
      if (n == kExtendedEnumerationCap && a.extended)
        if (const char* cp = std::getenv("SPECTRA_CHECKPOINT")) o.checkpoint = cp;
      reports.push_back(verify_minimizer_theorem(n, o));
    }
  }
  if (a.claim == "small-n-remark" || all) add(verify_small_n_remark());
  if (a.claim == "lemmas" || all) {
    add(verify_lemma_grids(grid));
    add(verify_case_inequalities());
  }
  if (a.claim == "max-extremal" || all) {
    const auto ns = parse_int_set(a.ns.empty() || all ? std::string("1..8") : a.ns);
    for (int n : ns) reports.push_back(verify_max_extremal(n));
  }
  if (a.claim == "bicyclic-minimizers" || all) {
    const auto ns = parse_int_set(a.ns.empty() || all ? std::string("7..12") : a.ns);
    for (int n : ns) reports.push_back(verify_bicyclic_minimizers(n, opt));
  }
  if (a.claim == "rho-floor" || all) add(verify_rho_floor());
  if (a.claim == "analytic" || all) reports.push_back(verify_analytic_agreement(grid));
  if (a.claim == "independence" || all) reports.push_back(verify_independence_formulas(grid.hi));
  if (a.claim == "transforms" || all) add(verify_transform_properties());

  a.out.write(format_reports(reports, a.format == "csv" ? ReportFormat::csv : ReportFormat::text));
  return exit_code(reports);
}

int cmd_sweep(const std::string& grid_s, const Output& out, const std::string& format) {
  const auto r = parse_range(grid_s);
  const auto rows = sweep({r.lo, r.hi});
  if (format == "csv") {
    out.write(sweep_csv(rows));
    return 0;
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    const BicyclicSpec s{row.family, row.m, row.p, row.q};
    os << normalized(s).name() << (s == normalized(s) ? "" : " as " + s.name()) << "  rho " << fmt(row.rho_numeric);
    if (row.analytic) os << "  analytic " << fmt(row.analytic->rho()) << "  a " << fmt(row.analytic->a) << "  b " << fmt(row.analytic->b);
    os << '\n';
  }
  out.write(os.str());
  return 0;
}

int cmd_replay(const std::string& arg) {
  const auto in = parse_graph_input(arg);
  const auto r = proof_replay(in.graph);
  std::cout << "initial core " << r.initial_core.name() << '\n';
  for (const auto& st : r.steps) std::cout << st.to_line() << '\n';
  std::cout << "final " << r.final_family.name() << ' ' << to_graph6(r.final_graph) << '\n';
  return 0;
}

int cmd_enumerate(int n, int edges, bool extended, bool count_only, int max_alpha, const Output& out) {
  const EnumerationConfig cfg{.n = n, .edges = edges, .max_alpha = max_alpha, .extended = extended};
  const OrderlyGenerator gen(cfg);
  if (count_only) {
    std::size_t count = 0;
    gen.for_each([&count](std::span<const std::uint64_t>) { ++count; });
    out.write(std::to_string(count) + "\n");
    return 0;
  }
  std::ostringstream os;
  gen.for_each([&os](std::span<const std::uint64_t> rows) {
    os << rows_to_graph6(std::vector<std::uint64_t>(rows.begin(), rows.end())) << '\n';
  });
  out.write(os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral radius tools for graphs with prescribed independence number"};
  app.require_subcommand(1);

  double tol = 1e-10;
  std::string input;
  auto* rho = app.add_subcommand("rho", "spectral radius, Perron vector and certified bracket of one graph");
  rho->add_option("input", input, "family term (C:n, P:m,p,q, Cmq:m,q, B:m,p,q, Dtilde:n, join:n,alpha), graph6, or file")
      ->required();
  rho->add_option("--tol", tol, "power iteration residual tolerance")->check(CLI::PositiveNumber);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification claim and report");
  verify
      ->add_option("claim", va.claim,
                   "main-theorem, small-n-remark, lemmas, max-extremal, bicyclic-minimizers, rho-floor, analytic, "
                   "independence, transforms, or all")
      ->required()
      ->check(CLI::IsMember({"main-theorem", "small-n-remark", "lemmas", "max-extremal", "bicyclic-minimizers",
                             "rho-floor", "analytic", "independence", "transforms", "all"}));
  verify->add_option("--n", va.ns, "orders, e.g. 7,8,9 or 10..16");
  verify->add_option("--grid", va.grid, "parameter range lo..hi for the family grids");
  verify->add_flag("--extended", va.extended, "allow the full n = 10 enumeration");
  verify->add_option("--workers", va.workers, "worker threads for enumeration")->check(CLI::PositiveNumber);
  verify->add_option("--out", va.out.path, "write the report to this file");
  verify->add_option("--format", va.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  std::string sweep_grid = "3..9", sweep_format = "csv";
  Output sweep_out;
  auto* sw = app.add_subcommand("sweep", "table of rho, a, b over the family grid");
  sw->add_option("--grid", sweep_grid, "parameter range lo..hi");
  sw->add_option("--out", sweep_out.path, "write the table to this file");
  sw->add_option("--format", sweep_format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  std::string replay_input;
  auto* rp = app.add_subcommand("replay", "reduce a graph to a bicyclic family member and print the trace");
  rp->add_option("input", replay_input, "family term, graph6, or file")->required();

  int en_n = 0, en_edges = -1, en_alpha = -1;
  bool en_extended = false, en_count = false;
  Output en_out;
  auto* en = app.add_subcommand("enumerate", "connected graphs up to isomorphism, one graph6 per line");
  en->add_option("--n", en_n, "order")->required();
  en->add_option("--edges", en_edges, "exact edge count");
  en->add_option("--max-alpha", en_alpha, "keep graphs with independence number at most this");
  en->add_flag("--extended", en_extended, "allow n = 10 without an edge count");
  en->add_flag("--count", en_count, "print only the number of graphs");
  en->add_option("--out", en_out.path, "write to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (*rho) return cmd_rho(input, tol);
    if (*verify) return cmd_verify(va);
    if (*sw) return cmd_sweep(sweep_grid, sweep_out, sweep_format);
    if (*rp) return cmd_replay(replay_input);
    if (*en) return cmd_enumerate(en_n, en_edges, en_extended, en_count, en_alpha, en_out);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
