// affcone: command-line front end over the fixture corpus.
//
// Exit codes: 0 pass, 1 fail or mismatch, 2 input error, 3 budget exceeded.

#include "affcone/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>

using namespace affcone;

namespace {

picard::LatticeClass class_argument(const picard::PicardLattice& lat, const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    const auto j = io::read_json_file(arg);
    return io::class_from_json(lat, j.is_object() && j.contains("class") ? j.at("class") : j);
  }
  return commands::parse_inline_class(lat, arg);
}

int emit(const io::Report& r, bool as_json) {
  if (as_json)
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
  return r.exit_code();
}

int emit_error(const std::string& kind, const std::string& message, bool as_json) {
  if (as_json)
    std::cout << io::json{{"verdict", "error"}, {"kind", kind}, {"message", message}}.dump(2) << "\n";
  std::cerr << "error: " << message << "\n";
  return kind == "budget" ? 3 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for polar cylinders, derivations, dual graphs and descent searches"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::function<io::Report()> action;

  int n = 0;
  std::string cls;
  auto* lines = app.add_subcommand("lines", "Enumerate (-1)-classes on the blowup of P2 at n points");
  lines->add_option("--n", n, "Number of points")->required();
  lines->callback([&] { action = [&] { return commands::lines(n); }; });

  auto* nef = app.add_subcommand("nef", "Nef and ample tests for a class");
  nef->add_option("--n", n, "Number of points")->required();
  nef->add_option("--class", cls, "Inline \"3,-1,...\" or a JSON file")->required();
  nef->callback([&] {
    action = [&] {
      picard::PicardLattice lat(n);
      return commands::nef(n, class_argument(lat, cls));
    };
  });

  auto* nefvalue = app.add_subcommand("nefvalue", "Inverse nef value and adjoint type");
  nefvalue->add_option("--n", n, "Number of points")->required();
  nefvalue->add_option("--class", cls, "Inline \"3,-1,...\" or a JSON file")->required();
  nefvalue->callback([&] {
    action = [&] {
      picard::PicardLattice lat(n);
      return commands::nefvalue(n, class_argument(lat, cls));
    };
  });

  std::string file;
  auto* cyl = app.add_subcommand("cyl", "Cylinder certificates and pencils");
  cyl->require_subcommand(1);
  using CylFn = io::Report (*)(const io::json&);
  const std::vector<std::tuple<const char*, const char*, CylFn>> cyl_cmds{
      {"verify", "Check a certificate sums to its target", &commands::cyl_verify},
      {"audit", "Audit a cubic-surface pencil and boundary", &commands::cyl_audit},
      {"eps", "Exact eps interval of a one-parameter certificate", &commands::cyl_eps},
      {"ml", "Common components of pencil supports", &commands::cyl_ml}};
  for (const auto& [name, help, fn] : cyl_cmds) {
    auto* sub = cyl->add_subcommand(name, help);
    sub->add_option("file", file, "Fixture JSON")->required();
    sub->callback([&, fn = fn] { action = [&, fn] { return fn(io::read_json_file(file)); }; });
  }

  auto* lnd = app.add_subcommand("lnd", "Derivations on polynomial rings");
  lnd->require_subcommand(1);
  auto* lnd_check = lnd->add_subcommand("check", "Nilpotency, ideal preservation, commutators");
  lnd_check->add_option("file", file, "Fixture JSON")->required();
  lnd_check->callback([&] { action = [&] { return commands::lnd_check(io::read_json_file(file)); }; });

  std::string script, expect;
  auto* graph = app.add_subcommand("graph", "Weighted dual graphs");
  graph->require_subcommand(1);
  auto* run = graph->add_subcommand("run", "Apply a blowup/blowdown script");
  run->add_option("file", file, "Graph JSON")->required();
  run->add_option("--script", script, "Script JSON")->required();
  run->add_option("--expect", expect, "Expected final graph JSON");
  run->callback([&] {
    action = [&] {
      std::optional<io::json> want;
      if (!expect.empty()) want = io::read_json_file(expect);
      return commands::graph_run(io::read_json_file(file), io::read_json_file(script), want);
    };
  });
  auto* fibers = graph->add_subcommand("fibers", "Fiber multiplicities against the section");
  fibers->add_option("file", file, "Graph JSON")->required();
  fibers->callback([&] { action = [&] { return commands::graph_fibers(io::read_json_file(file)); }; });

  nfdescent::SearchBounds bounds;
  nfdescent::Int n_max = -1, m_cap = -1;
  auto* nf = app.add_subcommand("nf", "Integer descent system");
  nf->require_subcommand(1);
  auto* search = nf->add_subcommand("search", "Exhaustive search over a bounded box");
  search->add_option("--a-max", bounds.a_max, "Largest a")->required()->check(CLI::PositiveNumber);
  search->add_option("--b-abs", bounds.b_abs_max, "Bound on |b|")->check(CLI::NonNegativeNumber);
  search->add_option("--n-max", n_max, "Cap on the number of points (default: derived)")->check(CLI::NonNegativeNumber);
  search->add_option("--m-cap", m_cap, "Cap on each multiplicity (default: a)")->check(CLI::PositiveNumber);
  search->add_option("--threads", bounds.threads, "Worker threads (default: all cores)");
  search->callback([&] {
    action = [&] {
      if (n_max >= 0) bounds.n_max = n_max;
      if (m_cap >= 0) bounds.m_cap = m_cap;
      return commands::nf_search(bounds);
    };
  });

  auto* crepant = app.add_subcommand("crepant", "Crepant pullback over a resolution");
  crepant->add_option("file", file, "Fixture JSON")->required();
  crepant->callback([&] { action = [&] { return commands::crepant(io::read_json_file(file)); }; });

  for (auto* sub : {lines, nef, nefvalue, cyl, lnd, graph, nf, crepant}) sub->fallthrough();
  for (auto* sub : cyl->get_subcommands({})) sub->fallthrough();
  for (auto* sub : {lnd_check, run, fibers, search}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return emit(action(), as_json);
  } catch (const BudgetExceeded& e) {
    return emit_error("budget", e.what(), as_json);
  } catch (const InputError& e) {
    return emit_error("input", e.what(), as_json);
  } catch (const io::json::exception& e) {
    return emit_error("input", std::string("malformed fixture: ") + e.what(), as_json);
  }
}
