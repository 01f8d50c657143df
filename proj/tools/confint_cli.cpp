#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "confint/cli.hpp"

using namespace confint;

int main(int argc, char** argv) {
  CLI::App app{"Knot invariants from configuration space integrals"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool numeric) {
    sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv", "dot"}));
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    if (!numeric) return;
    sub->add_option("--budget", cfg.budget, "samples per integral");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--workers", cfg.workers, "worker threads (wall time only)");
    sub->add_option("--anomaly-policy", cfg.anomaly_policy, "cited-zero | all-zero | file:<path>");
    sub->add_option_function<double>("--rejection-cutoff", [&](double x) { cfg.rejection_cutoff = x; },
                                     "diagonal cutoff relative to the curve diameter");
  };

  int n_max = 3, strata_k = 4, max_codim = 2, degree = 0;
  std::string knot, knot2, weights = "primitive", mode = "interval", diagram;
  bool integral = false, gauss = false;

  auto* dims = app.add_subcommand("dims", "quotient dimensions of chord and trivalent diagrams");
  dims->add_option("n_max", n_max)->required();
  add_common(dims, false);

  auto* link = app.add_subcommand("link", "Gauss linking integral of two components");
  link->add_option("knot1", knot, "built-in name or knot JSON")->required();
  link->add_option("knot2", knot2, "built-in name or knot JSON")->required();
  add_common(link, true);

  auto* v2c = app.add_subcommand("v2", "degree-2 invariant by configuration space integrals");
  v2c->add_option("knot", knot, "built-in name or knot JSON")->required();
  add_common(v2c, true);

  auto* tw = app.add_subcommand("tw", "invariant T(W) of a primitive weight system");
  tw->add_option("knot", knot, "built-in name or knot JSON")->required();
  tw->add_option("--weights", weights, "primitive, or JSON of chord diagram values");
  tw->add_option("--degree", degree, "degree of the weight system (default: from the weights)");
  add_common(tw, true);

  auto* strata = app.add_subcommand("strata", "boundary strata of the compactified configuration space");
  strata->add_option("k", strata_k)->required();
  strata->add_option("--mode", mode, "interval | abstract");
  strata->add_option("--max-codim", max_codim);
  add_common(strata, false);

  auto* uni = app.add_subcommand("universality", "alternating sum over the resolutions of a singular knot");
  uni->add_option("diagram", diagram, "crossed | side-by-side | nested | single | diagram text")->required();
  uni->add_option("--weights", weights, "primitive, or JSON of chord diagram values");
  uni->add_flag("--integral", integral, "also form the sum from v2 integrals");
  add_common(uni, true);

  auto* kn = app.add_subcommand("knot", "print the knot spec JSON of a built-in knot");
  kn->add_option("knot", knot, "built-in name or knot JSON")->required();
  add_common(kn, false);

  auto* rerun = app.add_subcommand("rerun", "repeat the run recorded in a JSON report");
  rerun->add_option("report", knot, "JSON report or bare run config")->required();
  rerun->add_option("--workers", cfg.workers, "worker threads (wall time only)");
  rerun->add_option("--out", cfg.out, "write the report here instead of stdout");

  auto* pv = app.add_subcommand("pv", "Polyak-Viro degree-2 invariant");
  pv->add_option("input", knot, "built-in name, knot JSON, or Gauss code file with --gauss")->required();
  pv->add_flag("--gauss", gauss, "input is a Gauss code text file");
  add_common(pv, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    Report r;
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == dims) {
      cfg.params = {{"n_max", n_max}};
    } else if (sub == link) {
      cfg.inputs = {knot, knot2};
    } else if (sub == tw) {
      cfg.inputs = {knot};
      cfg.params = {{"weights", weights}, {"degree", degree}};
    } else if (sub == strata) {
      cfg.params = {{"k", strata_k}, {"mode", mode}, {"max_codim", max_codim}};
    } else if (sub == uni) {
      cfg.inputs = {diagram};
      cfg.params = {{"weights", weights}, {"integral", integral}};
    } else if (sub == pv) {
      cfg.inputs = {knot};
      cfg.params = {{"gauss", gauss}};
    } else if (sub == rerun) {
      // The embedded config replaces everything except workers and output.
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(knot));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(knot + ": " + e.what());
      }
      RunConfig c = run_config_from_json(j.contains("config") ? j["config"] : j);
      c.workers = cfg.workers;
      c.out = cfg.out;
      cfg = c;
    } else {
      cfg.inputs = {knot};
    }
    r = run(cfg);
    const std::string text = r.render(cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out);
      if (!out) throw PreconditionError("cannot write " + cfg.out);
      out << text;
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
