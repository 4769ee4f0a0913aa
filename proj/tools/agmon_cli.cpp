// Command-line front end: graph generation, eigenpair solving, Agmon
// distances, decay-bound verification, the random-walk bound, and the
// tree-hub demonstration.  Exit codes: 0 success / bounds hold, 1 bound
// violation, 2 input error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agmon/agmon_metric.hpp"
#include "agmon/bounds.hpp"
#include "agmon/eigensolve.hpp"
#include "agmon/errors.hpp"
#include "agmon/graph.hpp"
#include "agmon/graph_io.hpp"
#include "agmon/hamiltonian.hpp"
#include "agmon/report_io.hpp"
#include "agmon/stochastic.hpp"
#include "agmon/tree_experiment.hpp"

namespace {

int exit_code_for(agmon::errc code) {
  switch (code) {
    case agmon::errc::size_cap_exceeded:
    case agmon::errc::convergence_failure:
    case agmon::errc::step_cap_exceeded:
      return 3;  // numerical failure
    default:
      return 2;  // input error
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    char* end = nullptr;
    const double x = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
      agmon::fail(agmon::errc::bad_argument, "cannot parse '" + tok + "' as a number");
    out.push_back(x);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

std::vector<double> read_value_file(const std::string& path) {
  std::vector<double> out;
  const std::string text = agmon::read_file(path);
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(a, b - a + 1);
    char* end = nullptr;
    const double x = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      agmon::fail(agmon::errc::parse_error,
                  path + ":" + std::to_string(line_no) + ": cannot parse '" + tok + "'");
    out.push_back(x);
  }
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::fputs(content.c_str(), stdout);
  else
    agmon::atomic_write(path, content);
}

const agmon::EigenPair& select_pair(const std::vector<agmon::EigenPair>& pairs, int index,
                                    const agmon::Graph& g) {
  if (index < 0 || index >= static_cast<int>(pairs.size()))
    agmon::fail(agmon::errc::bad_argument,
                "pair index " + std::to_string(index) + " out of range; the file holds " +
                    std::to_string(pairs.size()) + " pair(s)");
  const agmon::EigenPair& pair = pairs[index];
  if (static_cast<int>(pair.vector.size()) != g.n)
    agmon::fail(agmon::errc::size_mismatch,
                "eigenvector length " + std::to_string(pair.vector.size()) +
                    " does not match the graph's " + std::to_string(g.n) + " vertices");
  return pair;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenfunctions of graph Schrodinger operators H = L + diag(W), Agmon\n"
               "distances to the allowed region, and pointwise decay-bound checks."};
  app.require_subcommand(1);

  // ---- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a graph instance file");
  std::string gen_family, gen_out, gen_potential, gen_potential_file;
  int gen_n = 8, gen_rows = 2, gen_cols = 2, gen_q = 3, gen_k = 2, gen_retries = 1000;
  double gen_p = 0.5, gen_wmag = 0.0, gen_hubpot = 0.0;
  bool gen_have_wmag = false;
  std::uint64_t gen_seed = 1;
  gen->add_option("family", gen_family, "path | cycle | grid | tree-hub | random")->required();
  gen->add_option("-o,--output", gen_out, "output graph JSON (stdout if omitted)");
  gen->add_option("--n", gen_n, "vertex count (path, cycle, random)")->capture_default_str();
  gen->add_option("--rows", gen_rows, "grid rows")->capture_default_str();
  gen->add_option("--cols", gen_cols, "grid columns")->capture_default_str();
  gen->add_option("--q", gen_q, "tree branching factor")->capture_default_str();
  gen->add_option("--k", gen_k, "tree depth")->capture_default_str();
  gen->add_option("--p", gen_p, "edge probability (random)")->capture_default_str();
  gen->add_option("--seed", gen_seed, "random generator seed")->capture_default_str();
  gen->add_option("--max-retries", gen_retries, "connectivity retries (random)")
      ->capture_default_str();
  gen->add_option("--potential", gen_potential, "comma-separated W values (default all zero)");
  gen->add_option("--potential-file", gen_potential_file, "file with one W value per line");
  gen->add_option("--w-mag", gen_wmag, "tree-hub: constant W off the hub");
  gen->add_option("--hub-potential", gen_hubpot, "tree-hub: W at the hub")->capture_default_str();

  // ---- solve -----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Compute eigenpairs of H = L + diag(W)");
  std::string solve_in, solve_out;
  int solve_count = 1, solve_dense_cap = 2000;
  double solve_tol = 1e-10;
  bool solve_all = false, solve_serial = false;
  solve->add_option("-i,--input", solve_in, "graph JSON")->required();
  solve->add_option("-o,--output", solve_out, "output eigenpair JSON (stdout if omitted)");
  solve->add_option("--count", solve_count, "number of lowest pairs")->capture_default_str();
  solve->add_flag("--all", solve_all, "compute the full spectrum");
  solve->add_option("--tol-eig", solve_tol, "residual tolerance factor")->capture_default_str();
  solve->add_option("--dense-cap", solve_dense_cap, "dense-solve size cap")->capture_default_str();
  solve->add_flag("--serial", solve_serial, "run single-threaded kernels");

  // ---- agmon -----------------------------------------------------------
  auto* agm = app.add_subcommand("agmon", "Agmon distance field at an energy");
  std::string agm_in, agm_out, agm_pairs, agm_format = "json";
  int agm_index = 0;
  double agm_energy = 0.0;
  bool agm_have_energy = false, agm_fmt = false;
  agm->add_option("-i,--input", agm_in, "graph JSON")->required();
  agm->add_option("-o,--output", agm_out, "output report (stdout if omitted)");
  agm->add_option("--energy", agm_energy, "explicit energy E");
  agm->add_option("--pairs", agm_pairs, "eigenpair JSON to take E from");
  agm->add_option("--pair-index", agm_index, "which pair supplies E")->capture_default_str();
  agm->add_option("--format", agm_format, "json | csv")->capture_default_str();
  agm->add_flag("--fmt", agm_fmt, "include the edge-cost comparison distance");

  // ---- verify ----------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check decay bounds for an eigenpair");
  std::string ver_in, ver_out, ver_pairs, ver_format = "json";
  int ver_index = 0;
  double ver_tol = agmon::kDefaultTolVerify;
  bool ver_refined = false, ver_rw = false;
  long long ver_samples = 0, ver_step_cap = agmon::kDefaultStepCap;
  std::uint64_t ver_seed = 1;
  verify->add_option("-i,--input", ver_in, "graph JSON")->required();
  verify->add_option("--pairs", ver_pairs, "eigenpair JSON from `solve`")->required();
  verify->add_option("--pair-index", ver_index, "which pair to verify")->capture_default_str();
  verify->add_option("-o,--output", ver_out, "output report (stdout if omitted)");
  verify->add_option("--format", ver_format, "json | csv")->capture_default_str();
  verify->add_flag("--refined", ver_refined, "also check the single-target refined bound");
  verify->add_flag("--rw", ver_rw, "also check the random-walk moment bound");
  verify->add_option("--samples", ver_samples, "Monte Carlo walks per vertex for --rw (0 = none)")
      ->capture_default_str();
  verify->add_option("--seed", ver_seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--step-cap", ver_step_cap, "walk step cap")->capture_default_str();
  verify->add_option("--tol-verify", ver_tol, "slack tolerance factor (times ||phi||_inf)")
      ->capture_default_str();

  // ---- rw-bound --------------------------------------------------------
  auto* rw = app.add_subcommand("rw-bound", "Random-walk moment bound report");
  std::string rw_in, rw_out, rw_pairs, rw_format = "json";
  int rw_index = 0;
  double rw_tol = agmon::kDefaultTolVerify;
  long long rw_samples = 0, rw_step_cap = agmon::kDefaultStepCap;
  std::uint64_t rw_seed = 1;
  rw->add_option("-i,--input", rw_in, "graph JSON")->required();
  rw->add_option("--pairs", rw_pairs, "eigenpair JSON from `solve`")->required();
  rw->add_option("--pair-index", rw_index, "which pair to bound")->capture_default_str();
  rw->add_option("-o,--output", rw_out, "output report (stdout if omitted)");
  rw->add_option("--format", rw_format, "json | csv")->capture_default_str();
  rw->add_option("--samples", rw_samples, "Monte Carlo walks per vertex (0 = exact only)")
      ->capture_default_str();
  rw->add_option("--seed", rw_seed, "Monte Carlo seed")->capture_default_str();
  rw->add_option("--step-cap", rw_step_cap, "walk step cap")->capture_default_str();
  rw->add_option("--tol-verify", rw_tol, "slack tolerance factor")->capture_default_str();

  // ---- tree-demo -------------------------------------------------------
  auto* tree = app.add_subcommand("tree-demo", "Tree-with-hub sharpness experiment");
  std::string tree_out, tree_csv;
  int tree_q = 3, tree_k = 2;
  double tree_w = 1e4;
  tree->add_option("--q", tree_q, "branching factor")->capture_default_str();
  tree->add_option("--k", tree_k, "depth")->capture_default_str();
  tree->add_option("--w-mag", tree_w, "off-hub potential")->capture_default_str();
  tree->add_option("-o,--output", tree_out, "experiment record JSON (stdout if omitted)");
  tree->add_option("--csv", tree_csv, "also write the level-profile CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  gen_have_wmag = gen->count("--w-mag") > 0;
  agm_have_energy = agm->count("--energy") > 0;

  try {
    if (*gen) {
      agmon::Graph g;
      int hub = -1;
      if (gen_family == "path") {
        g = agmon::gen_path(gen_n);
      } else if (gen_family == "cycle") {
        g = agmon::gen_cycle(gen_n);
      } else if (gen_family == "grid") {
        g = agmon::gen_grid(gen_rows, gen_cols);
      } else if (gen_family == "tree-hub") {
        agmon::TreeHub th = agmon::gen_tree_hub(gen_q, gen_k);
        hub = th.hub;
        g = std::move(th.graph);
      } else if (gen_family == "random") {
        g = agmon::gen_random_connected(gen_n, gen_p, gen_seed, gen_retries);
      } else {
        agmon::fail(agmon::errc::bad_argument,
                    "unknown family '" + gen_family +
                        "'; expected path, cycle, grid, tree-hub, or random");
      }
      int sources = 0;
      if (!gen_potential.empty()) ++sources;
      if (!gen_potential_file.empty()) ++sources;
      if (gen_have_wmag) ++sources;
      if (sources > 1)
        agmon::fail(agmon::errc::bad_argument,
                    "give at most one of --potential, --potential-file, --w-mag");
      agmon::Potential w;
      if (!gen_potential.empty()) {
        w.values = parse_double_list(gen_potential);
      } else if (!gen_potential_file.empty()) {
        w.values = read_value_file(gen_potential_file);
      } else if (gen_have_wmag) {
        if (hub < 0)
          agmon::fail(agmon::errc::bad_argument, "--w-mag applies to the tree-hub family only");
        w.values.assign(g.n, gen_wmag);
        w.values[hub] = gen_hubpot;
      } else {
        w.values.assign(g.n, 0.0);
      }
      agmon::validate_potential(g, w);
      if (gen_out.empty()) {
        nlohmann::json doc;
        doc["n"] = g.n;
        doc["edges"] = g.edge_list();
        doc["potential"] = w.values;
        std::fputs((doc.dump(2) + "\n").c_str(), stdout);
      } else {
        agmon::save_graph(gen_out, g, w);
      }
      return 0;
    }

    if (*solve) {
      auto [g, w] = agmon::load_graph(solve_in);
      agmon::Hamiltonian h = agmon::assemble(g, w);
      agmon::EigOptions opts;
      opts.tol_factor = solve_tol;
      opts.dense_cap = solve_dense_cap;
      opts.exec = solve_serial ? agmon::Exec::serial : agmon::Exec::parallel;
      std::vector<agmon::EigenPair> pairs =
          solve_all ? agmon::eig_all(h, opts) : agmon::eig_smallest(h, solve_count, opts);
      if (solve_out.empty()) {
        nlohmann::json doc;
        doc["pairs"] = nlohmann::json::array();
        for (const auto& p : pairs)
          doc["pairs"].push_back(
              {{"eigenvalue", p.eigenvalue}, {"residual", p.residual}, {"vector", p.vector}});
        std::fputs((doc.dump(2) + "\n").c_str(), stdout);
      } else {
        agmon::save_eigenpairs(solve_out, pairs);
      }
      return 0;
    }

    if (*agm) {
      auto [g, w] = agmon::load_graph(agm_in);
      if (agm_have_energy == !agm_pairs.empty())
        agmon::fail(agmon::errc::bad_argument, "give exactly one of --energy or --pairs");
      double energy = agm_energy;
      if (!agm_pairs.empty())
        energy = select_pair(agmon::load_eigenpairs(agm_pairs), agm_index, g).eigenvalue;
      const agmon::AgmonField field = agmon::agmon_distance(g, w, energy);
      std::vector<double> fmt;
      if (agm_fmt) fmt = agmon::fmt_distance(g, w, energy);
      if (agm_format == "csv")
        emit(agm_out, agmon::agmon_field_csv(field, agm_fmt ? &fmt : nullptr));
      else
        emit(agm_out, agmon::agmon_field_json(field, agm_fmt ? &fmt : nullptr).dump(2) + "\n");
      if (field.allowed_empty) {
        std::fprintf(stderr, "error: [EmptyAllowedRegion] no vertex satisfies W(v) <= E = %s\n",
                     agmon::format_double(energy).c_str());
        return 2;
      }
      return 0;
    }

    if (*verify) {
      auto [g, w] = agmon::load_graph(ver_in);
      const std::vector<agmon::EigenPair> pairs = agmon::load_eigenpairs(ver_pairs);
      const agmon::EigenPair& pair = select_pair(pairs, ver_index, g);
      const agmon::AgmonField field = agmon::agmon_distance(g, w, pair.eigenvalue);
      agmon::require_allowed(field);
      const agmon::BoundReport theorem = agmon::verify_theorem(g, w, pair, field, ver_tol);

      agmon::ExtraColumns extras;
      bool all_ok = theorem.ok;
      double worst_slack = theorem.min_slack;
      int worst_vertex = theorem.min_slack_vertex;
      std::string worst_kind = "theorem";
      nlohmann::json top_extra = nlohmann::json::object();

      if (ver_refined) {
        const agmon::BoundReport refined = agmon::verify_refined(g, w, pair, field, ver_tol);
        std::vector<double> rb(g.n), rs(g.n);
        for (int v = 0; v < g.n; ++v) {
          rb[v] = refined.rows[v].bound;
          rs[v] = refined.rows[v].slack;
        }
        extras.push_back({"refined_bound", std::move(rb)});
        extras.push_back({"refined_slack", std::move(rs)});
        top_extra["refined_bound_ok"] = refined.ok;
        all_ok = all_ok && refined.ok;
        if (refined.min_slack < worst_slack) {
          worst_slack = refined.min_slack;
          worst_vertex = refined.min_slack_vertex;
          worst_kind = "refined";
        }
      }
      if (ver_rw) {
        const agmon::WalkBound walk = agmon::make_walk_bound(g, w, pair.eigenvalue, ver_samples,
                                                             ver_seed, ver_step_cap);
        const agmon::BoundReport wrep = agmon::verify_walk_bound(g, w, pair, walk, field, ver_tol);
        std::vector<double> wb(g.n), ws(g.n), wt(g.n);
        for (int v = 0; v < g.n; ++v) {
          wb[v] = wrep.rows[v].bound;
          ws[v] = wrep.rows[v].slack;
          wt[v] = wrep.tighter_than_theorem[v];
        }
        extras.push_back({"walk_bound", std::move(wb)});
        extras.push_back({"walk_slack", std::move(ws)});
        extras.push_back({"walk_tighter", std::move(wt)});
        top_extra["walk_bound_ok"] = wrep.ok;
        top_extra["walk_vacuous"] = wrep.vacuous;
        top_extra["delta"] = walk.delta;
        all_ok = all_ok && wrep.ok;
        if (wrep.min_slack < worst_slack) {
          worst_slack = wrep.min_slack;
          worst_vertex = wrep.min_slack_vertex;
          worst_kind = "walk";
        }
      }

      if (ver_format == "csv") {
        emit(ver_out, agmon::bound_report_csv(theorem, extras));
      } else {
        nlohmann::json doc = agmon::bound_report_json(theorem, extras);
        doc["min_slack"] = theorem.min_slack;
        doc["min_slack_vertex"] = theorem.min_slack_vertex;
        doc["argmax_vertex"] = theorem.argmax_vertex;
        doc["argmax_allowed"] = theorem.argmax_allowed;
        for (auto& [key, value] : top_extra.items()) doc[key] = value;
        emit(ver_out, doc.dump(2) + "\n");
      }
      if (!all_ok) {
        std::fprintf(stderr, "bound violated: worst slack %s at vertex %d (%s bound)\n",
                     agmon::format_double(worst_slack).c_str(), worst_vertex, worst_kind.c_str());
        return 1;
      }
      return 0;
    }

    if (*rw) {
      auto [g, w] = agmon::load_graph(rw_in);
      const std::vector<agmon::EigenPair> pairs = agmon::load_eigenpairs(rw_pairs);
      const agmon::EigenPair& pair = select_pair(pairs, rw_index, g);
      const agmon::AgmonField field = agmon::agmon_distance(g, w, pair.eigenvalue);
      agmon::require_allowed(field);
      const agmon::WalkBound walk =
          agmon::make_walk_bound(g, w, pair.eigenvalue, rw_samples, rw_seed, rw_step_cap);
      const agmon::BoundReport rep = agmon::verify_walk_bound(g, w, pair, walk, field, rw_tol);

      agmon::ExtraColumns extras;
      extras.push_back({"exact_moment", walk.exact});
      if (rw_samples > 0) {
        extras.push_back({"mc_estimate", walk.mc.estimate});
        extras.push_back({"mc_std_error", walk.mc.std_error});
      }
      std::vector<double> wt(g.n);
      for (int v = 0; v < g.n; ++v) wt[v] = rep.tighter_than_theorem[v];
      extras.push_back({"walk_tighter", std::move(wt)});

      if (rw_format == "csv") {
        emit(rw_out, agmon::bound_report_csv(rep, extras));
      } else {
        nlohmann::json doc = agmon::bound_report_json(rep, extras);
        doc.erase("theorem_bound_ok");
        doc["walk_bound_ok"] = rep.ok;
        doc["walk_vacuous"] = rep.vacuous;
        doc["delta"] = walk.delta;
        doc["sample_count"] = walk.sample_count;
        doc["seed"] = walk.seed;
        emit(rw_out, doc.dump(2) + "\n");
      }
      if (!rep.ok) {
        std::fprintf(stderr, "bound violated: worst slack %s at vertex %d (walk bound)\n",
                     agmon::format_double(rep.min_slack).c_str(), rep.min_slack_vertex);
        return 1;
      }
      return 0;
    }

    if (*tree) {
      const agmon::TreeExperiment exp = agmon::run_tree_experiment(tree_q, tree_k, tree_w);
      const agmon::AgmonField field =
          agmon::agmon_distance(exp.instance.graph, exp.potential, exp.lambda1);
      const agmon::DecayComparison cmp = agmon::compare_decay_rates(exp, field);
      const double resid = agmon::check_level_recurrence(exp);
      emit(tree_out, agmon::tree_record_json(exp, cmp, resid).dump(2) + "\n");
      if (!tree_csv.empty()) agmon::atomic_write(tree_csv, agmon::tree_profile_csv(exp, field));
      return 0;
    }
  } catch (const agmon::error& e) {
    std::fprintf(stderr, "error: [%s] %s\n", agmon::errc_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
