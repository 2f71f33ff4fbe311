#ifndef GTOWER_CLI_APP_HPP
#define GTOWER_CLI_APP_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtower/group_spec.hpp"
#include "gtower/report.hpp"
#include "gtower/serialize.hpp"
#include "gtower/towers.hpp"
#include "gtower/verify.hpp"

namespace gtower::cli {

/// Exit code contract: 0 pass, 1 verification failure, 2 usage/spec error,
/// 3 resource cap.
enum ExitCode { kPass = 0, kVerificationFailure = 1, kUsageError = 2, kResourceCap = 3 };

struct Options {
  bool json = false;
  std::string out_path;
  std::string record_fixture_dir;
  std::string fixtures_dir;
  int step_cap = 10;
  std::uint64_t size_cap = kDefaultTableCap;
  std::uint64_t node_budget = 100'000'000;
  std::uint32_t seed = 12345;
  bool override_n6 = false;

  TowerOptions tower() const {
    TowerOptions t;
    t.step_cap = step_cap;
    t.size_cap = size_cap;
    t.search = search();
    return t;
  }
  SearchOptions search() const {
    SearchOptions s;
    s.node_budget = node_budget;
    s.seed = seed;
    return s;
  }
  NormalizerOptions normalizer() const {
    NormalizerOptions n;
    n.node_budget = node_budget;
    return n;
  }
};

namespace detail {

inline std::string params_slug(const json& params) {
  std::string slug;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!slug.empty()) slug += "_";
    std::string v = it.value().dump();
    std::string clean;
    for (char c : v)
      if (isalnum(static_cast<unsigned char>(c))) clean += c;
    slug += it.key() + "-" + clean;
  }
  return slug.empty() ? "default" : slug;
}

inline void apply_fixtures(Report& rep, const Options& opt) {
  namespace fs = std::filesystem;
  if (!opt.record_fixture_dir.empty()) {
    fs::path dir = fs::path(opt.record_fixture_dir) / rep.suite;
    fs::create_directories(dir);
    json j = rep.to_json();
    j.erase("wall_time_ms");  // keep fixture files byte-stable across runs
    std::ofstream f(dir / (params_slug(rep.parameters) + ".json"));
    f << j.dump(2) << "\n";
  }
  if (!opt.fixtures_dir.empty()) {
    fs::path file =
        fs::path(opt.fixtures_dir) / rep.suite / (params_slug(rep.parameters) + ".json");
    if (!fs::exists(file)) {
      rep.payload["fixture"] = "missing";
      return;
    }
    std::ifstream f(file);
    json recorded = json::parse(f, nullptr, /*allow_exceptions=*/false);
    bool match = recorded.is_object() && recorded.contains("digest") &&
                 recorded["digest"] == rep.digest();
    rep.payload["fixture"] = match ? "match" : "mismatch";
    if (!match) rep.passed = false;
  }
}

inline void render_text(const Report& rep, std::ostream& out) {
  out << (rep.passed ? "[PASS] " : "[FAIL] ") << rep.suite;
  if (!rep.parameters.empty()) out << " " << rep.parameters.dump();
  out << "  (" << rep.wall_time_ms << " ms)\n";
  out << rep.payload.dump(2) << "\n";
}

inline int emit(std::vector<Report>& reports, const Options& opt, std::ostream& out) {
  for (auto& rep : reports) apply_fixtures(rep, opt);
  std::string text;
  if (opt.json) {
    if (reports.size() == 1) {
      text = reports[0].to_json().dump(2) + "\n";
    } else {
      json arr = json::array();
      for (const auto& rep : reports) arr.push_back(rep.to_json());
      text = arr.dump(2) + "\n";
    }
  } else {
    std::ostringstream os;
    for (const auto& rep : reports) render_text(rep, os);
    text = os.str();
  }
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path);
    f << text;
  } else {
    out << text;
  }
  for (const auto& rep : reports)
    if (!rep.passed) return kVerificationFailure;
  return kPass;
}

inline Report tower_report(const std::string& spec_text, const Options& opt) {
  Stopwatch timer;
  Report rep;
  rep.suite = "tower";
  rep.parameters = {{"spec", spec_text}, {"step_cap", opt.step_cap}, {"size_cap", opt.size_cap}};
  auto rec = automorphism_tower(group_from_text(spec_text), opt.tower());
  rep.payload["tau"] = rec.tau;
  rep.payload["termination"] = to_string(rec.termination);
  rep.payload["tau_is_exact"] = rec.termination == TowerTermination::complete_level;
  json levels = json::array();
  for (const auto& info : rec.info)
    levels.push_back(json{{"order", info.order},
                          {"degree", info.degree},
                          {"centreless", info.centreless},
                          {"complete", info.complete}});
  rep.payload["levels"] = levels;
  json embeddings = json::array();
  for (const auto& emb : rec.embeddings) embeddings.push_back(hom_to_json(emb));
  rep.payload["embeddings"] = embeddings;
  rep.passed = rec.termination == TowerTermination::complete_level;
  rep.wall_time_ms = timer.ms();
  return rep;
}

inline Report ntower_report(const std::string& h_text, const std::string& g_text,
                            const Options& opt) {
  Stopwatch timer;
  Report rep;
  rep.suite = "ntower";
  rep.parameters = {{"H", h_text}, {"G", g_text}};
  auto h = group_from_text(h_text);
  auto g = group_from_text(g_text);
  auto rec = normaliser_tower(h, g, opt.normalizer());
  rep.payload["height"] = rec.height;
  rep.payload["terminated_at_full"] = rec.terminated_at_full;
  json levels = json::array();
  for (const auto& level : rec.levels) levels.push_back(group_to_json(level));
  rep.payload["levels"] = levels;
  rep.passed = true;
  rep.wall_time_ms = timer.ms();
  return rep;
}

inline Report tau_report(const std::string& spec_text, const Options& opt) {
  Stopwatch timer;
  Report rep;
  rep.suite = "tau";
  rep.parameters = {{"spec", spec_text}};
  auto rec = automorphism_tower(group_from_text(spec_text), opt.tower());
  rep.payload["tau"] = rec.tau;
  rep.payload["tau_is_exact"] = rec.termination == TowerTermination::complete_level;
  rep.payload["termination"] = to_string(rec.termination);
  rep.passed = rec.termination == TowerTermination::complete_level;
  rep.wall_time_ms = timer.ms();
  return rep;
}

inline Report realize_report(const std::string& spec_text, bool check, const Options& opt) {
  Stopwatch timer;
  Report rep;
  rep.suite = "realize_graph";
  rep.parameters = {{"spec", spec_text}};
  auto g = group_from_text(spec_text);
  auto graph = realize(g);
  rep.payload["vertex_count"] = graph.vertex_count;
  rep.payload["edge_count"] = graph.edges.size();
  rep.payload["edge_list"] = to_edge_list(graph);
  rep.passed = true;
  if (check) {
    auto result = verify_realization(g, graph, opt.search());
    rep.payload["graph_aut_order"] = result.graph_aut_order;
    rep.payload["verified"] = result.passed;
    rep.passed = result.passed;
  }
  rep.wall_time_ms = timer.ms();
  return rep;
}

inline Report bench_report(const Options& opt) {
  Report rep;
  rep.suite = "bench";
  Stopwatch total;
  json ops = json::array();
  auto time_op = [&](const std::string& name, auto&& fn) {
    Stopwatch t;
    auto result = fn();
    double ms = t.ms();
    ops.push_back(json{{"name", name}, {"result", result}});
    rep.timings[name] = ms;
  };
  time_op("schreier_sims_sym8", [] { return sym(8).order(); });
  time_op("wreath3_normaliser_tower", [&] {
    auto t = wreath_tower(3);
    return normaliser_tower(t.bottom(), t.top(), opt.normalizer()).height;
  });
  time_op("aut_pgl2_q4", [&] {
    return automorphism_group(to_table(pgl2(FiniteField(2, 2))), opt.search()).autos.order();
  });
  time_op("graph_aut_realized_sym3", [&] {
    return graph_automorphisms(realize(sym(3)), opt.search()).order();
  });
  rep.payload["ops"] = ops;
  rep.passed = true;
  rep.wall_time_ms = total.ms();
  return rep;
}

inline std::vector<Report> verify_all(const Options& opt) {
  std::vector<Report> reports;
  for (int n = 1; n <= 3; ++n) reports.push_back(verify_wreath_tower(n, opt.normalizer()));
  for (auto [p, k, h] : {std::tuple{2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {2, 3, 3}, {3, 2, 1}, {3, 2, 2}})
    reports.push_back(verify_psl_correspondence(p, k, h, opt.tower()));
  reports.push_back(verify_remark_incompatibility(4, 0, 2, opt.search()));
  reports.push_back(verify_alt_incompatibility(3, 4, opt.search()));
  reports.push_back(verify_product_tower(dihedral(5), 5, false, opt.tower()));
  for (const char* spec : {"cyclic 1", "cyclic 2", "cyclic 3", "cyclic 6", "sym 3",
                           "product (cyclic 2) (cyclic 2)", "dihedral 4"})
    reports.push_back(verify_realize_suite(group_from_text(spec), spec, opt.search()));
  {
    auto q8 = regular_rep(quaternion_table());
    reports.push_back(verify_realize_suite(q8, "quaternion8", opt.search()));
  }
  std::stable_sort(reports.begin(), reports.end(), [](const Report& a, const Report& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.parameters.dump() < b.parameters.dump();
  });
  return reports;
}

}  // namespace detail

/// Command-line driver, factored out of main() for tests.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gtower: finite automorphism/normaliser tower engine"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "emit machine-readable JSON");
  app.add_option("--out", opt.out_path, "write the report to a file");
  app.add_option("--step-cap", opt.step_cap, "automorphism tower step cap");
  app.add_option("--size-cap", opt.size_cap, "per-level group order cap");
  app.add_option("--node-budget", opt.node_budget, "backtracking node budget");
  app.add_option("--seed", opt.seed, "seed for sampled self-checks");
  app.add_flag("--override-n6", opt.override_n6, "allow the n = 6 product-tower probe");
  app.add_option("--record-fixture", opt.record_fixture_dir, "write fixtures to this directory");
  app.add_option("--fixtures", opt.fixtures_dir, "compare against recorded fixtures");

  std::string spec_a, spec_b;
  int arg_n = 0, arg_i = 0, arg_j = 0, arg_p = 0, arg_k = 0, arg_h = 0;
  bool realize_check = false;

  auto* tower_cmd = app.add_subcommand("tower", "automorphism tower of a group");
  tower_cmd->add_option("spec", spec_a, "group spec")->required();
  auto* ntower_cmd = app.add_subcommand("ntower", "normaliser tower of H in G");
  ntower_cmd->add_option("H", spec_a, "subgroup spec")->required();
  ntower_cmd->add_option("G", spec_b, "ambient group spec")->required();
  auto* tau_cmd = app.add_subcommand("tau", "tower height of a group");
  tau_cmd->add_option("spec", spec_a, "group spec")->required();
  auto* realize_cmd = app.add_subcommand("realize", "graph with the prescribed automorphism group");
  realize_cmd->add_option("spec", spec_a, "group spec")->required();
  realize_cmd->add_flag("--check", realize_check, "verify the realization");
  auto* bench_cmd = app.add_subcommand("bench", "time representative kernels");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->require_subcommand(1);
  verify_cmd->fallthrough();
  auto* v_wreath = verify_cmd->add_subcommand("wreath", "wreath-tower heights");
  v_wreath->add_option("n", arg_n, "tower height parameter")->required();
  auto* v_psl = verify_cmd->add_subcommand("psl", "PGL tower correspondence");
  v_psl->add_option("p", arg_p, "field characteristic")->required();
  v_psl->add_option("k", arg_k, "extension degree")->required();
  v_psl->add_option("galois_order", arg_h, "order of the Galois subgroup H")->required();
  auto* v_remark = verify_cmd->add_subcommand("remark", "wreath compatibility failure");
  v_remark->add_option("n", arg_n)->required();
  v_remark->add_option("i", arg_i)->required();
  v_remark->add_option("j", arg_j)->required();
  auto* v_alt = verify_cmd->add_subcommand("altexample", "alternating-group incompatibility");
  v_alt->add_option("i", arg_i)->required();
  v_alt->add_option("j", arg_j)->required();
  auto* v_product = verify_cmd->add_subcommand("product", "product-tower finite analog");
  v_product->add_option("H", spec_a, "factor group spec")->required();
  v_product->add_option("n", arg_n, "alternating degree")->required();
  auto* v_realize = verify_cmd->add_subcommand("realize", "graph realization check");
  v_realize->add_option("spec", spec_a, "group spec")->required();
  auto* v_all = verify_cmd->add_subcommand("all", "the whole verification corpus");

  try {
    std::vector<const char*> argv;
    argv.push_back("gtower");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }

  try {
    std::vector<Report> reports;
    if (tower_cmd->parsed()) reports.push_back(detail::tower_report(spec_a, opt));
    if (ntower_cmd->parsed()) reports.push_back(detail::ntower_report(spec_a, spec_b, opt));
    if (tau_cmd->parsed()) reports.push_back(detail::tau_report(spec_a, opt));
    if (realize_cmd->parsed()) reports.push_back(detail::realize_report(spec_a, realize_check, opt));
    if (bench_cmd->parsed()) reports.push_back(detail::bench_report(opt));
    if (verify_cmd->parsed()) {
      if (v_wreath->parsed()) reports.push_back(verify_wreath_tower(arg_n, opt.normalizer()));
      if (v_psl->parsed())
        reports.push_back(verify_psl_correspondence(arg_p, arg_k, arg_h, opt.tower()));
      if (v_remark->parsed())
        reports.push_back(verify_remark_incompatibility(arg_n, arg_i, arg_j, opt.search()));
      if (v_alt->parsed()) reports.push_back(verify_alt_incompatibility(arg_i, arg_j, opt.search()));
      if (v_product->parsed())
        reports.push_back(
            verify_product_tower(group_from_text(spec_a), arg_n, opt.override_n6, opt.tower()));
      if (v_realize->parsed())
        reports.push_back(verify_realize_suite(group_from_text(spec_a), spec_a, opt.search()));
      if (v_all->parsed()) reports = detail::verify_all(opt);
    }
    return detail::emit(reports, opt, out);
  } catch (const spec_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const cap_error& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  }
}

}  // namespace gtower::cli

#endif  // GTOWER_CLI_APP_HPP
