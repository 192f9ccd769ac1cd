#pragma once

// Command-line front end. `run` takes the arguments after the program name and
// returns the exit status with captured output, so the tool and the tests share
// one code path.
//
// Exit status: 0 = decided/constructed, 1 = decided "does not exist" (or a
// failed verification), 2 = input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pforest/connectivity.hpp"
#include "pforest/dot.hpp"
#include "pforest/forest.hpp"
#include "pforest/gadget.hpp"
#include "pforest/graph.hpp"
#include "pforest/hardness.hpp"
#include "pforest/json.hpp"
#include "pforest/matching.hpp"
#include "pforest/oracle.hpp"
#include "pforest/transform.hpp"

namespace pforest::cli {

inline constexpr int kExitFound = 0;
inline constexpr int kExitNotFound = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCliSchema = "pforest.cli/1";

struct CommandOutcome {
  int exit_code = kExitFound;
  std::string out;
  std::string err;
};

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

inline ForestKind kind_from(const std::string& name) {
  auto k = parse_forest_kind(name);
  if (!k) throw UsageError("unknown kind '" + name + "' (perfect|almost-perfect|weak-perfect|even)");
  return *k;
}

struct Output {
  bool json = false;
  bool dot = false;
};

inline nlohmann::json envelope(const std::string& command) {
  return {{"schema", kCliSchema}, {"command", command}};
}

// Shared printer for commands that end in a forest (or its absence).
inline CommandOutcome report_forest(const std::string& command, const Output& o, const Digraph& d, ForestKind kind,
                                    const std::optional<OutForest>& f, const std::string& out_path = {}) {
  CommandOutcome res;
  const std::string label = std::string(to_string(kind)) + " out-forest";
  if (!f) {
    res.exit_code = kExitNotFound;
    if (o.json) {
      auto j = envelope(command);
      j["kind"] = to_string(kind);
      j["exists"] = false;
      res.out = j.dump(2) + "\n";
    } else {
      res.out = "no " + label + "\n";
    }
    return res;
  }
  std::string body;
  if (o.json) {
    auto j = envelope(command);
    j["kind"] = to_string(kind);
    j["exists"] = true;
    j["forest"] = to_json(*f);
    body = j.dump(2) + "\n";
  } else if (o.dot) {
    body = to_dot(d, &*f);
  } else {
    body = "# " + label + "\n" + to_forest_text(*f);
  }
  if (out_path.empty()) {
    res.out = body;
  } else {
    write_text(out_path, body);
    res.out = label + " written to " + out_path + "\n";
  }
  return res;
}

inline void warn_if_disconnected(const Digraph& d, std::string& err) {
  if (classify(d) == ConnectivityClass::Disconnected) err += "warning: input digraph is disconnected\n";
}

}  // namespace detail

inline CommandOutcome run(const std::vector<std::string>& args) {
  using namespace detail;

  CLI::App app{"Decide and construct perfect-forest generalizations in digraphs", "pforest"};
  app.require_subcommand(1);

  std::string input;
  std::string second_input;
  std::string kind_name;
  std::string out_path;
  std::string sidecar_path;
  bool use_oracle = false;
  Output o;
  OracleBudget budget;
  std::uint64_t timeout_ms = 0;

  auto add_output_flags = [&](CLI::App* sub, bool with_dot) {
    sub->add_flag("--json", o.json, "Machine-readable JSON output");
    if (with_dot) sub->add_flag("--dot", o.dot, "Graphviz DOT output");
  };
  auto add_budget_flags = [&](CLI::App* sub) {
    sub->add_option("--max-vertices", budget.max_vertices, "Oracle vertex limit")->capture_default_str();
    sub->add_option("--max-states", budget.max_states, "Oracle enumeration state limit")->capture_default_str();
    sub->add_option("--timeout-ms", timeout_ms, "Oracle time limit in milliseconds (0 = none)");
    sub->add_option("--workers", budget.workers, "Oracle worker threads")->capture_default_str();
  };

  auto* classify_cmd = app.add_subcommand("classify", "Print the connectivity class of a digraph");
  classify_cmd->add_option("digraph", input, "Digraph edge-list file ('-' for stdin)")->required();
  add_output_flags(classify_cmd, false);

  auto* decide_cmd = app.add_subcommand("decide", "Decide whether an out-forest of the given kind exists");
  decide_cmd->add_option("--kind", kind_name, "perfect|almost-perfect|weak-perfect|even")->required();
  decide_cmd->add_flag("--oracle", use_oracle, "Use exhaustive search (required for 'perfect')");
  decide_cmd->add_option("digraph", input, "Digraph edge-list file")->required();
  add_output_flags(decide_cmd, true);
  add_budget_flags(decide_cmd);

  auto* construct_cmd = app.add_subcommand("construct", "Construct an out-forest and emit it as a forest file");
  construct_cmd->add_option("--kind", kind_name, "almost-perfect|weak-perfect|even")->default_val("almost-perfect");
  construct_cmd->add_option("-o,--output", out_path, "Write the forest here instead of stdout");
  construct_cmd->add_option("digraph", input, "Digraph edge-list file")->required();
  add_output_flags(construct_cmd, true);

  auto* verify_cmd = app.add_subcommand("verify", "Check a forest file against a digraph");
  verify_cmd->add_option("--kind", kind_name, "perfect|almost-perfect|weak-perfect|even")->required();
  verify_cmd->add_option("digraph", input, "Digraph edge-list file")->required();
  verify_cmd->add_option("forest", second_input, "Forest file")->required();
  add_output_flags(verify_cmd, false);

  auto* gadget_cmd = app.add_subcommand("gadget", "Emit the matching gadget graph of an even-order digraph");
  gadget_cmd->add_option("digraph", input, "Digraph edge-list file")->required();
  gadget_cmd->add_option("-o,--output", out_path, "Write the gadget edge list here instead of stdout");
  gadget_cmd->add_option("--correspondence", sidecar_path, "Write the block correspondence sidecar here");
  add_output_flags(gadget_cmd, true);

  auto* match_cmd = app.add_subcommand("match", "Maximum matching of an undirected graph");
  match_cmd->add_option("graph", input, "Undirected edge-list file")->required();
  add_output_flags(match_cmd, true);

  auto* reduce_cmd = app.add_subcommand("reduce-3dm", "Reduce a 3-dimensional matching instance to a digraph");
  reduce_cmd->add_option("instance", input, "3DM instance file")->required();
  reduce_cmd->add_option("-o,--output", out_path, "Write the digraph edge list here instead of stdout");
  reduce_cmd->add_option("--map", sidecar_path, "Write the reduction map sidecar here");
  add_output_flags(reduce_cmd, true);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search for an out-forest of the given kind");
  oracle_cmd->add_option("--kind", kind_name, "perfect|almost-perfect|weak-perfect|even")->required();
  oracle_cmd->add_option("digraph", input, "Digraph edge-list file")->required();
  add_output_flags(oracle_cmd, true);
  add_budget_flags(oracle_cmd);

  auto* scott_cmd = app.add_subcommand("scott", "Perfect forest of a connected even-order undirected graph");
  scott_cmd->add_option("graph", input, "Undirected edge-list file")->required();
  add_output_flags(scott_cmd, true);

  CommandOutcome res;
  std::ostringstream cli_out;
  std::ostringstream cli_err;
  try {
    std::vector<const char*> argv{"pforest"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, cli_out, cli_err);
    res.exit_code = code == 0 ? kExitFound : kExitUsage;
    res.out = cli_out.str();
    res.err = cli_err.str();
    return res;
  }
  budget.time_limit = std::chrono::milliseconds(timeout_ms);

  try {
    if (classify_cmd->parsed()) {
      Digraph d = parse_digraph(read_text(input));
      ConnectivityClass c = classify(d);
      if (o.json) {
        auto j = envelope("classify");
        j["class"] = to_string(c);
        j["n"] = d.order();
        j["arcs"] = d.arc_count();
        res.out = j.dump(2) + "\n";
      } else {
        res.out = std::string(to_string(c)) + "\n";
      }
      return res;
    }

    if (decide_cmd->parsed()) {
      ForestKind kind = kind_from(kind_name);
      Digraph d = parse_digraph(read_text(input));
      if (kind == ForestKind::Perfect && !use_oracle) {
        res.exit_code = kExitUsage;
        res.err = "perfect out-forest decision is NP-hard; rerun with --oracle\n";
        return res;
      }
      std::string warnings;
      warn_if_disconnected(d, warnings);
      std::optional<OutForest> f;
      if (use_oracle) {
        f = oracle_forest(d, kind, budget);
      } else {
        f = decide_weak(d);
        if (f && kind == ForestKind::AlmostPerfect) f = weak_to_almost(d, *f);
      }
      res = report_forest("decide", o, d, kind, f);
      res.err = warnings + res.err;
      return res;
    }

    if (construct_cmd->parsed()) {
      ForestKind kind = kind_from(kind_name);
      if (kind == ForestKind::Perfect) {
        res.exit_code = kExitUsage;
        res.err = "no polynomial construction for perfect out-forests; use 'oracle --kind perfect'\n";
        return res;
      }
      Digraph d = parse_digraph(read_text(input));
      std::string warnings;
      warn_if_disconnected(d, warnings);
      std::optional<OutForest> f;
      ConnectivityClass c = classify(d);
      if (c == ConnectivityClass::StronglyConnectedEven || c == ConnectivityClass::SingleInitialEven) {
        OutTree tree = spanning_out_tree(d, *find_universal_root(d));
        if (kind == ForestKind::Even) {
          f = OutForest::from_tree(tree);
        } else if (kind == ForestKind::WeakPerfect) {
          f = even_tree_to_weak(tree);
        } else {
          f = weak_to_almost(d, even_tree_to_weak(tree));
        }
      } else {
        f = decide_weak(d);
        if (f && kind == ForestKind::AlmostPerfect) f = weak_to_almost(d, *f);
      }
      res = report_forest("construct", o, d, kind, f, out_path);
      res.err = warnings + res.err;
      return res;
    }

    if (verify_cmd->parsed()) {
      ForestKind kind = kind_from(kind_name);
      Digraph d = parse_digraph(read_text(input));
      OutForest f = parse_forest(read_text(second_input));
      VerificationReport r = verify(d, f, kind);
      if (o.json) {
        res.out = to_json(r).dump(2) + "\n";
      } else {
        std::ostringstream out;
        out << (r.passed() ? "pass" : "fail") << ": " << to_string(kind) << " out-forest\n";
        for (const Violation& v : r.violations) {
          out << "  " << v.rule;
          for (Vertex x : v.vertices) out << ' ' << x;
          for (const Arc& a : v.arcs) out << ' ' << a;
          out << '\n';
        }
        res.out = out.str();
      }
      res.exit_code = r.passed() ? kExitFound : kExitNotFound;
      return res;
    }

    if (gadget_cmd->parsed()) {
      Digraph d = parse_digraph(read_text(input));
      Gadget g = build_gadget(d);
      std::string body;
      if (o.json) {
        auto j = envelope("gadget");
        j["n"] = g.graph.order();
        j["edges"] = edges_to_json(g.graph.edges());
        auto blocks = nlohmann::json::array();
        for (Vertex u = 0; u < d.order(); ++u) {
          const GadgetBlock& b = g.correspondence.block(u);
          blocks.push_back({{"vertex", u}, {"start", b.start}, {"length", b.length}, {"y", b.y},
                            {"pairs", edges_to_json(b.internal_pairs)}});
        }
        j["blocks"] = blocks;
        body = j.dump(2) + "\n";
      } else if (o.dot) {
        body = to_dot(g.graph);
      } else {
        body = to_edge_list(g.graph);
      }
      if (!sidecar_path.empty()) write_text(sidecar_path, to_correspondence_text(g.correspondence));
      if (out_path.empty()) {
        res.out = body;
      } else {
        write_text(out_path, body);
      }
      return res;
    }

    if (match_cmd->parsed()) {
      UGraph g = parse_ugraph(read_text(input));
      Matching m = maximum_matching(g);
      if (o.json) {
        auto j = envelope("match");
        j["size"] = m.size();
        j["perfect"] = m.is_perfect();
        j["edges"] = edges_to_json(m.edges());
        res.out = j.dump(2) + "\n";
      } else if (o.dot) {
        res.out = to_dot(g, m.edges());
      } else {
        std::ostringstream out;
        out << "# maximum matching: size " << m.size() << (m.is_perfect() ? " (perfect)" : "") << '\n';
        for (const Edge& e : m.edges()) out << e.u << ' ' << e.v << '\n';
        res.out = out.str();
      }
      return res;
    }

    if (reduce_cmd->parsed()) {
      ThreeDMInstance inst = parse_3dm(read_text(input));
      Reduction r = reduce_3dm(inst);
      if (r.degenerate) res.err = "warning: m == k, X is empty and the digraph may not be strongly connected\n";
      std::string body;
      if (o.json) {
        auto j = envelope("reduce-3dm");
        j["n"] = r.digraph.order();
        j["arcs"] = arcs_to_json(r.digraph.arcs());
        j["degenerate"] = r.degenerate;
        j["map"] = {{"k", r.map.k}, {"m", r.map.m}, {"x_start", 0}, {"y_start", r.map.y(0)},
                    {"class_start", r.map.class_vertex(0, 0)}};
        body = j.dump(2) + "\n";
      } else if (o.dot) {
        body = to_dot(r.digraph);
      } else {
        body = to_edge_list(r.digraph);
      }
      if (!sidecar_path.empty()) write_text(sidecar_path, to_reduction_map_text(r));
      if (out_path.empty()) {
        res.out = body;
      } else {
        write_text(out_path, body);
      }
      return res;
    }

    if (oracle_cmd->parsed()) {
      ForestKind kind = kind_from(kind_name);
      Digraph d = parse_digraph(read_text(input));
      return report_forest("oracle", o, d, kind, oracle_forest(d, kind, budget));
    }

    if (scott_cmd->parsed()) {
      UGraph g = parse_ugraph(read_text(input));
      auto edges = perfect_forest_undirected(g);
      if (!edges) {
        res.exit_code = kExitNotFound;
        if (o.json) {
          auto j = envelope("scott");
          j["exists"] = false;
          res.out = j.dump(2) + "\n";
        } else {
          res.out = "no perfect forest (graph is disconnected or of odd order)\n";
        }
        return res;
      }
      if (o.json) {
        auto j = envelope("scott");
        j["exists"] = true;
        j["edges"] = edges_to_json(*edges);
        res.out = j.dump(2) + "\n";
      } else if (o.dot) {
        res.out = to_dot(g, *edges);
      } else {
        std::ostringstream out;
        out << "# perfect forest: " << edges->size() << " edges\n";
        for (const Edge& e : *edges) out << e.u << ' ' << e.v << '\n';
        res.out = out.str();
      }
      return res;
    }
  } catch (const UsageError& e) {
    res.exit_code = kExitUsage;
    res.err += std::string("error: ") + e.what() + "\n";
    return res;
  } catch (const Error& e) {
    res.exit_code = kExitUsage;
    res.err += std::string("error: ") + e.what() + "\n";
    return res;
  }
  res.exit_code = kExitUsage;
  res.err = "no subcommand given\n";
  return res;
}

}  // namespace pforest::cli
