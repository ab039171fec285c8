#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tubular/equitable.hpp"
#include "tubular/error.hpp"
#include "tubular/gpq.hpp"
#include "tubular/graph.hpp"
#include "tubular/treebuild.hpp"
#include "tubular/walls.hpp"
#include "tubular/words.hpp"

namespace tubular::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string format = "json";
  std::size_t expand_limit = kDefaultExpandLimit;
  std::string graph;
  std::string set;
  std::string walls;
  std::string group;
  std::string word;
  long long p = 0;
  long long q = 0;
  std::size_t n_max = 0;
  std::size_t keep = 64;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

TubularGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

HnnPresentation load_group(const std::string& spec) {
  if (spec.rfind("gpq:", 0) == 0) return make_gpq(parse_gpq_spec(spec.substr(4))).presentation;
  return HnnPresentation::from_graph(load_graph(spec));
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void emit(std::ostream& out, const Options& o, const json& doc, const std::string& text) {
  if (o.format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
}

std::string report_text(const char* name, const CheckReport& r) {
  std::string s = std::string(name) + ": " + yes_no(r.ok) + "\n";
  for (const auto& v : r.violations) s += "  " + v.object + ": " + v.message + "\n";
  return s;
}

std::string witness_text(const UndilatedResult& r) {
  if (r.ok) return "";
  std::string s = "witness dilation: " + to_string(r.witness->dilation) + "\nwitness cycle:";
  for (const auto& step : r.witness->cycle)
    s += " " + std::string(step.forward ? "+" : "-") + std::to_string(step.edge);
  return s + "\n";
}

// ---------------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const auto g = load_graph(o.graph);
  const auto s = equitable_set_from_json(read_json(o.set));
  const auto eq = verify_equitable(g, s);
  const auto fo = verify_fortified(g, s);
  const auto pr = verify_primitive(s);
  const auto screen = cubulation_screen(g);
  json doc = {{"graph_hash", graph_hash(g)},
              {"equitable", eq.ok},
              {"fortified", fo.ok},
              {"primitive", pr.ok},
              {"violations", {{"equitable", to_json(eq)}, {"fortified", to_json(fo)}, {"primitive", to_json(pr)}}},
              {"cubulation_screen", std::string(to_string(screen.verdict))}};
  std::string text = report_text("equitable", eq) + report_text("fortified", fo) +
                     report_text("primitive", pr) +
                     "cubulation screen: " + std::string(to_string(screen.verdict)) + "\n";
  bool ok = eq.ok && fo.ok && pr.ok;
  if (!o.walls.empty()) {
    const auto w = wall_graph_from_json(read_json(o.walls));
    const auto valid = validate_walls(w, g, &s);
    const bool propdil = check_propdil(w);
    const auto und = check_undilated(w);
    doc["walls_valid"] = valid.ok;
    doc["violations"]["walls"] = to_json(valid);
    doc["propdil"] = propdil;
    doc["undilated"] = und.ok;
    doc["witness"] = to_json(und)["witness"];
    text += report_text("walls", valid) + "propdil: " + yes_no(propdil) + "\n" +
            "undilated: " + yes_no(und.ok) + "\n" + witness_text(und);
    ok = ok && valid.ok && propdil && und.ok;
  }
  emit(out, o, doc, text);
  return ok ? kOk : kCheckFailed;
}

int cmd_walls_build(const Options& o, std::ostream& out) {
  const auto g = load_graph(o.graph);
  const auto s = equitable_set_from_json(read_json(o.set));
  const auto w = build_walls(g, s, o.expand_limit);
  std::string text = "wall vertices: " + std::to_string(w.vertices().size()) +
                     "\nwall edges: " + std::to_string(w.edges().size()) + "\n";
  emit(out, o, to_json(w), text);
  return kOk;
}

int cmd_walls_check(const Options& o, std::ostream& out) {
  const auto w = wall_graph_from_json(read_json(o.walls));
  const bool propdil = check_propdil(w);
  const auto und = check_undilated(w);
  json doc = {{"propdil", propdil}, {"undilated", und.ok}};
  doc["witness"] = to_json(und)["witness"];
  std::string text = "propdil: " + yes_no(propdil) + "\nundilated: " + yes_no(und.ok) + "\n" +
                     witness_text(und);
  bool ok = propdil && und.ok;
  if (!o.graph.empty()) {
    const auto valid = validate_walls(w, load_graph(o.graph));
    doc["walls_valid"] = valid.ok;
    doc["violations"] = to_json(valid);
    text += report_text("walls", valid);
    ok = ok && valid.ok;
  }
  emit(out, o, doc, text);
  return ok ? kOk : kCheckFailed;
}

int cmd_tree_certify(const Options& o, std::ostream& out) {
  const auto g = load_graph(o.graph);
  const auto cert = certify_virtually_special(g, o.expand_limit);
  const auto& trace = cert.construction.trace;
  std::string text = "graph: " + cert.graph_hash + "\nm: " + std::to_string(trace.m) +
                     "\nbase vertex: " + trace.base_vertex + "\n";
  for (const auto& node : cert.construction.walls.nodes())
    text += "  " + node.vertex + " class " + std::to_string(node.wall_class) + ": " +
            to_string(node.element) + " x" + node.count.str() + "\n";
  text += "equitable: " + yes_no(cert.equitable) + "\nfortified: " + yes_no(cert.fortified) +
          "\nprimitive: " + yes_no(cert.primitive) + "\npropdil: " + yes_no(cert.propdil) +
          "\nundilated: " + yes_no(cert.undilated) + "\ncheck level: " + cert.check_level +
          "\nwall vertices: " + cert.wall_vertices.str() + "\nwall edges: " + cert.wall_edges.str() + "\n";
  for (const auto& p : cert.problems) text += "problem: " + p + "\n";
  text += std::string("status: ") + (cert.all_passed() ? "certified" : "internal-error") + "\n";
  emit(out, o, to_json(cert), text);
  return cert.all_passed() ? kOk : kCheckFailed;
}

int cmd_word(const Options& o, std::ostream& out, bool trivial_only) {
  const auto pres = load_group(o.group);
  const auto w = parse_word(o.word, pres);
  const auto reduced = britton_reduce(w, pres);
  const bool trivial = reduced.empty();
  json doc = {{"input", o.word},
              {"reduced", format_word(reduced)},
              {"stable_letters", reduced.stable_letter_count()},
              {"trivial", trivial}};
  if (trivial_only) {
    emit(out, o, doc, trivial ? "trivial\n" : "nontrivial\n");
    return trivial ? kOk : kCheckFailed;
  }
  emit(out, o, doc, format_word(reduced) + "\n");
  return kOk;
}

GpqSpec spec_of(const Options& o) {
  GpqSpec spec{o.p, o.q};
  validate(spec);
  return spec;
}

int cmd_gpq_analyze(const Options& o, std::ostream& out) {
  const auto spec = spec_of(o);
  const json doc = gpq_report(spec, o.n_max);
  std::string text = "G_{" + spec.p.str() + "," + spec.q.str() + "}\n";
  for (const char* key : {"rf", "hopfian", "cat0"}) {
    text += std::string(key) + ": " + (doc[key].is_string() ? doc[key].get<std::string>() : doc[key].dump()) + "\n";
  }
  text += "witness: " + (doc["witness"].is_null() ? std::string("none") : doc["witness"].get<std::string>()) + "\n";
  for (const auto& n : doc["notes"]) text += "note: " + n.get<std::string>() + "\n";
  emit(out, o, doc, text);
  return kOk;
}

int cmd_gpq_quotients(const Options& o, std::ostream& out) {
  const auto spec = spec_of(o);
  const auto search = finite_quotient_search(spec, o.n_max, o.keep);
  json doc = to_json(search);
  doc["p"] = int_to_json(spec.p);
  doc["q"] = int_to_json(spec.q);
  std::string text;
  for (std::size_t n = 0; n < search.counts.size(); ++n)
    text += "S_" + std::to_string(n + 1) + ": " + std::to_string(search.counts[n]) + " homomorphisms\n";
  if (search.witness) {
    text += "witness: " + format_word(*search.witness) + "\n";
    text += "witness survives in " + std::to_string(search.witness_nonidentity) + " of them\n";
  }
  emit(out, o, doc, text);
  return search.witness_nonidentity == 0 ? kOk : kCheckFailed;
}

std::size_t default_expand_limit() {
  const char* env = std::getenv("TUBULAR_EXPAND_LIMIT");
  if (env == nullptr || *env == '\0') return kDefaultExpandLimit;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw InputError(std::string("TUBULAR_EXPAND_LIMIT is not a number: \"") + env + "\"");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certificates and witnesses for tubular groups", "tubular"};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--expand-limit", o.expand_limit,
                    "Most wall vertices/edges to materialize (env TUBULAR_EXPAND_LIMIT)");
  };

  auto* verify = app.add_subcommand("verify", "Check an equitable set (and optionally walls)");
  verify->add_option("--graph,--input", o.graph, "Graph JSON")->required();
  verify->add_option("--set", o.set, "Equitable set JSON")->required();
  verify->add_option("--walls", o.walls, "Wall graph JSON");
  add_common(verify);

  auto* wbuild = app.add_subcommand("walls-build", "Build the wall graph of an equitable set");
  wbuild->add_option("--graph,--input", o.graph, "Graph JSON")->required();
  wbuild->add_option("--set", o.set, "Equitable set JSON")->required();
  add_common(wbuild);
  add_limit(wbuild);

  auto* wcheck = app.add_subcommand("walls-check", "Check a wall graph for dilation");
  wcheck->add_option("--walls,--input", o.walls, "Wall graph JSON")->required();
  wcheck->add_option("--graph", o.graph, "Graph JSON to validate the projection against");
  add_common(wcheck);

  auto* certify = app.add_subcommand("tree-certify", "Construct and certify walls for a tree");
  certify->add_option("--input,--graph", o.graph, "Graph JSON")->required();
  add_common(certify);
  add_limit(certify);

  auto* reduce = app.add_subcommand("word-reduce", "Britton-reduce a word");
  auto* trivial = app.add_subcommand("word-trivial", "Decide whether a word is trivial");
  for (auto* sub : {reduce, trivial}) {
    sub->add_option("--group", o.group, "gpq:P,Q or a one-vertex graph JSON")->required();
    sub->add_option("--word", o.word, "Word, e.g. \"[s^-1 a s, a b^-1]\"")->required();
    add_common(sub);
  }

  auto* analyze = app.add_subcommand("gpq-analyze", "Classify G_{p,q}");
  auto* quotients = app.add_subcommand("gpq-quotients", "Search homomorphisms G_{p,q} -> S_n");
  for (auto* sub : {analyze, quotients}) {
    sub->add_option("--p", o.p, "p (nonzero)")->required();
    sub->add_option("--q", o.q, "q (nonzero)")->required();
    add_common(sub);
  }
  analyze->add_option("--n-max", o.n_max, "Also search S_1..S_n (0 skips)")
      ->check(CLI::Range(std::size_t{0}, kMaxQuotientDegree));
  quotients->add_option("--n-max", o.n_max, "Largest degree")
      ->required()
      ->check(CLI::Range(std::size_t{1}, kMaxQuotientDegree));
  quotients->add_option("--keep", o.keep, "Homomorphisms to list");

  try {
    o.expand_limit = default_expand_limit();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*wbuild) return cmd_walls_build(o, out);
    if (*wcheck) return cmd_walls_check(o, out);
    if (*certify) return cmd_tree_certify(o, out);
    if (*reduce) return cmd_word(o, out, false);
    if (*trivial) return cmd_word(o, out, true);
    if (*analyze) return cmd_gpq_analyze(o, out);
    if (*quotients) return cmd_gpq_quotients(o, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace tubular::cli
