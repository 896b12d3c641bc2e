#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kforge/error.hpp"
#include "kforge/json_io.hpp"
#include "kforge/ktheory.hpp"
#include "kforge/normal_form.hpp"

using namespace kforge;
using io::Json;

namespace {

struct Output {
  Json report;
  int code = 0;
  std::optional<Graph> graph;  // for --dot
  VertexSet highlight;
};

struct Globals {
  bool pretty = false;
  std::string dot;
  std::string out;
  unsigned long seed = 0;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

Json load(const std::string& arg) {
  // inline JSON is accepted wherever a file is
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return io::parse(arg, "argument");
  return io::read_file(arg);
}

Graph graph_of(const Json& j) { return io::graph_from_json(j.contains("graph") ? j["graph"] : j); }

VertexSet vertex_set(const Graph& e, const Json& labels, const std::string& where) {
  if (!labels.is_array()) invalid(where + ": expected an array of vertex labels");
  VertexSet s(e.size());
  for (const auto& l : labels) {
    if (!l.is_string()) invalid(where + ": expected vertex labels");
    auto v = e.find(l.get<std::string>());
    if (!v) invalid(where + ": unknown vertex \"" + l.get<std::string>() + "\"");
    s.insert(*v);
  }
  return s;
}

Json labels_of(const Graph& e, const VertexSet& s) {
  Json out = Json::array();
  for (auto v : s.members()) out.push_back(e.label(v));
  return out;
}

// "v,w" or a JSON array
Json label_list(const std::string& arg) {
  if (!arg.empty() && arg.front() == '[') return io::parse(arg, "--ideal");
  Json out = Json::array();
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json structure_json(const Graph& e) {
  StructureFlags f = structure_flags(e);
  return Json{{"transitive", f.transitive},
              {"has_cycle", f.has_cycle},
              {"condition_k", f.condition_k},
              {"left_adhesive", f.left.has_value()},
              {"right_adhesive", f.right.has_value()}};
}

Json graph_summary(const Graph& e) {
  Json singular = Json::array();
  for (auto v : e.singular_vertices()) singular.push_back(e.label(v));
  return Json{{"vertices", e.size()}, {"regular", e.regular_vertices().size()}, {"singular", singular}};
}

bool is_zero_map(const Homomorphism& h) {
  std::size_t n = h.domain().ambient_rank();
  for (std::size_t c = 0; c < n; ++c)
    if (!h.codomain().is_zero(h(unit_vector(n, c)))) return false;
  return true;
}

Output compute(const Graph& e, const std::optional<Json>& ideal) {
  KPair k = k_groups(e);
  Output o;
  o.report = Json{{"graph", graph_summary(e)},
                  {"k0", io::to_json(k.k0.canonical())},
                  {"k1_rank", k.k1_rank()},
                  {"unit", io::to_json(unit_class(e).canonical)},
                  {"rank_identity", rank_identity(e)},
                  {"structure", structure_json(e)}};
  if (!o.report["rank_identity"].get<bool>()) o.code = 1;
  o.graph = e;
  o.highlight = VertexSet(e.size());
  if (ideal) {
    VertexSet h = vertex_set(e, *ideal, "--ideal");
    SubsetAnalysis an = analyze_subset(e, h);
    Json six{{"ideal", labels_of(e, h)},
             {"hereditary", an.hereditary},
             {"saturated", an.saturated},
             {"breaking", labels_of(e, an.breaking)}};
    SixTermResult st = six_term(e, h);
    ExactnessReport ex = check_exact(st.seq);
    Json failing = Json::array();
    for (auto n : ex.failing) failing.push_back(std::string(node_name(n)));
    six["exact"] = ex.exact();
    six["failing"] = failing;
    six["del0_zero"] = is_zero_map(st.seq.del0());
    six["sequence"] = io::to_json(st.seq);
    o.report["six_term"] = six;
    o.highlight = h;
    if (!ex.exact()) o.code = 1;
  }
  return o;
}

RealizationRequest request_from_json(const Json& j) {
  RealizationRequest req;
  if (!j.contains("group")) invalid("request: missing \"group\"");
  const Json& g = j["group"];
  if (g.contains("relations")) {
    req.group = io::group_from_json(g).canonical();
  } else {
    IntVector torsion = g.contains("torsion") ? io::vector_from_json(g["torsion"]) : IntVector{};
    std::size_t rank = g.contains("rank") ? g["rank"].get<std::size_t>() : 0;
    try {
      req.group = FgaGroup::make(torsion, rank);
    } catch (const Error& e) {
      invalid(std::string("request.group: torsion must be a divisibility chain of orders > 1 (") + e.what() + ")");
    }
  }
  req.k1_rank = j.value("k1_rank", std::size_t{0});
  if (j.contains("unit") && !j["unit"].is_null()) {
    req.unit = io::vector_from_json(j["unit"]);
    if (req.unit->size() != req.group.generator_count())
      throw Error(ErrorCode::ShapeMismatch, "request.unit: expected " + std::to_string(req.group.generator_count()) +
                                                " canonical coordinates");
  }
  req.cls = io::realization_class_from_string(j.value("class", std::string("unital")));
  return req;
}

Json request_to_json(const RealizationRequest& req) {
  Json out{{"class", io::to_string(req.cls)}, {"group", io::to_json(req.group)}, {"k1_rank", req.k1_rank}};
  out["unit"] = req.unit ? io::to_json(*req.unit) : Json(nullptr);
  return out;
}

Json pair_json(const Graph& e, const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  if (!p) return Json(nullptr);
  return Json::array({e.label(p->first), e.label(p->second)});
}

Output realization_output(const RealizationRequest& req, const Realization& r) {
  RealizationReport rep = verify_realization(req, r);
  Output o;
  o.report = Json{{"kind", "realization"},
                  {"request", request_to_json(req)},
                  {"graph", io::to_json(r.graph)},
                  {"k0_iso", io::to_json(r.k0_iso.matrix())},
                  {"dominated_pair", pair_json(r.graph, r.dominated_pair)},
                  {"report", io::to_json(rep)}};
  o.code = rep.passed() ? 0 : 1;
  o.graph = r.graph;
  o.highlight = VertexSet(r.graph.size());
  return o;
}

Realization realization_from_json(const Json& j, const RealizationRequest& req) {
  Graph e = graph_of(j);
  PresentedGroup target = PresentedGroup::standard(req.group);
  Homomorphism iso(k_groups(e).k0, target, io::matrix_from_json(j.at("k0_iso")));
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  if (j.contains("dominated_pair") && !j["dominated_pair"].is_null()) {
    const Json& p = j["dominated_pair"];
    if (!p.is_array() || p.size() != 2) invalid("dominated_pair: expected two labels");
    auto v = e.find(p[0].get<std::string>()), w = e.find(p[1].get<std::string>());
    if (!v || !w) invalid("dominated_pair: unknown vertex");
    pair = std::make_pair(*v, *w);
  }
  return Realization{e, iso, pair, {}, {}, {}, {}, {}};
}

bool splice_passed(const SpliceReport& rep, SpliceMode mode) {
  bool ok = rep.exact && rep.isomorphic && rep.unit;
  if (mode == SpliceMode::Essential) ok = ok && rep.essential;
  if (mode == SpliceMode::StenoticGenerators || mode == SpliceMode::StenoticIdentity) ok = ok && rep.stenotic;
  return ok;
}

const char* mode_name(SpliceMode m) {
  switch (m) {
    case SpliceMode::Essential: return "essential";
    case SpliceMode::StenoticGenerators: return "generators";
    case SpliceMode::StenoticIdentity: return "identity";
    case SpliceMode::Split: return "split";
  }
  return "?";
}

SpliceMode mode_from(const std::string& s) {
  for (auto m : {SpliceMode::Essential, SpliceMode::StenoticGenerators, SpliceMode::StenoticIdentity, SpliceMode::Split})
    if (s == mode_name(m)) return m;
  invalid("unknown splice mode \"" + s + "\" (essential, generators, identity, split)");
}

Json splice_fields(const Graph& e, const VertexSet& h, const SpliceTarget& t, const SpliceResult& r,
                   const SpliceReport& rep) {
  return Json{{"graph", io::to_json(e)},         {"ideal", labels_of(e, h)},
              {"target", io::to_json(t)},        {"y", io::to_json(r.y)},
              {"alpha2", io::to_json(r.a2.matrix())}, {"beta2", io::to_json(r.b2.matrix())},
              {"report", io::to_json(rep)}};
}

struct SavedSplice {
  Graph graph;
  VertexSet ideal;
  SpliceTarget target;
  SpliceResult result;
};

SavedSplice splice_from_json(const Json& j) {
  Graph e = graph_of(j);
  VertexSet h = vertex_set(e, j.at("ideal"), "ideal");
  Split sp = split_at(e, h);
  IntMatrix a = k_matrix(sp.ideal), b = k_matrix(sp.quotient);
  SpliceTarget t = io::target_from_json(j.at("target"), a, b);
  IntMatrix y = io::matrix_from_json(j.at("y"));
  if (y.rows() != a.rows() || y.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "y does not fit the blocks");
  IntMatrix block = IntMatrix::block_upper(a, y, b);
  Homomorphism a2(cokernel(block), t.seq.g2(), io::matrix_from_json(j.at("alpha2")));
  Homomorphism b2(PresentedGroup::free(kernel_basis(block).cols()), t.seq.f2(), io::matrix_from_json(j.at("beta2")));
  return SavedSplice{e, h, t, SpliceResult{y, a2, b2}};
}

PermanenceFlavor flavor_from(const std::string& s) {
  if (s == "stable") return PermanenceFlavor::Stable;
  if (s == "unital") return PermanenceFlavor::UnitalPurelyInfinite;
  if (s == "ck") return PermanenceFlavor::CuntzKrieger;
  invalid("unknown flavor \"" + s + "\" (stable, unital, ck)");
}

Output range_output(const RangeCase& c, const OrderedSixTerm& t, bool build, const Budget& budget) {
  Verdict v = check_range(c, t);
  Output o;
  o.report = Json{{"kind", "range"}, {"case", io::to_json(c)}, {"verdict", io::to_json(v)}};
  o.code = v.admissible ? 0 : 1;
  if (build && v.admissible) {
    RangeRealization r = realize_range(c, t, budget);
    Json fields = splice_fields(r.graph, r.ideal, r.target, r.splice.result, r.report);
    for (auto& [k, val] : fields.items()) o.report[k] = val;
    o.report["invariant"] = io::to_json(t);
    o.report["route"] = r.route;
    o.report["roundtrip"] = io::to_json(r.roundtrip);
    if (!r.roundtrip.admissible) o.code = 1;
    o.graph = r.graph;
    o.highlight = r.ideal;
  }
  return o;
}

// Re-checks a file written by realize, splice or range, or a bare graph.
Output verify(const Json& j, const Budget& budget) {
  Output o;
  std::string kind = j.value("kind", std::string(j.contains("target") ? "splice" : "graph"));
  if (kind == "realization") {
    RealizationRequest req = request_from_json(j.at("request"));
    Realization r = realization_from_json(j, req);
    RealizationReport rep;
    try {
      rep = verify_realization(req, r);
    } catch (const Error& e) {
      return Output{Json{{"kind", kind}, {"error", e.what()}, {"passed", false}}, 1, r.graph, VertexSet(r.graph.size())};
    }
    o.report = Json{{"kind", kind}, {"report", io::to_json(rep)}};
    o.code = rep.passed() ? 0 : 1;
    o.graph = r.graph;
  } else if (kind == "splice" || kind == "range") {
    SavedSplice s = splice_from_json(j);
    SpliceReport rep;
    try {
      rep = verify_splice(s.graph, s.ideal, s.target, s.result, budget);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BudgetExceeded) throw;
      // the stored maps no longer fit the graph
      return Output{Json{{"kind", kind}, {"error", e.what()}, {"passed", false}}, 1, s.graph, s.ideal};
    }
    o.report = Json{{"kind", kind}, {"report", io::to_json(rep)}};
    SpliceMode mode = mode_from(j.value("mode", std::string(kind == "range" ? "split" : "essential")));
    bool ok = splice_passed(rep, mode);
    if (kind == "range") {
      RangeCase c = io::range_case_from_json(j.at("case"));
      OrderedSixTerm produced = graph_invariant(s.graph, s.ideal, c, budget);
      Verdict v = check_range(c, produced);
      o.report["roundtrip"] = io::to_json(v);
      bool lattice = c.cls == RangeClass::LargestAf    ? rep.stenotic
                     : c.cls == RangeClass::SmallestAf ? rep.essential
                                                       : rep.unique_nontrivial;
      o.report["lattice"] = lattice;
      ok = ok && v.admissible && lattice;
    }
    o.code = ok ? 0 : 1;
    o.graph = s.graph;
    o.highlight = s.ideal;
  } else if (kind == "graph") {
    Graph e = graph_of(j);
    std::optional<Json> ideal;
    if (j.contains("ideal")) ideal = j["ideal"];
    return compute(e, ideal);
  } else {
    invalid("verify: unknown result kind \"" + kind + "\"");
  }
  o.report["passed"] = o.code == 0;
  if (!o.graph) return o;
  if (o.highlight.universe() != o.graph->size()) o.highlight = VertexSet(o.graph->size());
  return o;
}

void render(const Json& j, int indent, std::ostream& os);

bool scalar(const Json& j) { return !j.is_structured(); }

bool flat(const Json& j) {
  if (scalar(j)) return true;
  if (!j.is_array()) return j.empty();
  for (const auto& x : j)
    if (!scalar(x) && !(x.is_array() && std::all_of(x.begin(), x.end(), scalar))) return false;
  return true;
}

std::string inline_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(const Json& j, int indent, std::ostream& os) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (flat(v)) {
        os << pad << k << ": " << inline_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (flat(v)) {
        os << pad << "- " << inline_text(v) << "\n";
      } else {
        os << pad << "-\n";
        render(v, indent + 2, os);
      }
    }
  } else {
    os << pad << inline_text(j) << "\n";
  }
}

void emit(const Output& o, const Globals& g) {
  if (g.pretty)
    render(o.report, 0, std::cout);
  else
    std::cout << io::dump(o.report);
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) invalid(g.out + ": cannot write");
    f << io::dump(o.report);
  }
  if (!g.dot.empty()) {
    if (!o.graph) invalid("--dot: this command produced no graph");
    std::ofstream f(g.dot);
    if (!f) invalid(g.dot + ": cannot write");
    f << io::to_dot(*o.graph, o.highlight.universe() == o.graph->size() ? &o.highlight : nullptr);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-theory of graph C*-algebras: compute, realize and splice"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--pretty", g.pretty, "Human-readable report instead of JSON");
  app.add_option("--dot", g.dot, "Write a DOT rendering of the relevant graph");
  app.add_option("--seed", g.seed, "Seed for randomized choices (the computations are deterministic)");
  app.add_option("-o,--output", g.out, "Also write the JSON report to this file");

  std::string file, file2, file3, ideal, cls, group, unit, mode, generators, case_cls, case_type, flavor = "stable";
  std::size_t k1_rank = 0;
  bool build = false;

  auto* c_compute = app.add_subcommand("compute", "K-groups, unit class and six-term sequence of a graph");
  c_compute->add_option("graph", file, "Graph JSON")->required();
  c_compute->add_option("--ideal", ideal, "Vertex labels of a hereditary saturated set (comma separated)");

  auto* c_realize = app.add_subcommand("realize", "Build a graph with prescribed K-theory");
  c_realize->add_option("request", file, "Request JSON (file or inline)");
  c_realize->add_option("--class", cls, "pi, unital, dominated or ck");
  c_realize->add_option("--group", group, "Group JSON, e.g. {\"torsion\":[2],\"rank\":0}");
  c_realize->add_option("--unit", unit, "Unit class on canonical generators, e.g. [1]");
  c_realize->add_option("--k1_rank", k1_rank, "Rank of K1");

  auto* c_splice = app.add_subcommand("splice", "Splice an ideal graph and a quotient graph along a target sequence");
  c_splice->add_option("ideal_graph", file, "Graph for the ideal")->required();
  c_splice->add_option("quotient_graph", file2, "Graph for the quotient")->required();
  c_splice->add_option("target", file3, "Target JSON")->required();
  c_splice->add_option("--mode", mode, "essential, generators, identity or split")->default_val("essential");
  c_splice->add_option("--generators", generators, "Ideal vertex labels for the generators mode");

  auto* c_verify = app.add_subcommand("verify", "Re-check a result file");
  c_verify->add_option("result", file, "Result JSON")->required();

  auto* c_range = app.add_subcommand("range", "Check whether an ordered six-term sequence is in the range of a graph class");
  c_range->add_option("invariant", file, "Ordered six-term JSON")->required();
  c_range->add_option("--class", case_cls, "largest-af, smallest-af, unique, unital or ck");
  c_range->add_option("--type", case_type, "inf-inf, one-inf, inf-one or one-one");
  c_range->add_flag("--realize", build, "Also build a graph realizing an admissible invariant");

  auto* c_perm = app.add_subcommand("permanence", "Check the conditions for an extension to be a graph algebra");
  c_perm->add_option("invariant", file, "Ordered six-term JSON")->required();
  c_perm->add_option("--flavor", flavor, "stable, unital or ck")->default_val("stable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Budget budget = Budget::from_environment();
    Output o;
    if (c_compute->parsed()) {
      std::optional<Json> h;
      if (!ideal.empty()) h = label_list(ideal);
      o = compute(graph_of(load(file)), h);
    } else if (c_realize->parsed()) {
      Json req = file.empty() ? Json::object() : load(file);
      if (!cls.empty()) req["class"] = cls;
      if (!group.empty()) req["group"] = io::parse(group, "--group");
      if (!unit.empty()) req["unit"] = io::parse(unit, "--unit");
      if (c_realize->count("--k1_rank")) req["k1_rank"] = k1_rank;
      RealizationRequest r = request_from_json(req);
      o = realization_output(r, realize(r));
    } else if (c_splice->parsed()) {
      Graph e1 = graph_of(load(file)), e3 = graph_of(load(file2));
      SpliceTarget t = io::target_from_json(load(file3), k_matrix(e1), k_matrix(e3));
      SpliceOptions opts;
      opts.mode = mode_from(mode);
      if (!generators.empty()) {
        VertexSet gens = vertex_set(e1, label_list(generators), "--generators");
        opts.generators = gens.members();
      }
      SpliceOutput s = splice_graphs(e1, e3, t, opts);
      SpliceReport rep = verify_splice(s.graph, s.ideal, t, s.result, budget);
      o.report = splice_fields(s.graph, s.ideal, t, s.result, rep);
      o.report["kind"] = "splice";
      o.report["mode"] = mode_name(opts.mode);
      o.report["adjustment"] = s.adjustment;
      o.code = splice_passed(rep, opts.mode) ? 0 : 1;
      o.graph = s.graph;
      o.highlight = s.ideal;
    } else if (c_verify->parsed()) {
      o = verify(load(file), budget);
    } else if (c_range->parsed()) {
      Json j = load(file);
      Json cj = j.contains("case") ? j["case"] : Json::object();
      if (!case_cls.empty()) cj["class"] = case_cls;
      if (!case_type.empty()) cj["type"] = case_type;
      if (!cj.contains("class")) invalid("range: --class is required");
      o = range_output(io::range_case_from_json(cj), io::ordered_from_json(j.contains("invariant") ? j["invariant"] : j),
                       build, budget);
    } else if (c_perm->parsed()) {
      Json j = load(file);
      Verdict v = permanence(io::ordered_from_json(j.contains("invariant") ? j["invariant"] : j), flavor_from(flavor));
      o.report = Json{{"kind", "permanence"}, {"flavor", flavor}, {"verdict", io::to_json(v)}};
      o.code = v.admissible ? 0 : 1;
    }
    emit(o, g);
    return o.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::VerificationFailed ? 1 : 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
}
