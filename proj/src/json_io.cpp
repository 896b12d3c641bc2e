#include "kforge/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "kforge/error.hpp"
#include "kforge/ktheory.hpp"
#include "kforge/normal_form.hpp"

namespace kforge::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t size_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Homomorphism map_from(const Json& j, const PresentedGroup& from, const PresentedGroup& to, const std::string& where) {
  IntMatrix m = matrix_from_json(j);
  if (m.rows() != to.ambient_rank() || m.cols() != from.ambient_rank())
    throw Error(ErrorCode::ShapeMismatch, where + ": matrix is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()) + ", expected " +
                                              std::to_string(to.ambient_rank()) + "x" +
                                              std::to_string(from.ambient_rank()));
  return Homomorphism(from, to, std::move(m));
}

const char* const kMapNames[] = {"eps", "gam", "del0", "eps_p", "gam_p", "del1"};
const char* const kGroupNames[] = {"G1", "G2", "G3", "F1", "F2", "F3"};

}  // namespace

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) bad("integer", "not a decimal integer: " + j.get<std::string>());
    return x;
  }
  bad("integer", "expected an integer, got " + j.dump());
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("vector", "expected an array, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json to_json(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return Json{{"rows", m.rows()}, {"cols", m.cols()}};
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (j.is_object()) {
    std::size_t r = size_from_json(member(j, "rows", "matrix"), "matrix.rows");
    std::size_t c = size_from_json(member(j, "cols", "matrix"), "matrix.cols");
    if (r != 0 && c != 0) bad("matrix", "the {rows, cols} form is only for empty shapes");
    return IntMatrix(r, c);
  }
  if (!j.is_array() || j.empty()) bad("matrix", "expected a non-empty array of rows or {\"rows\", \"cols\"}");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from_json(j[i]));
    if (rows.back().size() != rows.front().size())
      bad("matrix", "row " + std::to_string(i) + " has " + std::to_string(rows.back().size()) + " entries, expected " +
                        std::to_string(rows.front().size()));
  }
  if (rows.front().empty()) bad("matrix", "rows are empty; use {\"rows\": n, \"cols\": 0}");
  return IntMatrix::from_rows(rows.front().size(), rows);
}

Json to_json(const FgaGroup& g) { return Json{{"torsion", to_json(g.torsion)}, {"rank", g.free_rank}}; }

PresentedGroup group_from_json(const Json& j) {
  if (!j.is_object()) bad("group", "expected an object");
  if (j.contains("relations")) {
    IntMatrix rel = matrix_from_json(j["relations"]);
    if (j.contains("ambient") && size_from_json(j["ambient"], "group.ambient") != rel.rows())
      throw Error(ErrorCode::ShapeMismatch, "group: ambient rank disagrees with the relation rows");
    return PresentedGroup(std::move(rel));
  }
  if (j.contains("ambient")) return PresentedGroup::free(size_from_json(j["ambient"], "group.ambient"));
  IntVector torsion = j.contains("torsion") ? vector_from_json(j["torsion"]) : IntVector{};
  std::size_t rank = j.contains("rank") ? size_from_json(j["rank"], "group.rank") : 0;
  // A non-chain list such as [2, 3] is accepted as a direct sum of cyclic groups.
  IntMatrix rel(torsion.size() + rank, torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 0) bad("group.torsion", "orders must be positive");
    rel(i, i) = torsion[i];
  }
  return PresentedGroup(std::move(rel));
}

Json presentation_to_json(const PresentedGroup& g) {
  return Json{{"ambient", g.ambient_rank()}, {"relations", to_json(g.relations())}, {"canonical", to_json(g.canonical())}};
}

Json to_json(const Multiplicity& m) {
  if (m.is_infinite()) return Json("inf");
  return to_json(m.count());
}

Json to_json(const Graph& e) {
  Json vertices = Json::array();
  for (const auto& l : e.labels()) vertices.push_back(l);
  Json edges = Json::array();
  for (const auto& ed : e.edges())
    edges.push_back(Json{{"src", e.label(ed.src)}, {"dst", e.label(ed.dst)}, {"mult", to_json(ed.mult)}});
  return Json{{"vertices", vertices}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  const Json& vs = member(j, "vertices", "graph");
  if (!vs.is_array()) bad("graph.vertices", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) bad("graph.vertices[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(vs[i].get<std::string>());
  }
  Graph probe(labels, {});
  auto vertex = [&](const Json& x, const std::string& where) {
    if (!x.is_string()) bad(where, "expected a vertex label");
    auto v = probe.find(x.get<std::string>());
    if (!v) bad(where, "unknown vertex \"" + x.get<std::string>() + "\"");
    return *v;
  };
  std::vector<Edge> edges;
  const Json es = j.contains("edges") ? j["edges"] : Json::array();
  if (!es.is_array()) bad("graph.edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string where = "graph.edges[" + std::to_string(i) + "]";
    Edge ed{vertex(member(es[i], "src", where), where + ".src"), vertex(member(es[i], "dst", where), where + ".dst"), 1};
    if (es[i].contains("mult")) {
      const Json& m = es[i]["mult"];
      if (m.is_string() && (m == "inf" || m == "∞")) {
        ed.mult = Multiplicity::infinite();
      } else {
        Integer n;
        try {
          n = integer_from_json(m);
        } catch (const Error&) {
          bad(where + ".mult", "expected a count or \"inf\"");
        }
        if (n < 0) bad(where + ".mult", "negative multiplicity");
        ed.mult = Multiplicity(n);
      }
    }
    for (const auto& prev : edges)
      if (prev.src == ed.src && prev.dst == ed.dst) bad(where, "duplicate vertex pair");
    edges.push_back(ed);
  }
  return Graph(std::move(labels), edges);
}

std::string to_dot(const Graph& e, const VertexSet* highlight) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph G {\n";
  for (std::size_t v = 0; v < e.size(); ++v) {
    os << "  " << quote(e.label(v));
    if (highlight && highlight->contains(v)) os << " [style=filled, fillcolor=lightgray]";
    os << ";\n";
  }
  for (const auto& ed : e.edges()) {
    os << "  " << quote(e.label(ed.src)) << " -> " << quote(e.label(ed.dst)) << " [label=\""
       << (ed.mult.is_infinite() ? std::string("∞") : ed.mult.count().get_str()) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Json to_json(const SixTermSequence& s) {
  Json groups = Json::object();
  for (std::size_t i = 0; i < 6; ++i) groups[kGroupNames[i]] = presentation_to_json(s.group(kNodes[i]));
  Json maps = Json::object();
  for (std::size_t i = 0; i < 6; ++i) maps[kMapNames[i]] = to_json(s.outgoing(kNodes[i]).matrix());
  return Json{{"groups", groups}, {"maps", maps}};
}

SixTermSequence sequence_from_json(const Json& j) {
  const Json& gj = member(j, "groups", "sequence");
  const Json& mj = member(j, "maps", "sequence");
  std::vector<PresentedGroup> g;
  for (const char* name : kGroupNames) g.push_back(group_from_json(member(gj, name, "sequence.groups")));
  std::vector<Homomorphism> h;
  for (std::size_t i = 0; i < 6; ++i)
    h.push_back(map_from(member(mj, kMapNames[i], "sequence.maps"), g[i], g[(i + 1) % 6],
                         std::string("sequence.maps.") + kMapNames[i]));
  return SixTermSequence(h[0], h[1], h[2], h[3], h[4], h[5]);
}

Json to_json(const OrderTag& t, const SixTermSequence& s) {
  using Kind = OrderTag::Kind;
  switch (t.kind()) {
    case Kind::Trivial: return Json{{"kind", "trivial"}};
    case Kind::Simplicial: return Json{{"kind", "simplicial"}, {"rank", t.rank()}};
    case Kind::ZPlus: return Json{{"kind", "zplus"}};
    case Kind::PulledBack: {
      Json via = same_map(t.via(), s.gam()) && t.via().domain().same_presentation(s.g2())
                     ? Json("gam")
                     : to_json(t.via().matrix());
      return Json{{"kind", "pulled_back"}, {"via", via}, {"base", to_json(t.base(), s)}};
    }
    case Kind::Lex: return Json{{"kind", "lex"}, {"sub", to_json(t.sub(), s)}, {"quot", to_json(t.quot(), s)}};
    case Kind::Unknown: return Json{{"kind", "unknown"}};
  }
  return Json{};
}

OrderTag tag_from_json(const Json& j, const SixTermSequence& s) {
  if (j.is_string()) return tag_from_json(Json{{"kind", j}}, s);
  const Json& k = member(j, "kind", "tag");
  if (!k.is_string()) bad("tag.kind", "expected a string");
  std::string kind = k.get<std::string>();
  if (kind == "trivial") return OrderTag::trivial();
  if (kind == "simplicial") return OrderTag::simplicial(size_from_json(member(j, "rank", "tag"), "tag.rank"));
  if (kind == "zplus") return OrderTag::zplus();
  if (kind == "unknown") return OrderTag::unknown();
  if (kind == "lex") return OrderTag::lex(tag_from_json(member(j, "sub", "tag"), s), tag_from_json(member(j, "quot", "tag"), s));
  if (kind == "pulled_back") {
    const Json& via = member(j, "via", "tag");
    Homomorphism h = via == "gam" ? s.gam() : map_from(via, s.g2(), s.g3(), "tag.via");
    return OrderTag::pulled_back(h, tag_from_json(member(j, "base", "tag"), s));
  }
  bad("tag.kind", "unknown kind \"" + kind + "\"");
}

Json to_json(const OrderedSixTerm& t) {
  Json out{{"sequence", to_json(t.seq)}};
  Json tags = Json::array();
  for (const auto& tag : t.tags) tags.push_back(to_json(tag, t.seq));
  out["tags"] = tags;
  if (t.unit) out["unit"] = to_json(*t.unit);
  return out;
}

OrderedSixTerm ordered_from_json(const Json& j) {
  SixTermSequence seq = sequence_from_json(member(j, "sequence", "invariant"));
  std::array<OrderTag, 3> tags{OrderTag::unknown(), OrderTag::unknown(), OrderTag::unknown()};
  if (j.contains("tags")) {
    const Json& tj = j["tags"];
    if (!tj.is_array() || tj.size() != 3) bad("invariant.tags", "expected three tags (G1, G2, G3)");
    for (std::size_t i = 0; i < 3; ++i) tags[i] = tag_from_json(tj[i], seq);
  }
  std::optional<IntVector> unit;
  if (j.contains("unit") && !j["unit"].is_null()) {
    unit = vector_from_json(j["unit"]);
    if (unit->size() != seq.g2().ambient_rank())
      throw Error(ErrorCode::ShapeMismatch, "invariant.unit: expected " + std::to_string(seq.g2().ambient_rank()) + " entries");
  }
  return OrderedSixTerm{seq, tags, unit};
}

Json to_json(const Verdict& v) {
  Json out{{"admissible", v.admissible}, {"violations", v.violations}};
  out["vertex_count"] = v.vertex_count ? Json(*v.vertex_count) : Json(nullptr);
  return out;
}

Json to_json(const RealizationReport& r) {
  return Json{{"passed", r.passed()},   {"k_theory", r.k_theory},     {"iso", r.iso},
              {"unit", r.unit},         {"loops", r.loops},           {"transitive", r.transitive},
              {"vertex_bound", r.vertex_bound}, {"dominated", r.dominated}};
}

Json to_json(const SpliceReport& r) {
  return Json{{"exact", r.exact},
              {"isomorphic", r.isomorphic},
              {"essential", r.essential},
              {"stenotic", r.stenotic},
              {"unique_nontrivial", r.unique_nontrivial},
              {"unit", r.unit},
              {"condition_k", r.condition_k},
              {"lattice_size", r.lattice_size},
              {"notes", r.notes}};
}

namespace {
const char* const kClassNames[] = {"largest-af", "smallest-af", "unique", "unital", "ck"};
const char* const kTypeNames[] = {"inf-inf", "one-inf", "inf-one", "one-one"};
}  // namespace

Json to_json(const RangeCase& c) { return Json{{"class", kClassNames[int(c.cls)]}, {"type", kTypeNames[int(c.type)]}}; }

RangeCase range_case_from_json(const Json& j) {
  RangeCase c;
  std::string cls = member(j, "class", "case").get<std::string>();
  bool found = false;
  for (int i = 0; i < 5; ++i)
    if (cls == kClassNames[i]) c.cls = RangeClass(i), found = true;
  if (!found) bad("case.class", "unknown class \"" + cls + "\"");
  if (j.contains("type")) {
    std::string type = j["type"].get<std::string>();
    if (type == "1-inf") type = "one-inf";
    if (type == "inf-1") type = "inf-one";
    if (type == "1-1") type = "one-one";
    found = false;
    for (int i = 0; i < 4; ++i)
      if (type == kTypeNames[i]) c.type = IdealType(i), found = true;
    if (!found) bad("case.type", "unknown type \"" + type + "\"");
  }
  return c;
}

SpliceTarget target_from_json(const Json& j, const IntMatrix& a, const IntMatrix& b) {
  SixTermSequence seq = sequence_from_json(member(j, "sequence", "target"));
  PresentedGroup coker_a = cokernel(a), coker_b = cokernel(b);
  PresentedGroup ker_a = PresentedGroup::free(kernel_basis(a).cols());
  PresentedGroup ker_b = PresentedGroup::free(kernel_basis(b).cols());
  auto end_map = [&](const char* key, const PresentedGroup& from, const PresentedGroup& to) {
    if (j.contains(key)) return map_from(j[key], from, to, std::string("target.") + key);
    if (!(from.canonical() == to.canonical()))
      throw Error(ErrorCode::EndMapsNotIso, std::string("target.") + key + ": " + from.canonical().to_string() +
                                                " is not isomorphic to " + to.canonical().to_string());
    return canonical_iso(from, to);
  };
  SpliceTarget t{seq, end_map("alpha1", coker_a, seq.g1()), end_map("beta1", ker_a, seq.f1()),
                 end_map("alpha3", coker_b, seq.g3()), end_map("beta3", ker_b, seq.f3()), std::nullopt,
                 std::nullopt};
  if (j.contains("unit") && !j["unit"].is_null()) {
    t.unit = vector_from_json(j["unit"]);
    if (t.unit->size() != seq.g2().ambient_rank())
      throw Error(ErrorCode::ShapeMismatch, "target.unit: expected " + std::to_string(seq.g2().ambient_rank()) + " entries");
  }
  if (j.contains("splitting") && !j["splitting"].is_null())
    t.splitting = map_from(j["splitting"], seq.g3(), seq.g2(), "target.splitting");
  return t;
}

Json to_json(const SpliceTarget& t) {
  Json out{{"sequence", to_json(t.seq)},          {"alpha1", to_json(t.a1.matrix())},
           {"beta1", to_json(t.b1.matrix())},     {"alpha3", to_json(t.a3.matrix())},
           {"beta3", to_json(t.b3.matrix())}};
  if (t.unit) out["unit"] = to_json(*t.unit);
  if (t.splitting) out["splitting"] = to_json(t.splitting->matrix());
  return out;
}

RealizationClass realization_class_from_string(const std::string& s) {
  if (s == "pi" || s == "simple") return RealizationClass::SimplePurelyInfinite;
  if (s == "unital") return RealizationClass::Unital;
  if (s == "dominated") return RealizationClass::UnitalDominated;
  if (s == "ck") return RealizationClass::CuntzKrieger;
  bad("class", "unknown realization class \"" + s + "\" (pi, unital, dominated, ck)");
}

std::string to_string(RealizationClass c) {
  switch (c) {
    case RealizationClass::SimplePurelyInfinite: return "pi";
    case RealizationClass::Unital: return "unital";
    case RealizationClass::UnitalDominated: return "dominated";
    case RealizationClass::CuntzKrieger: return "ck";
  }
  return "?";
}

namespace {

bool compact(const Json& j) {
  if (!j.is_structured()) return true;
  if (j.empty()) return true;
  auto scalar = [](const Json& y) { return !y.is_structured() || (y.is_array() && y.empty()); };
  if (j.is_object()) return j.size() <= 3 && std::all_of(j.begin(), j.end(), scalar);
  for (const auto& x : j)
    if (x.is_object() || (x.is_array() && !std::all_of(x.begin(), x.end(), [](const Json& y) { return !y.is_structured(); })))
      return false;
  return true;
}

void dump_into(const Json& j, int indent, std::string& out) {
  if (compact(j)) {
    out += j.dump(-1, ' ', false);
    return;
  }
  std::string pad(indent + 2, ' ');
  bool first = true;
  out += j.is_array() ? "[\n" : "{\n";
  if (j.is_array()) {
    for (const auto& x : j) {
      out += (first ? "" : ",\n") + pad;
      dump_into(x, indent + 2, out);
      first = false;
    }
  } else {
    for (const auto& [k, v] : j.items()) {
      out += (first ? "" : ",\n") + pad + Json(k).dump() + ": ";
      dump_into(v, indent + 2, out);
      first = false;
    }
  }
  out += "\n" + std::string(indent, ' ') + (j.is_array() ? "]" : "}");
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  return out + "\n";
}

Json parse(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(where, std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

}  // namespace kforge::io
