#pragma once

#include <json.hpp>
#include <string>

#include "kforge/graph.hpp"
#include "kforge/ranges.hpp"
#include "kforge/realize.hpp"
#include "kforge/splice.hpp"

namespace kforge::io {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are numbers, larger ones strings.
Json to_json(const Integer& x);
Integer integer_from_json(const Json& j);

Json to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);

// [[...], ...] row by row; shapes with a zero side as {"rows": r, "cols": c}.
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json to_json(const FgaGroup& g);
// {"torsion": [...], "rank": n} (standard presentation) or
// {"ambient": n, "relations": matrix}
PresentedGroup group_from_json(const Json& j);
Json presentation_to_json(const PresentedGroup& g);

Json to_json(const Multiplicity& m);
Json to_json(const Graph& e);
Graph graph_from_json(const Json& j);
std::string to_dot(const Graph& e, const VertexSet* highlight = nullptr);

Json to_json(const SixTermSequence& s);
SixTermSequence sequence_from_json(const Json& j);

// "via" is "gam" or a matrix from G2 to G3 of the sequence.
Json to_json(const OrderTag& t, const SixTermSequence& s);
OrderTag tag_from_json(const Json& j, const SixTermSequence& s);

Json to_json(const OrderedSixTerm& t);
OrderedSixTerm ordered_from_json(const Json& j);

Json to_json(const Verdict& v);
Json to_json(const RealizationReport& r);
Json to_json(const SpliceReport& r);
Json to_json(const RangeCase& c);
RangeCase range_case_from_json(const Json& j);

// End maps are optional in the file; missing ones are canonical isos.
SpliceTarget target_from_json(const Json& j, const IntMatrix& a, const IntMatrix& b);
Json to_json(const SpliceTarget& t);

RealizationClass realization_class_from_string(const std::string& s);
std::string to_string(RealizationClass c);

// Indented, with numeric vectors and matrices kept on one line.
std::string dump(const Json& j);

Json parse(const std::string& text, const std::string& where);
Json read_file(const std::string& path);

}  // namespace kforge::io
