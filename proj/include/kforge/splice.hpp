#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kforge/graph.hpp"
#include "kforge/sequence.hpp"

namespace kforge {

// A six-term sequence to be realized over fixed blocks a (ideal) and b
// (quotient), with isomorphisms from the end groups of a and b:
//   a1 : coker a -> G1,  b1 : ker a -> F1  (kernel_basis coordinates)
//   a3 : coker b -> G3,  b3 : ker b -> F3
struct SpliceTarget {
  SixTermSequence seq;
  Homomorphism a1, b1, a3, b3;
  std::optional<IntVector> unit;          // element of G2
  std::optional<Homomorphism> splitting;  // G3 -> G2 with gam after it the identity
};

struct SpliceResult {
  IntMatrix y;
  Homomorphism a2;  // coker [[a, y], [0, b]] -> G2
  Homomorphism b2;  // ker [[a, y], [0, b]] -> F2
};

// eta : ker a -> G extended to Z^cols(a) through the section of a on its image.
Homomorphism extend_hom(const IntMatrix& a, const Homomorphism& eta);

// Some y with snake(a, b, y) isomorphic to the target, with the vertical maps.
SpliceResult build_y(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t);

// Replace y by one with y >= z, keeping the isomorphism. Left: a * dom - I >= 0.
// Right: dom * b - I >= 0.
SpliceResult adjust_dominate(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& prior,
                             const IntMatrix& z, Side side, const IntMatrix& dom);

// Make a2 send the all-ones class to t.unit and y >= z. `pair` = (i, j)
// with row i of b strictly below row j on every column; searched if absent.
SpliceResult adjust_unit(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& prior,
                         const IntMatrix& z, std::optional<std::pair<std::size_t, std::size_t>> pair = std::nullopt);

// y = 0 via the splitting; needs F3 = 0.
SpliceResult adjust_split(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t);

// Checks the target and runs check_sequence_iso for a candidate result.
IsoReport check_splice(const IntMatrix& a, const IntMatrix& b, const SpliceTarget& t, const SpliceResult& r);

enum class SpliceMode { Essential, StenoticGenerators, StenoticIdentity, Split };

struct SpliceOptions {
  SpliceMode mode = SpliceMode::Essential;
  std::vector<std::size_t> generators;  // ideal vertices, for StenoticGenerators
  std::optional<std::pair<std::size_t, std::size_t>> dominated_pair;
};

struct SpliceOutput {
  Graph graph;     // ideal vertices first
  VertexSet ideal;
  SpliceResult result;
  IntMatrix z;
  std::string adjustment;  // which adjustment produced y
};

// Lower bound for y per mode, shape |ideal| x |regular quotient vertices|.
IntMatrix splice_floor(std::size_t ideal_size, std::size_t quotient_regular, const SpliceOptions& opts);

SpliceOutput splice_graphs(const Graph& e1, const Graph& e3, const SpliceTarget& t, const SpliceOptions& opts = {});

struct SpliceReport {
  bool exact = false;
  bool isomorphic = false;
  bool essential = false;          // every nonzero gauge-invariant ideal meets the ideal
  bool stenotic = false;           // every gauge-invariant ideal is comparable with it
  bool unique_nontrivial = false;  // the only proper nonzero gauge-invariant ideal
  bool unit = true;                // unit class lands on the target unit, if one was set
  bool condition_k = false;        // all ideals gauge-invariant
  std::size_t lattice_size = 0;
  std::vector<std::string> notes;
};

SpliceReport verify_splice(const Graph& e2, const VertexSet& h, const SpliceTarget& t, const SpliceResult& r,
                           const Budget& budget = {});

}  // namespace kforge
