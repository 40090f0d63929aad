#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "purelab/limits.hpp"

namespace purelab {

struct ChainIndex {
  std::size_t n = 0;
  std::size_t m = 0;

  auto operator<=>(const ChainIndex&) const = default;
};

/// Seed of the order-property chain: a = f.c, b = g.c and neither of a, b
/// generates the other.
struct ChainSeed {
  PresheafPtr K;
  ElemId a;
  ElemId b;
  ElemId c;
  ArrowId f;
  ArrowId g;
};

struct ChainStage {
  ChainIndex index;
  PresheafPtr presheaf;
  std::optional<Hom> link;  // from the previous stage; absent at (0,0)
  Hom embedding;            // K -> this stage, sending c to c_{n,m}
  std::size_t glued = 0;    // size of the glued subpresheaf of K
};

/// The chain truncated to the stages (n, m) with m <= n < depth, in
/// lexicographic order. Marked elements refer to the final stage.
struct ChainTrace {
  ChainSeed seed;
  std::size_t depth = 0;
  std::vector<ChainStage> stages;
  std::vector<ElemId> a;               // a_n
  std::vector<ElemId> b;               // b_m
  std::vector<std::vector<ElemId>> c;  // c[n][m], m <= n

  const Presheaf& final_stage() const { return *stages.back().presheaf; }
  const PresheafPtr& final_ptr() const { return stages.back().presheaf; }
};

/// Throws SeedConditionViolated naming the failing condition.
void check_seed(const ChainSeed& seed);

/// Runs the three gluing cases up to the given depth (>= 1). Each step is a
/// pushout of K along the glued subpresheaf <b>, <a, b> or <a>.
ChainTrace build_chain(const ChainSeed& seed, std::size_t depth);

struct OrderEntry {
  std::size_t n = 0;
  std::size_t m = 0;
  bool expected = false;      // m <= n
  bool recorded_ok = false;   // f.c_{n,m} = a_n and g.c_{n,m} = b_m (m <= n only)
  bool witness = false;       // some d with f.d = a_n and g.d = b_m
  bool connected = false;     // some d with a_n, b_m in <d>
  bool violation = false;
};

struct OrderReport {
  std::vector<OrderEntry> entries;  // row-major over n, m < depth
  std::size_t violations = 0;
  bool ok() const { return violations == 0; }
};

OrderReport check_order_pattern(const ChainTrace& trace);

struct HReport {
  std::vector<ElemId> H;
  bool meets_ab = true;      // <a_n> & <b_m> = H
  bool meets_same = true;    // <a_n> & <a_n'> = <b_n> & <b_n'> = H
  bool avoids_marked = true; // a_n, b_m, c_{n,m} not in H
  std::vector<std::string> failures;
  bool ok() const { return meets_ab && meets_same && avoids_marked; }
};

HReport check_H_properties(const ChainTrace& trace);

struct PatternShape {
  enum class Kind { Bipartite, Order };
  Kind kind = Kind::Bipartite;
  std::size_t rows = 1;
  std::size_t cols = 1;

  static PatternShape bipartite(std::size_t rows, std::size_t cols) {
    return {Kind::Bipartite, rows, cols};
  }
  static PatternShape order(std::size_t length) { return {Kind::Order, length, length}; }
};

struct PatternCell {
  std::size_t row;
  std::size_t col;
  ElemId c;
};

/// rows[i], cols[j] with f.c = rows[i] and g.c = cols[j] for every listed
/// cell. For the order shape the cells are exactly those with i <= j.
struct PatternWitness {
  ArrowId f;
  ArrowId g;
  std::vector<ElemId> rows;
  std::vector<ElemId> cols;
  std::vector<PatternCell> witnesses;
};

/// Backtracking search for the requested pattern. Throws BadSpan when f and
/// g do not share a domain and BadArgument for empty shapes.
std::optional<PatternWitness> find_pattern(const Presheaf& P, ArrowId f, ArrowId g,
                                           const PatternShape& shape);

/// Re-checks a candidate against the shape, including the absence of
/// witnesses below the diagonal for the order shape.
bool verify_pattern(const Presheaf& P, ArrowId f, ArrowId g, const PatternShape& shape,
                    const std::vector<ElemId>& rows, const std::vector<ElemId>& cols);

}  // namespace purelab
