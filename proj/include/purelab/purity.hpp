#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "purelab/limits.hpp"

namespace purelab {

/// f . x_i = g . x_j
struct Link {
  ArrowId f;
  std::size_t i;
  ArrowId g;
  std::size_t j;

  bool operator==(const Link&) const = default;
};

/// f . x_i = p for a parameter element p.
struct Anchor {
  ArrowId f;
  std::size_t i;
  ElemId p;

  bool operator==(const Anchor&) const = default;
};

using Equation = std::variant<Link, Anchor>;

struct Variable {
  std::string name;
  ObjectId sort;

  bool operator==(const Variable&) const = default;
};

/// A finite system of equations with parameters: the matrix of a
/// pp-formula with every variable existentially bound. Parameters are
/// elements of the presheaf the system is posed in.
struct EqSystem {
  std::vector<Variable> vars;
  std::vector<Equation> eqs;

  bool operator==(const EqSystem&) const = default;
};

/// assignment[i] is the value of vars[i].
using Assignment = std::vector<ElemId>;

/// Throws SortMismatch / BadParameters when the system is ill-typed for M.
void check_system(const Presheaf& M, const EqSystem& system);

bool satisfies(const Presheaf& M, const EqSystem& system, const Assignment& assignment);

/// Moves parameters along h (system posed in h.source() -> in h.target()).
EqSystem map_parameters(const EqSystem& system, const Hom& h);

/// Backtracking search with arc consistency; anchors are applied first.
std::optional<Assignment> solve_system(const Presheaf& M, const EqSystem& system);
/// Solves with every variable (and parameter) restricted to `within`.
std::optional<Assignment> solve_system(const SubPresheaf& within, const EqSystem& system);

/// The system with one variable per element of L outside the image of incl,
/// anchored to its values in the image and linked to its values outside it.
/// Parameters are elements of L. Its solutions inside the image are exactly
/// the retractions of incl.
EqSystem canonical_system(const Hom& incl);

struct Falsifier {
  EqSystem system;      // parameters are elements of L
  Assignment solution;  // a solution in L
};

struct PurityCertificate {
  bool pure = false;
  std::optional<Hom> retraction;
  std::optional<Falsifier> falsifier;
};

/// A retraction r: L -> K with r incl = id, if one exists. Throws NotMono.
std::optional<Hom> is_split(const Hom& incl);

/// For finite presheaves purity coincides with splitting. On failure the
/// falsifier is a closed sort-nonemptiness sentence when some sort is empty
/// in K but not in L, and the full canonical system otherwise.
PurityCertificate is_pure(const Hom& incl);

enum class EffectiveDiagnostic { PureEffective, InducedNotMono, InducedNotPure };

std::string_view to_string(EffectiveDiagnostic d);

struct PureEffectiveResult {
  bool holds = false;
  EffectiveDiagnostic diagnostic = EffectiveDiagnostic::InducedNotMono;
  PushoutResult pushout;
  Hom induced;
  std::optional<PurityCertificate> purity;
};

/// Throws NotPureInputs naming the first of kA, kB, aL, bL that is not a
/// pure mono.
PureEffectiveResult is_pure_effective(const Square& square);

struct CrossValue {
  std::size_t equation;  // index into the system
  ElemId value;          // common value in L, lies in the image of K
};

struct AmalgamationResult {
  Assignment assignment;  // in P
  std::vector<bool> in_left_part;
  std::vector<CrossValue> cross;
};

/// Turns a solution in L of a system posed in P (the pushout of the
/// square's span) into a solution in P, by splitting the variables into a
/// part solved in A and a part solved in B.
AmalgamationResult amalgamate_solution(const Square& square, const PushoutResult& po,
                                       const EqSystem& system, const Assignment& solution_in_l);

}  // namespace purelab
