#pragma once

#include <optional>
#include <vector>

#include "purelab/presheaf.hpp"

namespace purelab {

/// A single generation step y = f . x with both ends outside the base.
struct GenerationEdge {
  ElemId from;
  ArrowId arrow;
  ElemId to;

  bool operator==(const GenerationEdge&) const = default;
};

/// Classes of "connected outside K" on L \ K. Components are sorted by their
/// smallest element and each component is sorted.
struct ConnectivityReport {
  SubPresheaf base;
  std::vector<std::vector<ElemId>> components;
  std::vector<GenerationEdge> edges;
  // component_of[e] is the index into `components`, or nullopt for e in K.
  std::vector<std::optional<std::size_t>> component_of;

  /// C^L_K(S): union of the classes meeting S (elements of K are ignored).
  std::vector<bool> closure(const std::vector<bool>& subset) const;
};

/// Throws BaseNotClosed when `base_mask` is not action-closed.
ConnectivityReport components_outside(const PresheafPtr& L, const std::vector<bool>& base_mask);
ConnectivityReport components_outside(const SubPresheaf& base);

/// A shortest generation path a = c_0, ..., c_n = b avoiding K, or nullopt.
/// Throws ElementInBase if a or b lies in K.
std::optional<std::vector<ElemId>> connected_outside(const SubPresheaf& base, ElemId a, ElemId b);

}  // namespace purelab
