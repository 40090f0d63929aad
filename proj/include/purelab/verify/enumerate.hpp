#pragma once

#include <functional>

#include "purelab/presheaf.hpp"

namespace purelab::verify {

/// Calls `visit` on every presheaf over `cat` (as labelled action tables,
/// not up to isomorphism) whose total size is at most `max_total`.
/// Elements are named e0, e1, ... across all sorts.
void for_each_presheaf(const CatPtr& cat, std::size_t max_total,
                       const std::function<void(const PresheafPtr&)>& visit);

/// Every action-closed subset of `p`, as masks.
std::vector<std::vector<bool>> all_submasks(const Presheaf& p);

/// Every Hom source -> target, by brute force over sortwise maps.
std::vector<std::vector<ElemId>> all_hom_tables(const Presheaf& source, const Presheaf& target);

}  // namespace purelab::verify
