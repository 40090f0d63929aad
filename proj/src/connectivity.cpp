#include "purelab/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace purelab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<GenerationEdge> edges_outside(const SubPresheaf& base) {
  const Presheaf& L = base.ambient();
  const FinCat& cat = L.cat();
  std::vector<GenerationEdge> edges;
  for (ElemId x : L.elements()) {
    if (base.contains(x)) continue;
    for (ArrowId f : cat.arrows_from(L.sort(x))) {
      if (cat.is_identity(f)) continue;
      ElemId y = L.act(f, x);
      if (y == x || base.contains(y)) continue;
      edges.push_back({x, f, y});
    }
  }
  return edges;
}

}  // namespace

std::vector<bool> ConnectivityReport::closure(const std::vector<bool>& subset) const {
  std::vector<bool> hit(components.size(), false);
  for (std::size_t e = 0; e < subset.size(); ++e)
    if (subset[e] && component_of[e]) hit[*component_of[e]] = true;
  std::vector<bool> out(subset.size(), false);
  for (std::size_t e = 0; e < out.size(); ++e)
    if (component_of[e] && hit[*component_of[e]]) out[e] = true;
  return out;
}

ConnectivityReport components_outside(const PresheafPtr& L, const std::vector<bool>& base_mask) {
  if (base_mask.size() != L->size() || !is_action_closed(*L, base_mask))
    throw Error(ErrorKind::BaseNotClosed, "the base is not an action-closed subset");
  return components_outside(SubPresheaf::from_mask(L, base_mask));
}

ConnectivityReport components_outside(const SubPresheaf& base) {
  const Presheaf& L = base.ambient();
  ConnectivityReport report{base, {}, edges_outside(base), {}};
  UnionFind uf(L.size());
  for (const auto& e : report.edges) uf.unite(idx(e.from), idx(e.to));

  report.component_of.assign(L.size(), std::nullopt);
  std::vector<std::optional<std::size_t>> by_root(L.size());
  for (ElemId x : L.elements()) {
    if (base.contains(x)) continue;
    std::size_t root = uf.find(idx(x));
    if (!by_root[root]) {
      by_root[root] = report.components.size();
      report.components.emplace_back();
    }
    report.components[*by_root[root]].push_back(x);
    report.component_of[idx(x)] = by_root[root];
  }
  return report;
}

std::optional<std::vector<ElemId>> connected_outside(const SubPresheaf& base, ElemId a, ElemId b) {
  const Presheaf& L = base.ambient();
  if (idx(a) >= L.size() || idx(b) >= L.size())
    throw Error(ErrorKind::UnknownElement, "element id out of range");
  if (base.contains(a) || base.contains(b))
    throw Error(ErrorKind::ElementInBase, "path endpoints must lie outside the base");

  std::vector<std::vector<ElemId>> adj(L.size());
  for (const auto& e : edges_outside(base)) {
    adj[idx(e.from)].push_back(e.to);
    adj[idx(e.to)].push_back(e.from);
  }
  for (auto& n : adj) std::sort(n.begin(), n.end());

  constexpr auto unset = static_cast<ElemId>(~std::uint32_t{0});
  std::vector<ElemId> prev(L.size(), unset);
  std::deque<ElemId> queue{a};
  prev[idx(a)] = a;
  while (!queue.empty()) {
    ElemId x = queue.front();
    queue.pop_front();
    if (x == b) break;
    for (ElemId y : adj[idx(x)]) {
      if (prev[idx(y)] != unset) continue;
      prev[idx(y)] = x;
      queue.push_back(y);
    }
  }
  if (prev[idx(b)] == unset) return std::nullopt;
  std::vector<ElemId> path{b};
  while (path.back() != a) path.push_back(prev[idx(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace purelab
