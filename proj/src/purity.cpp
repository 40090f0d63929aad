#include "purelab/purity.hpp"

#include <algorithm>
#include <numeric>

#include "purelab/connectivity.hpp"

namespace purelab {

namespace {

using Domain = std::vector<char>;

/// Finite CSP over the elements of one presheaf with constraints of the two
/// equation shapes. `priority` breaks ties between equally small domains
/// (lower first).
class EquationSolver {
 public:
  EquationSolver(const Presheaf& m, const EqSystem& system, const std::vector<bool>* allowed,
                 std::vector<std::size_t> priority)
      : m_(m), system_(system), priority_(std::move(priority)) {
    const std::size_t n = system.vars.size();
    if (priority_.empty()) {
      priority_.resize(n);
      std::iota(priority_.begin(), priority_.end(), 0);
    }
    initial_.assign(n, Domain(m.size(), 0));
    for (std::size_t v = 0; v < n; ++v)
      for (ElemId e : m.carrier(system.vars[v].sort))
        if (!allowed || (*allowed)[idx(e)]) initial_[v][idx(e)] = 1;
    for (const Equation& eq : system.eqs) {
      if (const auto* a = std::get_if<Anchor>(&eq)) {
        auto& d = initial_[a->i];
        for (std::size_t e = 0; e < d.size(); ++e)
          if (d[e] && m.act(a->f, elem_id(e)) != a->p) d[e] = 0;
      } else {
        const auto& l = std::get<Link>(eq);
        if (l.i == l.j) {
          auto& d = initial_[l.i];
          for (std::size_t e = 0; e < d.size(); ++e)
            if (d[e] && m.act(l.f, elem_id(e)) != m.act(l.g, elem_id(e))) d[e] = 0;
        } else {
          binary_.push_back(l);
        }
      }
    }
  }

  std::optional<Assignment> solve() {
    auto domains = initial_;
    if (!propagate(domains)) return std::nullopt;
    return search(domains);
  }

 private:
  // Keeps v in D_i only if f.v = g.w for some w in D_j.
  bool revise(std::vector<Domain>& d, ArrowId f, std::size_t i, ArrowId g, std::size_t j,
              bool& changed) {
    Domain reach(m_.size(), 0);
    for (std::size_t w = 0; w < d[j].size(); ++w)
      if (d[j][w]) reach[idx(m_.act(g, elem_id(w)))] = 1;
    bool any = false;
    for (std::size_t v = 0; v < d[i].size(); ++v) {
      if (!d[i][v]) continue;
      if (!reach[idx(m_.act(f, elem_id(v)))]) {
        d[i][v] = 0;
        changed = true;
      } else {
        any = true;
      }
    }
    return any;
  }

  bool propagate(std::vector<Domain>& d) {
    for (const auto& dom : d)
      if (std::find(dom.begin(), dom.end(), 1) == dom.end()) return false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Link& l : binary_) {
        if (!revise(d, l.f, l.i, l.g, l.j, changed)) return false;
        if (!revise(d, l.g, l.j, l.f, l.i, changed)) return false;
      }
    }
    return true;
  }

  std::optional<Assignment> search(std::vector<Domain>& d) {
    std::optional<std::size_t> pick;
    std::size_t best = 0;
    for (std::size_t v = 0; v < d.size(); ++v) {
      auto size = static_cast<std::size_t>(std::count(d[v].begin(), d[v].end(), 1));
      if (size <= 1) continue;
      if (!pick || size < best || (size == best && priority_[v] < priority_[*pick])) {
        pick = v;
        best = size;
      }
    }
    if (!pick) {
      Assignment out(d.size());
      for (std::size_t v = 0; v < d.size(); ++v)
        out[v] = elem_id(static_cast<std::size_t>(std::find(d[v].begin(), d[v].end(), 1) - d[v].begin()));
      return out;
    }
    for (std::size_t e = 0; e < m_.size(); ++e) {
      if (!d[*pick][e]) continue;
      auto next = d;
      std::fill(next[*pick].begin(), next[*pick].end(), 0);
      next[*pick][e] = 1;
      if (!propagate(next)) continue;
      if (auto found = search(next)) return found;
    }
    return std::nullopt;
  }

  const Presheaf& m_;
  const EqSystem& system_;
  std::vector<std::size_t> priority_;
  std::vector<Domain> initial_;
  std::vector<Link> binary_;
};

void require_mono(const Hom& h) {
  if (!h.is_mono()) throw Error(ErrorKind::NotMono, "expected a monomorphism");
}

std::optional<Assignment> solve_checked(const Presheaf& m, const EqSystem& system,
                                        const std::vector<bool>* allowed,
                                        std::vector<std::size_t> priority = {}) {
  check_system(m, system);
  if (allowed) {
    for (const Equation& eq : system.eqs)
      if (const auto* a = std::get_if<Anchor>(&eq); a && !(*allowed)[idx(a->p)])
        throw Error(ErrorKind::BadParameters,
                    "parameter '" + m.label(a->p) + "' lies outside the restriction");
  }
  return EquationSolver(m, system, allowed, std::move(priority)).solve();
}

}  // namespace

void check_system(const Presheaf& M, const EqSystem& system) {
  const FinCat& cat = M.cat();
  auto var_sort = [&](std::size_t i) {
    if (i >= system.vars.size())
      throw Error(ErrorKind::SortMismatch, "equation refers to variable " + std::to_string(i) +
                                               " but there are only " +
                                               std::to_string(system.vars.size()));
    return system.vars[i].sort;
  };
  for (const auto& v : system.vars)
    if (idx(v.sort) >= cat.object_count())
      throw Error(ErrorKind::SortMismatch, "variable '" + v.name + "' has an unknown sort");
  for (std::size_t k = 0; k < system.eqs.size(); ++k) {
    std::string loc = "eqs[" + std::to_string(k) + "]";
    if (const auto* a = std::get_if<Anchor>(&system.eqs[k])) {
      if (cat.dom(a->f) != var_sort(a->i))
        throw Error(ErrorKind::SortMismatch, "arrow does not act on the variable's sort", loc);
      if (idx(a->p) >= M.size())
        throw Error(ErrorKind::BadParameters, "parameter is not an element of the presheaf", loc);
      if (cat.cod(a->f) != M.sort(a->p))
        throw Error(ErrorKind::SortMismatch, "parameter has the wrong sort", loc);
    } else {
      const auto& l = std::get<Link>(system.eqs[k]);
      if (cat.dom(l.f) != var_sort(l.i) || cat.dom(l.g) != var_sort(l.j))
        throw Error(ErrorKind::SortMismatch, "arrow does not act on the variable's sort", loc);
      if (cat.cod(l.f) != cat.cod(l.g))
        throw Error(ErrorKind::SortMismatch, "the two sides have different sorts", loc);
    }
  }
}

bool satisfies(const Presheaf& M, const EqSystem& system, const Assignment& assignment) {
  if (assignment.size() != system.vars.size()) return false;
  for (std::size_t v = 0; v < assignment.size(); ++v)
    if (idx(assignment[v]) >= M.size() || M.sort(assignment[v]) != system.vars[v].sort) return false;
  for (const Equation& eq : system.eqs) {
    if (const auto* a = std::get_if<Anchor>(&eq)) {
      if (M.act(a->f, assignment[a->i]) != a->p) return false;
    } else {
      const auto& l = std::get<Link>(eq);
      if (M.act(l.f, assignment[l.i]) != M.act(l.g, assignment[l.j])) return false;
    }
  }
  return true;
}

EqSystem map_parameters(const EqSystem& system, const Hom& h) {
  EqSystem out = system;
  for (Equation& eq : out.eqs)
    if (auto* a = std::get_if<Anchor>(&eq)) a->p = h(a->p);
  return out;
}

std::optional<Assignment> solve_system(const Presheaf& M, const EqSystem& system) {
  return solve_checked(M, system, nullptr);
}

std::optional<Assignment> solve_system(const SubPresheaf& within, const EqSystem& system) {
  return solve_checked(within.ambient(), system, &within.mask());
}

EqSystem canonical_system(const Hom& incl) {
  require_mono(incl);
  const Presheaf& L = incl.target();
  const FinCat& cat = L.cat();
  SubPresheaf image = incl.image();
  EqSystem system;
  std::vector<std::size_t> var_of(L.size(), 0);
  for (ElemId x : L.elements()) {
    if (image.contains(x)) continue;
    var_of[idx(x)] = system.vars.size();
    system.vars.push_back({L.label(x), L.sort(x)});
  }
  for (ElemId x : L.elements()) {
    if (image.contains(x)) continue;
    for (ArrowId f : cat.arrows_from(L.sort(x))) {
      if (cat.is_identity(f)) continue;
      ElemId y = L.act(f, x);
      if (image.contains(y))
        system.eqs.emplace_back(Anchor{f, var_of[idx(x)], y});
      else
        system.eqs.emplace_back(Link{f, var_of[idx(x)], cat.identity(cat.cod(f)), var_of[idx(y)]});
    }
  }
  return system;
}

std::optional<Hom> is_split(const Hom& incl) {
  require_mono(incl);
  const Presheaf& K = incl.source();
  const Presheaf& L = incl.target();
  EqSystem system = canonical_system(incl);

  // Parameters move from L back into K.
  auto back = incl.preimages();
  for (Equation& eq : system.eqs)
    if (auto* a = std::get_if<Anchor>(&eq)) a->p = *back[idx(a->p)];

  // Static tie-break: small sorts first, then the most constrained element.
  std::vector<std::size_t> degree(system.vars.size(), 0);
  for (const Equation& eq : system.eqs) {
    if (const auto* a = std::get_if<Anchor>(&eq)) {
      degree[a->i] += 2;
    } else {
      const auto& l = std::get<Link>(eq);
      ++degree[l.i];
      ++degree[l.j];
    }
  }
  std::vector<std::size_t> order(system.vars.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto sa = L.carrier_size(system.vars[a].sort);
    auto sb = L.carrier_size(system.vars[b].sort);
    if (sa != sb) return sa < sb;
    return degree[a] > degree[b];
  });
  std::vector<std::size_t> priority(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) priority[order[rank]] = rank;

  auto solution = solve_checked(K, system, nullptr, std::move(priority));
  if (!solution) return std::nullopt;

  std::vector<ElemId> r(L.size());
  for (ElemId k : K.elements()) r[idx(incl(k))] = k;
  std::size_t v = 0;
  SubPresheaf image = incl.image();
  for (ElemId x : L.elements())
    if (!image.contains(x)) r[idx(x)] = (*solution)[v++];
  return make_hom(incl.target_ptr(), incl.source_ptr(), std::move(r));
}

PurityCertificate is_pure(const Hom& incl) {
  PurityCertificate cert;
  if (auto r = is_split(incl)) {
    cert.pure = true;
    cert.retraction = std::move(r);
    return cert;
  }
  const Presheaf& K = incl.source();
  const Presheaf& L = incl.target();
  for (std::size_t x = 0; x < L.cat().object_count(); ++x) {
    ObjectId s = object_id(x);
    if (K.carrier_size(s) == 0 && L.carrier_size(s) > 0) {
      EqSystem closed;
      closed.vars.push_back({"y", s});
      cert.falsifier = Falsifier{std::move(closed), {L.carrier(s).front()}};
      return cert;
    }
  }
  EqSystem system = canonical_system(incl);
  Assignment witness;
  SubPresheaf image = incl.image();
  for (ElemId x : L.elements())
    if (!image.contains(x)) witness.push_back(x);
  cert.falsifier = Falsifier{std::move(system), std::move(witness)};
  return cert;
}

std::string_view to_string(EffectiveDiagnostic d) {
  switch (d) {
    case EffectiveDiagnostic::PureEffective: return "pure-effective";
    case EffectiveDiagnostic::InducedNotMono: return "induced-map-not-mono";
    case EffectiveDiagnostic::InducedNotPure: return "induced-map-not-pure";
  }
  return "unknown";
}

namespace {

void require_pure_inputs(const Square& square) {
  const std::pair<const Hom*, const char*> legs[] = {
      {&square.kA, "kA"}, {&square.kB, "kB"}, {&square.aL, "aL"}, {&square.bL, "bL"}};
  for (const auto& [h, name] : legs) {
    if (!h->is_mono() || !is_split(*h))
      throw Error(ErrorKind::NotPureInputs, std::string(name) + " is not a pure monomorphism", name);
  }
}

}  // namespace

PureEffectiveResult is_pure_effective(const Square& square) {
  require_pure_inputs(square);
  PureEffectiveResult result;
  result.pushout = pushout_monos(square.kA, square.kB);
  result.induced = induced_map(result.pushout, square);
  if (!result.induced.is_mono()) {
    result.diagnostic = EffectiveDiagnostic::InducedNotMono;
    return result;
  }
  result.purity = is_pure(result.induced);
  result.holds = result.purity->pure;
  result.diagnostic =
      result.holds ? EffectiveDiagnostic::PureEffective : EffectiveDiagnostic::InducedNotPure;
  return result;
}

AmalgamationResult amalgamate_solution(const Square& square, const PushoutResult& po,
                                       const EqSystem& system, const Assignment& solution_in_l) {
  require_pure_inputs(square);
  const Presheaf& P = *po.P;
  const Presheaf& L = square.L();
  Hom u = induced_map(po, square);
  if (!u.is_mono())
    throw Error(ErrorKind::ConnectivityPreconditionFailed, "the square is not a pullback");
  check_system(P, system);
  EqSystem in_l = map_parameters(system, u);
  if (!satisfies(L, in_l, solution_in_l))
    throw Error(ErrorKind::NotSolvableInL, "the given assignment does not solve the system in L");

  SubPresheaf a_img = square.aL.image();
  SubPresheaf b_img = square.bL.image();
  SubPresheaf k_img = compose(square.aL, square.kA).image();
  ConnectivityReport conn = components_outside(k_img);
  std::vector<bool> a_out(L.size()), b_out(L.size());
  for (ElemId x : L.elements()) {
    a_out[idx(x)] = a_img.contains(x) && !k_img.contains(x);
    b_out[idx(x)] = b_img.contains(x) && !k_img.contains(x);
  }
  auto ca = conn.closure(a_out);
  auto cb = conn.closure(b_out);
  for (std::size_t x = 0; x < L.size(); ++x)
    if (ca[x] && cb[x])
      throw Error(ErrorKind::ConnectivityPreconditionFailed,
                  "A \\ K and B \\ K are connected outside K through '" + L.label(elem_id(x)) + "'");

  // Which part of P a parameter comes from.
  enum class Part { K, A, B };
  auto a_pre = po.inA.preimages();
  auto b_pre = po.inB.preimages();
  auto part = [&](ElemId p) {
    if (a_pre[idx(p)] && b_pre[idx(p)]) return Part::K;
    return a_pre[idx(p)] ? Part::A : Part::B;
  };

  const std::size_t n = system.vars.size();
  const auto& sol = solution_in_l;

  // Variables and the parameters outside K are the vertices; equations that
  // survive the pruning of cross values in K are the edges.
  std::vector<std::size_t> parent(n + P.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

  for (const Equation& eq : system.eqs) {
    if (const auto* a = std::get_if<Anchor>(&eq)) {
      if (part(a->p) != Part::K) join(a->i, n + idx(a->p));
    } else {
      const auto& l = std::get<Link>(eq);
      if (l.i == l.j) continue;
      if (k_img.contains(L.act(l.f, sol[l.i]))) continue;
      join(l.i, l.j);
    }
  }
  std::vector<bool> root_touches_a(n + P.size(), false);
  for (ElemId p : P.elements())
    if (part(p) == Part::A) root_touches_a[find(n + idx(p))] = true;

  AmalgamationResult result;
  result.in_left_part.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.in_left_part[v] = root_touches_a[find(v)];
  const auto& left = result.in_left_part;

  EqSystem delta_a, delta_b;
  std::vector<std::size_t> local(n);
  for (std::size_t v = 0; v < n; ++v) {
    EqSystem& side = left[v] ? delta_a : delta_b;
    local[v] = side.vars.size();
    side.vars.push_back(system.vars[v]);
  }
  auto to_a = [&](ElemId p) { return *a_pre[idx(p)]; };
  auto to_b = [&](ElemId p) { return *b_pre[idx(p)]; };
  auto a_of_l = square.aL.preimages();
  auto b_of_l = square.bL.preimages();

  for (std::size_t k = 0; k < system.eqs.size(); ++k) {
    const Equation& eq = system.eqs[k];
    if (const auto* a = std::get_if<Anchor>(&eq)) {
      if (left[a->i]) {
        if (part(a->p) == Part::B)
          throw Error(ErrorKind::ConnectivityPreconditionFailed, "B-anchored variable on the A side");
        delta_a.eqs.emplace_back(Anchor{a->f, local[a->i], to_a(a->p)});
      } else {
        if (part(a->p) == Part::A)
          throw Error(ErrorKind::ConnectivityPreconditionFailed, "A-anchored variable on the B side");
        delta_b.eqs.emplace_back(Anchor{a->f, local[a->i], to_b(a->p)});
      }
      continue;
    }
    const auto& l = std::get<Link>(eq);
    if (left[l.i] == left[l.j]) {
      (left[l.i] ? delta_a : delta_b).eqs.emplace_back(Link{l.f, local[l.i], l.g, local[l.j]});
      continue;
    }
    ElemId d = L.act(l.f, sol[l.i]);
    if (!k_img.contains(d))
      throw Error(ErrorKind::ConnectivityPreconditionFailed, "cross equation value outside K");
    result.cross.push_back({k, d});
    auto [fa, ia, fb, ib] = left[l.i] ? std::tuple{l.f, l.i, l.g, l.j} : std::tuple{l.g, l.j, l.f, l.i};
    delta_a.eqs.emplace_back(Anchor{fa, local[ia], *a_of_l[idx(d)]});
    delta_b.eqs.emplace_back(Anchor{fb, local[ib], *b_of_l[idx(d)]});
  }

  auto sol_a = solve_system(square.A(), delta_a);
  auto sol_b = solve_system(square.B(), delta_b);
  if (!sol_a || !sol_b)
    throw Error(ErrorKind::Internal, "a pure leg failed to reflect a solvable system");

  result.assignment.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    result.assignment[v] = left[v] ? po.inA((*sol_a)[local[v]]) : po.inB((*sol_b)[local[v]]);
  return result;
}

}  // namespace purelab
