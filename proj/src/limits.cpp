#include "purelab/limits.hpp"

#include <utility>
#include <vector>

namespace purelab {

namespace {

void require_mono(const Hom& h, const char* which) {
  if (!h.is_mono()) throw Error(ErrorKind::NotMono, std::string(which) + " is not a monomorphism");
}

bool same_map(const Hom& a, const Hom& b) {
  return same_presheaf(a.source(), b.source()) && same_presheaf(a.target(), b.target()) &&
         a.table() == b.table();
}

}  // namespace

Square make_square(Hom kA, Hom kB, Hom aL, Hom bL) {
  if (!same_presheaf(kA.source(), kB.source()))
    throw Error(ErrorKind::SourceMismatch, "kA and kB have different sources");
  if (!same_presheaf(aL.target(), bL.target()))
    throw Error(ErrorKind::TargetMismatch, "aL and bL have different targets");
  if (!same_presheaf(kA.target(), aL.source()))
    throw Error(ErrorKind::BadTyping, "kA does not land in the source of aL");
  if (!same_presheaf(kB.target(), bL.source()))
    throw Error(ErrorKind::BadTyping, "kB does not land in the source of bL");
  for (ElemId k : kA.source().elements())
    if (aL(kA(k)) != bL(kB(k)))
      throw Error(ErrorKind::NotCommuting,
                  "square does not commute at '" + kA.source().label(k) + "'");
  return Square{std::move(kA), std::move(kB), std::move(aL), std::move(bL)};
}

PushoutResult pushout_monos(const Hom& kA, const Hom& kB, const PushoutNaming& naming) {
  require_mono(kA, "kA");
  require_mono(kB, "kB");
  if (!same_presheaf(kA.source(), kB.source()))
    throw Error(ErrorKind::SourceMismatch, "the two legs have different sources");
  const Presheaf& K = kA.source();
  const Presheaf& A = kA.target();
  const Presheaf& B = kB.target();
  const FinCat& cat = K.cat();

  const auto a_from_k = kA.preimages();
  const auto b_from_k = kB.preimages();

  std::vector<std::vector<std::string>> carriers(cat.object_count());
  std::vector<std::size_t> k_local(K.size()), a_local(A.size()), b_local(B.size());
  std::vector<std::size_t> sort_offset(cat.object_count() + 1, 0);
  for (std::size_t x = 0; x < cat.object_count(); ++x) {
    ObjectId s = object_id(x);
    auto& names = carriers[x];
    for (ElemId k : K.carrier(s)) {
      k_local[idx(k)] = names.size();
      names.push_back(naming.base_prefix + (naming.base_takes_left_name ? A.name(kA(k)) : K.name(k)));
    }
    for (ElemId a : A.carrier(s)) {
      if (a_from_k[idx(a)]) {
        a_local[idx(a)] = k_local[idx(*a_from_k[idx(a)])];
        continue;
      }
      a_local[idx(a)] = names.size();
      names.push_back(naming.left_prefix + A.name(a));
    }
    for (ElemId b : B.carrier(s)) {
      if (b_from_k[idx(b)]) {
        b_local[idx(b)] = k_local[idx(*b_from_k[idx(b)])];
        continue;
      }
      b_local[idx(b)] = names.size();
      names.push_back(naming.right_prefix + B.name(b) + naming.right_suffix);
    }
    sort_offset[x + 1] = sort_offset[x] + names.size();
  }

  // Origin of each local slot: A element if it came from K or A, else B element.
  std::vector<std::vector<std::pair<bool, ElemId>>> origin(cat.object_count());
  for (std::size_t x = 0; x < cat.object_count(); ++x) origin[x].resize(carriers[x].size());
  for (ElemId a : A.elements()) origin[idx(A.sort(a))][a_local[idx(a)]] = {true, a};
  for (ElemId b : B.elements())
    if (!b_from_k[idx(b)]) origin[idx(B.sort(b))][b_local[idx(b)]] = {false, b};

  auto P = std::make_shared<const Presheaf>(
      build_presheaf(K.cat_ptr(), carriers, [&](ArrowId f, std::size_t i) {
        auto [from_a, e] = origin[idx(cat.dom(f))][i];
        return from_a ? a_local[idx(A.act(f, e))] : b_local[idx(B.act(f, e))];
      }));

  std::vector<ElemId> in_a(A.size()), in_b(B.size());
  for (ElemId a : A.elements()) in_a[idx(a)] = elem_id(sort_offset[idx(A.sort(a))] + a_local[idx(a)]);
  for (ElemId b : B.elements()) in_b[idx(b)] = elem_id(sort_offset[idx(B.sort(b))] + b_local[idx(b)]);

  return PushoutResult{P, make_hom(kA.target_ptr(), P, std::move(in_a)),
                       make_hom(kB.target_ptr(), P, std::move(in_b)), kA, kB};
}

Square as_square(const PushoutResult& po) { return make_square(po.kA, po.kB, po.inA, po.inB); }

Square pullback_monos(const Hom& aL, const Hom& bL) {
  require_mono(aL, "aL");
  require_mono(bL, "bL");
  if (!same_presheaf(aL.target(), bL.target()))
    throw Error(ErrorKind::TargetMismatch, "the two legs have different targets");
  SubPresheaf meet = intersect(aL.image(), bL.image());
  Materialized k = materialize(meet);
  const auto a_of = aL.preimages();
  const auto b_of = bL.preimages();
  std::vector<ElemId> ka(k.presheaf->size()), kb(k.presheaf->size());
  for (ElemId e : k.presheaf->elements()) {
    ElemId in_l = k.inclusion(e);
    ka[idx(e)] = *a_of[idx(in_l)];
    kb[idx(e)] = *b_of[idx(in_l)];
  }
  return make_square(make_hom(k.presheaf, aL.source_ptr(), std::move(ka)),
                     make_hom(k.presheaf, bL.source_ptr(), std::move(kb)), aL, bL);
}

Hom induced_map(const PushoutResult& po, const Square& square) {
  if (!same_map(po.kA, square.kA) || !same_map(po.kB, square.kB))
    throw Error(ErrorKind::IncompatibleSquare, "the square does not share its span with the pushout");
  const Presheaf& P = *po.P;
  constexpr auto unset = static_cast<ElemId>(~std::uint32_t{0});
  std::vector<ElemId> u(P.size(), unset);
  for (ElemId a : square.A().elements()) u[idx(po.inA(a))] = square.aL(a);
  for (ElemId b : square.B().elements()) {
    ElemId p = po.inB(b);
    if (u[idx(p)] != unset && u[idx(p)] != square.bL(b))
      throw Error(ErrorKind::IncompatibleSquare, "the square does not commute");
    u[idx(p)] = square.bL(b);
  }
  return make_hom(po.P, square.aL.target_ptr(), std::move(u));
}

bool is_pullback_square(const Square& square) {
  require_mono(square.aL, "aL");
  require_mono(square.bL, "bL");
  Hom diag = compose(square.aL, square.kA);
  if (!diag.is_mono()) return false;
  return diag.image() == intersect(square.aL.image(), square.bL.image());
}

}  // namespace purelab
