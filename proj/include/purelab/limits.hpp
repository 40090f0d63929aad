#pragma once

#include <string>

#include "purelab/presheaf.hpp"

namespace purelab {

/// A commuting square
///
///     A --aL--> L
///     ^         ^
///    kA        bL
///     |         |
///     K --kB--> B
struct Square {
  Hom kA;
  Hom kB;
  Hom aL;
  Hom bL;

  const Presheaf& K() const { return kA.source(); }
  const Presheaf& A() const { return kA.target(); }
  const Presheaf& B() const { return kB.target(); }
  const Presheaf& L() const { return aL.target(); }
};

/// Checks that the four arrows form a commuting square.
Square make_square(Hom kA, Hom kB, Hom aL, Hom bL);

/// Element naming for pushout_monos. Elements coming from K are named
/// base_prefix + (K name, or the A name when base_takes_left_name); the
/// remaining A and B elements get left_prefix / right_prefix + name +
/// right_suffix.
struct PushoutNaming {
  std::string base_prefix = "K/";
  std::string left_prefix = "A/";
  std::string right_prefix = "B/";
  std::string right_suffix;
  bool base_takes_left_name = false;
};

struct PushoutResult {
  PresheafPtr P;
  Hom inA;
  Hom inB;
  Hom kA;
  Hom kB;
};

/// Pushout of a span of monos: A and B glued along K. Within each sort the
/// elements of P are ordered K part, then A \ K, then B \ K.
PushoutResult pushout_monos(const Hom& kA, const Hom& kB, const PushoutNaming& naming = {});

/// The pushout viewed as a square into P.
Square as_square(const PushoutResult& po);

/// Pullback of a cospan of monos: K is the intersection of the two images,
/// materialized with the element names of L.
Square pullback_monos(const Hom& aL, const Hom& bL);

/// The unique u: P -> L with u inA = aL and u inB = bL.
Hom induced_map(const PushoutResult& po, const Square& square);

/// Whether K is (via aL kA) exactly the intersection of the images of aL, bL.
bool is_pullback_square(const Square& square);

}  // namespace purelab
