#pragma once

#include <optional>
#include <random>

#include "purelab/purity.hpp"

namespace purelab::verify {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

/// A coproduct of random representables (total size at most `max_total`)
/// followed by the quotient by a random congruence.
PresheafPtr random_presheaf(const CatPtr& cat, Rng& rng, std::size_t max_total);

/// The subpresheaf generated by a random subset of elements.
SubPresheaf random_subpresheaf(const PresheafPtr& L, Rng& rng);

/// The Hom between two materialized subpresheaves of one ambient presheaf
/// with small contained in big.
Hom inclusion_between(const Materialized& small, const Materialized& big);

struct SpanOfMonos {
  Hom kA;
  Hom kB;
};

/// K <= A and K <= B for random subpresheaves A, B of a random presheaf.
SpanOfMonos random_span_of_monos(const CatPtr& cat, Rng& rng, std::size_t max_total);

/// A pullback square of pure monos found by rejection sampling. With
/// `require_proper`, K is nonempty and strictly smaller than A and B, which
/// are strictly smaller than L.
std::optional<Square> random_pure_pullback_square(const CatPtr& cat, Rng& rng, std::size_t max_total,
                                                  bool require_proper = false, std::size_t attempts = 5000);

struct SystemInstance {
  EqSystem system;        // parameters in u.source()
  Assignment solution;    // in u.target()
};

/// A system posed in the source of the mono u, built from equations that a
/// random tuple of target elements satisfies.
SystemInstance random_solvable_system(const Hom& u, Rng& rng, std::size_t max_vars);

}  // namespace purelab::verify
