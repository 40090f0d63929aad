#pragma once

#include <filesystem>

#include "purelab/presheaf.hpp"

namespace purelab::fixtures {

/// X <-f- Z -g-> Y with no non-identity composites.
CatPtr span();
/// Z/2 as a one-object category; the non-unit element is "s".
CatPtr c2();
/// The poset 0 < 1 < 2.
CatPtr chain3();
/// The poset a < b, a < c.
CatPtr vee();
/// The monoid {1, 2, 3, inf} where every product of two non-units is inf.
CatPtr nxtrunc();
/// Objects [0], [1] and the opposites of all monotone maps between them.
CatPtr delta1_op();

/// A table with a missing associativity instance (rejected by validation).
RawCategory nonassociative_raw();

/// cat(Z, -) over span(), with the identity element named "idZ".
PresheafPtr rep_z();
/// The regular act of c2(): elements e and s.
PresheafPtr c2_regular();
/// A one-point act over c2().
PresheafPtr c2_point();
/// Two fixed points p, q over c2().
PresheafPtr c2_two_points();

/// Writes every canonical fixture file into `dir`.
void write_all(const std::filesystem::path& dir);

}  // namespace purelab::fixtures
