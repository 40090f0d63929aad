#pragma once

#include "purelab/presheaf.hpp"

namespace purelab::verify {

/// Direct pp-type test for an inclusion K -> L. The elements of L \ K are
/// listed once as a tuple c and the full atomic diagram of c over K (every
/// true equation f.c_i = g.c_j and f.c_i = d with d in K) is solved in K by
/// plain backtracking, together with the nonemptiness sentence for every
/// sort inhabited in L.
///
/// Shares no code with the retraction search.
bool pp_type_pure(const Hom& incl);

/// Number of Homs source -> target found by brute force.
std::size_t count_homs(const Presheaf& source, const Presheaf& target);

}  // namespace purelab::verify
