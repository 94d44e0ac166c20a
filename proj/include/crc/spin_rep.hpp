// spin_rep.hpp: spin-s irreducible generators for a single qudit

#pragma once

#include "crc/half_integer.hpp"
#include "crc/numeric.hpp"

namespace crc {

/// The spin-s generator triple on C^d, d = 2s+1, in the basis ordered
/// m = -s, ..., s (index 0 is m = -s).
struct SpinRep {
    int d = 2;
    HalfInt s;
    ComplexMatrix sigma_x;
    ComplexMatrix sigma_y;
    ComplexMatrix sigma_z;
    ComplexMatrix sigma_plus;
    ComplexMatrix sigma_minus;
};

/// Ladder construction: <m+1|S_+|m> = sqrt(s(s+1) - m(m+1)),
/// S_x = (S_+ + S_-)/2, S_y = (S_+ - S_-)/(2i). Throws BadDimension if d < 2.
SpinRep make_spin_rep(int d);

/// max over the three su(2) relations of |[A,B] - iC|_F.
double check_su2_relations(const SpinRep& rep);

}  // namespace crc
