#include "crc/spin_rep.hpp"

#include "crc/error.hpp"

#include <algorithm>
#include <cmath>

namespace crc {

SpinRep make_spin_rep(int d) {
    if (d < 2) throw Error(ErrorCode::BadDimension, "qudit dimension must be >= 2, got " + std::to_string(d));

    SpinRep rep;
    rep.d = d;
    rep.s = HalfInt::from_twice(d - 1);
    const double s = rep.s.value();

    rep.sigma_z = ComplexMatrix::Zero(d, d);
    rep.sigma_plus = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = -s + k;
        rep.sigma_z(k, k) = m;
        if (k + 1 < d) rep.sigma_plus(k + 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
    rep.sigma_minus = rep.sigma_plus.adjoint();
    rep.sigma_x = 0.5 * (rep.sigma_plus + rep.sigma_minus);
    rep.sigma_y = (rep.sigma_plus - rep.sigma_minus) / Complex(0.0, 2.0);
    return rep;
}

double check_su2_relations(const SpinRep& rep) {
    const Complex i(0.0, 1.0);
    const double r1 = (commutator(rep.sigma_x, rep.sigma_y) - i * rep.sigma_z).norm();
    const double r2 = (commutator(rep.sigma_z, rep.sigma_x) - i * rep.sigma_y).norm();
    const double r3 = (commutator(rep.sigma_y, rep.sigma_z) - i * rep.sigma_x).norm();
    return std::max({r1, r2, r3});
}

}  // namespace crc
