#pragma once
#include <vector>

#include "subvar/int_matrix.hpp"

namespace subvar {

/* Endomorphism ring of an elliptic factor: Z, or an imaginary quadratic
   order Z[w] with w^2 = s*w - p (discriminant s^2 - 4p < 0). */
struct EndRing {
    enum class Kind { integers, order };
    Kind kind = Kind::integers;
    Int s = 0, p = 0;

    static EndRing integers() { return {}; }
    static EndRing order(const Int& s, const Int& p);

    std::size_t h() const { return kind == Kind::integers ? 1 : 2; }
    Int discriminant() const { return s * s - 4 * p; }

    /* Row-action matrix of the element with coordinates c (length h) on the
       rank-2 period lattice: v -> v * M.  For Z: m*I.  For an order, the
       basis is {1, w} and w acts by [[0,1],[-p,s]]. */
    IntMatrix row_action(const std::vector<Int>& c) const;

    /* Degree of the element as an isogeny: det(row_action) = x^2+sxy+py^2. */
    Int norm(const std::vector<Int>& c) const;

    bool operator==(const EndRing&) const = default;
};

}  // namespace subvar
