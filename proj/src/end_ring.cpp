#include "subvar/end_ring.hpp"

namespace subvar {

EndRing EndRing::order(const Int& s, const Int& p) {
    EndRing r;
    r.kind = Kind::order;
    r.s = s;
    r.p = p;
    if (r.discriminant() >= 0)
        throw structural_error("EndRing: order requires s^2 - 4p < 0");
    return r;
}

IntMatrix EndRing::row_action(const std::vector<Int>& c) const {
    if (c.size() != h())
        throw structural_error("EndRing: coordinate count does not match rank");
    IntMatrix m(2, 2);
    if (kind == Kind::integers) {
        m.at(0, 0) = c[0];
        m.at(1, 1) = c[0];
    } else {
        m.at(0, 0) = c[0];
        m.at(0, 1) = c[1];
        m.at(1, 0) = -p * c[1];
        m.at(1, 1) = c[0] + s * c[1];
    }
    return m;
}

Int EndRing::norm(const std::vector<Int>& c) const {
    if (c.size() != h())
        throw structural_error("EndRing: coordinate count does not match rank");
    if (kind == Kind::integers) return c[0] * c[0];
    return c[0] * c[0] + s * c[0] * c[1] + p * c[1] * c[1];
}

}  // namespace subvar
