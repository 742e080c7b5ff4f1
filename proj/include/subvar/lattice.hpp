#pragma once
#include "subvar/int_matrix.hpp"

namespace subvar {

/* A sublattice of Z^ambient_rank spanned by the rows of basis. */
struct LatticeBasis {
    std::size_t ambient_rank = 0;
    IntMatrix basis;  // r x ambient_rank, full row rank
    bool canonical_flag = false;

    std::size_t rank() const { return basis.rows(); }
    bool operator==(const LatticeBasis&) const = default;
};

/* HNF-canonical lattice from a (possibly redundant) generating set of rows. */
LatticeBasis lattice_from_rows(std::size_t ambient_rank, const IntMatrix& rows);

/* HNF basis of {x : x * m = 0}; the result is saturated by construction. */
IntMatrix kernel_basis(const IntMatrix& m);

/* Largest sublattice with the same rational span: (Q-span of b) intersect Z^n. */
LatticeBasis saturate(const LatticeBasis& b);

/* Saturated lattice {x : x * e * y^T = 0 for all rows y of b}. */
LatticeBasis orth_complement(const LatticeBasis& b, const IntMatrix& e);

/* [sup : sub] for lattices with equal rational span, sub contained in sup. */
Int index_in(const LatticeBasis& sub, const LatticeBasis& sup);

/* Index of the lattice spanned by rows inside its saturation. */
Int span_index(const IntMatrix& rows);

LatticeBasis intersect_lattices(const LatticeBasis& a, const LatticeBasis& b);

}  // namespace subvar
