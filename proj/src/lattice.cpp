#include "subvar/lattice.hpp"

#include <vector>

namespace subvar {

LatticeBasis lattice_from_rows(std::size_t ambient_rank, const IntMatrix& rows) {
    if (rows.rows() > 0 && rows.cols() != ambient_rank)
        throw structural_error("lattice_from_rows: ambient rank mismatch");
    HnfResult h = hnf(rows.rows() ? rows : IntMatrix(0, ambient_rank));
    return {ambient_rank, h.h, true};
}

IntMatrix kernel_basis(const IntMatrix& m) {
    HnfTransform ht = hnf_with_transform(m);
    IntMatrix raw = ht.u.rows_slice(ht.rank, ht.u.rows());
    return hnf(raw).h;
}

LatticeBasis saturate(const LatticeBasis& b) {
    if (b.rank() == 0) return {b.ambient_rank, IntMatrix(0, b.ambient_rank), true};
    IntMatrix perp = kernel_basis(b.basis.transpose());
    IntMatrix sat = kernel_basis(perp.transpose());
    return {b.ambient_rank, sat, true};
}

LatticeBasis orth_complement(const LatticeBasis& b, const IntMatrix& e) {
    if (e.rows() != b.ambient_rank || e.cols() != b.ambient_rank)
        throw structural_error("orth_complement: pairing has wrong size");
    if (b.rank() == 0)
        return {b.ambient_rank, IntMatrix::identity(b.ambient_rank), true};
    IntMatrix k = kernel_basis(e * b.basis.transpose());
    return {b.ambient_rank, k, true};
}

namespace {

/* Solve y * s = v over Q for full-row-rank s; empty result if inconsistent. */
std::vector<Rat> solve_row(const IntMatrix& s, const IntMatrix& v) {
    const std::size_t r = s.rows(), n = s.cols();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(r + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = Rat(s.at(j, i));
        a[i][r] = Rat(v.at(0, i));
    }
    std::vector<std::size_t> pivot_row(r, n);
    std::size_t pr = 0;
    for (std::size_t c = 0; c < r && pr < n; ++c) {
        std::size_t piv = pr;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[pr], a[piv]);
        Rat inv = a[pr][c];
        for (std::size_t k = c; k <= r; ++k) a[pr][k] /= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pr || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t k = c; k <= r; ++k) a[i][k] -= f * a[pr][k];
        }
        pivot_row[c] = pr;
        ++pr;
    }
    for (std::size_t i = pr; i < n; ++i)
        if (a[i][r] != 0) return {};
    std::vector<Rat> y(r, Rat(0));
    for (std::size_t c = 0; c < r; ++c)
        if (pivot_row[c] < n) y[c] = a[pivot_row[c]][r];
    return y;
}

}  // namespace

Int index_in(const LatticeBasis& sub, const LatticeBasis& sup) {
    if (sub.ambient_rank != sup.ambient_rank)
        throw structural_error("index_in: ambient rank mismatch");
    if (sub.rank() != sup.rank())
        throw structural_error("index_in: rational spans differ in rank");
    const std::size_t r = sub.rank();
    if (r == 0) return 1;
    IntMatrix x(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rat> y = solve_row(sup.basis, sub.basis.row(i));
        if (y.empty())
            throw structural_error("index_in: rational spans differ");
        for (std::size_t j = 0; j < r; ++j) {
            if (y[j].get_den() != 1)
                throw structural_error("index_in: sub is not contained in sup");
            x.at(i, j) = y[j].get_num();
        }
    }
    std::vector<Int> divs = snf_divisors(x);
    if (divs.size() != r)
        throw structural_error("index_in: change of basis is singular");
    Int idx(1);
    for (const Int& d : divs) idx *= d;
    return idx;
}

Int span_index(const IntMatrix& rows) {
    std::vector<Int> divs = snf_divisors(rows);
    if (divs.size() != rows.rows())
        throw structural_error("span_index: rows are dependent");
    Int idx(1);
    for (const Int& d : divs) idx *= d;
    return idx;
}

LatticeBasis intersect_lattices(const LatticeBasis& a, const LatticeBasis& b) {
    if (a.ambient_rank != b.ambient_rank)
        throw structural_error("intersect_lattices: ambient rank mismatch");
    if (a.rank() == 0 || b.rank() == 0)
        return {a.ambient_rank, IntMatrix(0, a.ambient_rank), true};
    IntMatrix stacked = stack_rows(a.basis, -b.basis);
    IntMatrix ker = kernel_basis(stacked);
    IntMatrix gens = ker.cols_slice(0, a.rank()) * a.basis;
    return lattice_from_rows(a.ambient_rank, gens);
}

}  // namespace subvar
