#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subvar/lattice.hpp"

using namespace subvar;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int spread) {
    std::uniform_int_distribution<int> d(-spread, spread);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

std::vector<Int> row_vec(const IntMatrix& m, std::size_t i) {
    std::vector<Int> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m.at(i, j);
    return v;
}

}  // namespace

TEST_CASE("kernel basis annihilates and is saturated") {
    std::mt19937 rng(17);
    for (int it = 0; it < 80; ++it) {
        const auto m = random_matrix(rng, 2 + it % 4, 1 + it % 3, 8);
        const auto k = kernel_basis(m);
        CHECK((k.rows() == 0 || (k * m).is_zero()));
        CHECK(k.rows() == m.rows() - hnf(m).rank);
        for (const auto& s : snf_divisors(k)) CHECK(s == 1);
    }
}

TEST_CASE("lattice_from_rows canonicalizes generating sets") {
    const IntMatrix gens{{2, 0, 2, 0}, {0, 1, 0, 1}, {2, 1, 2, 1}};
    const auto l = lattice_from_rows(4, gens);
    CHECK(l.rank() == 2);
    CHECK(l.basis.str() == "[[2,0,2,0],[0,1,0,1]]");
    CHECK(oracle::same_span(l.basis, gens));
    /* a redundant, rescrambled generating set gives the same basis */
    const IntMatrix gens2{{2, 1, 2, 1}, {4, 1, 4, 1}, {2, 0, 2, 0}};
    CHECK(lattice_from_rows(4, gens2).basis == l.basis);
}

TEST_CASE("saturate") {
    const auto l = lattice_from_rows(4, IntMatrix{{2, 0, 0, 0}, {0, 0, 6, 0}});
    const auto s = saturate(l);
    CHECK(s.basis.str() == "[[1,0,0,0],[0,0,1,0]]");
    CHECK(saturate(s).basis == s.basis);

    /* the CM graph (a=2, f=1+w) over Z[i]: saturation divides the span by 2 */
    const auto cm = lattice_from_rows(4, IntMatrix{{2, 0, 1, 1}, {0, 2, -1, 1}});
    CHECK(span_index(cm.basis) == 2);
    CHECK(saturate(cm).basis.str() == "[[1,1,0,1],[0,2,-1,1]]");

    std::mt19937 rng(37);
    for (int it = 0; it < 60; ++it) {
        const auto m = random_matrix(rng, 2, 4, 6);
        if (hnf(m).rank != 2) continue;
        const auto sat = saturate(lattice_from_rows(4, m));
        CHECK(oracle::same_span(sat.basis, m));
        CHECK(span_index(sat.basis) == 1);
        /* the original rows lie inside the saturation */
        for (std::size_t i = 0; i < m.rows(); ++i)
            CHECK(oracle::in_lattice(sat.basis, row_vec(m, i)));
    }
}

TEST_CASE("span index") {
    CHECK(span_index(IntMatrix{{2, 0}, {0, 3}}) == 6);
    CHECK(span_index(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}}) == 1);
    CHECK_THROWS_AS(span_index(IntMatrix{{1, 1}, {2, 2}}), structural_error);
}

TEST_CASE("index_in") {
    const auto sup = lattice_from_rows(3, IntMatrix{{1, 0, 1}, {0, 1, 0}});
    const auto sub = lattice_from_rows(3, IntMatrix{{2, 0, 2}, {0, 3, 0}});
    CHECK(index_in(sub, sup) == 6);
    CHECK(index_in(sup, sup) == 1);

    /* different span -> structural */
    const auto other = lattice_from_rows(3, IntMatrix{{1, 0, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(index_in(other, sup), structural_error);
    /* not contained (proper superlattice of sup in the same span) */
    CHECK_THROWS_AS(index_in(sup, sub), structural_error);

    std::mt19937 rng(41);
    for (int it = 0; it < 40; ++it) {
        const auto m = random_matrix(rng, 3, 5, 5);
        if (hnf(m).rank != 3) continue;
        const auto base = lattice_from_rows(5, m);
        IntMatrix mult(3, 3);
        mult.at(0, 0) = 1 + it % 3;
        mult.at(1, 1) = 2;
        mult.at(2, 2) = 3;
        mult.at(0, 1) = it % 5;
        const auto sub2 = lattice_from_rows(5, mult * base.basis);
        CHECK(index_in(sub2, base) == (1 + it % 3) * 6);
    }
}

TEST_CASE("orthogonal complement under an alternating form") {
    const IntMatrix e{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
    const auto diag = lattice_from_rows(4, IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}});
    const auto perp = orth_complement(diag, e);
    CHECK(perp.rank() == 2);
    CHECK((diag.basis * e * perp.basis.transpose()).is_zero());
    CHECK(span_index(perp.basis) == 1);

    /* rank 0 complements to the full lattice */
    const auto full = orth_complement(lattice_from_rows(4, IntMatrix(0, 4)), e);
    CHECK(full.basis == IntMatrix::identity(4));
}

TEST_CASE("lattice intersection") {
    const auto a = lattice_from_rows(2, IntMatrix{{2, 0}, {0, 1}});
    const auto b = lattice_from_rows(2, IntMatrix{{1, 0}, {0, 3}});
    const auto c = intersect_lattices(a, b);
    CHECK(c.basis.str() == "[[2,0],[0,3]]");

    std::mt19937 rng(43);
    for (int it = 0; it < 40; ++it) {
        const auto ma = random_matrix(rng, 2, 4, 4);
        const auto mb = random_matrix(rng, 2, 4, 4);
        if (hnf(ma).rank != 2 || hnf(mb).rank != 2) continue;
        const auto la = lattice_from_rows(4, ma), lb = lattice_from_rows(4, mb);
        const auto m = intersect_lattices(la, lb);
        for (std::size_t i = 0; i < m.rank(); ++i) {
            CHECK(oracle::in_lattice(la.basis, row_vec(m.basis, i)));
            CHECK(oracle::in_lattice(lb.basis, row_vec(m.basis, i)));
        }
        /* completeness: a vector of a lies in the intersection iff it lies in b */
        std::uniform_int_distribution<int> coef(-6, 6);
        for (int k = 0; k < 10; ++k) {
            std::vector<Int> v(4, 0);
            for (std::size_t i = 0; i < 2; ++i) {
                const int c = coef(rng);
                for (std::size_t j = 0; j < 4; ++j) v[j] += c * la.basis.at(i, j);
            }
            CHECK(oracle::in_lattice(m.basis, v) == oracle::in_lattice(lb.basis, v));
        }
    }
}
