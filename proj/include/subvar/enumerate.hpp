#pragma once
#include "subvar/quadform.hpp"
#include "subvar/variety.hpp"

namespace subvar {

/* Graph parameters (a, f): image of x -> (a x, f_1 x, ..., f_{k-1} x). */
struct GraphParams {
    Int a;
    std::vector<Int> f;  // h*(k-1) coordinates
};

/* Thresholds for the graph slice: a <= t/m and Q(f) <= a (t - a m). */
struct SliceBounds {
    Int m;
    Int t;
    Int a_max() const { return t / m; }
    Int c(const Int& a) const { return a * (t - a * m); }
};

/* deg(a,f) = a: the kernel of the stacked f-action on the a-torsion has
   exactly a elements. */
bool graph_degree_condition(const EndRing& ring, std::size_t k, const GraphParams& p);

/* chi = (a^2 m + Q(f)) / a; non-integrality is an engine bug. */
Int chi_graph_formula(const SliceBounds& bounds, const GraphParams& p, const GramForm& q);

/* Block-local (ambient = 2k): saturated image lattice of (a, f), projection
   degree onto the distinguished copy equal to a. */
Subvariety build_graph_subvariety(const VarietyConfig& block_variety, const GraphParams& p,
                                  std::size_t first_copy = 0);

/* All graph subvarieties through the distinguished copy with chi <= t. */
std::vector<Subvariety> enumerate_slice(const FactorBlock& block, std::size_t first_copy,
                                        const Int& t, int threads = 1);

/* All abelian subvarieties of B^k with chi <= t, block-local coordinates. */
std::vector<Subvariety> enumerate_block(const FactorBlock& block, const Int& t,
                                        int threads = 1);

/* Cross-block products with chi product <= t, global coordinates. */
std::vector<Subvariety> assemble_products(const VarietyConfig& v,
                                          const std::vector<std::vector<Subvariety>>& per_block,
                                          const Int& t);

/* Product count without materializing. */
Int count_products(const std::vector<std::vector<Subvariety>>& per_block, const Int& t);

/* Full enumeration, sorted by (dim, chi, basis bytes). */
std::vector<Subvariety> enumerate_all(const VarietyConfig& v, const Int& t, int threads = 1);

/* Sort by (dim, chi, basis bytes); the canonical output order. */
void sort_canonical(std::vector<Subvariety>& list);

/* Single-block helper configs used by the enumerators and tests. */
VarietyConfig block_as_variety(const FactorBlock& block);

}  // namespace subvar
