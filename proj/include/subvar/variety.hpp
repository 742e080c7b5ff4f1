#pragma once
#include <string>
#include <vector>

#include "subvar/end_ring.hpp"
#include "subvar/lattice.hpp"

namespace subvar {

/* k isogenous elliptic copies sharing one endomorphism ring, each copy i
   carrying a split-polarization degree d_i. */
struct FactorBlock {
    std::string name;
    EndRing ring;
    std::size_t multiplicity = 1;
    std::vector<Int> degrees;
};

/* Product of pairwise non-isogenous blocks with the split polarization,
   modeled on the lattice Z^2g: copy i contributes coordinates (2i, 2i+1)
   and the alternating form d_i * [[0,1],[-1,0]]. */
class VarietyConfig {
  public:
    explicit VarietyConfig(std::vector<FactorBlock> blocks);

    const std::vector<FactorBlock>& blocks() const { return blocks_; }
    std::size_t q() const { return blocks_.size(); }
    std::size_t copies() const { return copy_degrees_.size(); }
    std::size_t ambient() const { return 2 * copies(); }
    std::size_t copy_offset(std::size_t block) const { return copy_offsets_[block]; }
    const std::vector<Int>& copy_degrees() const { return copy_degrees_; }
    const IntMatrix& riemann_form() const { return e_; }

    /* Row-action matrices; a rational subspace is the span of an abelian
       subvariety iff it is stable under all of them. */
    const std::vector<IntMatrix>& stability_ops() const { return ops_; }

    Int chi_total() const { return chi_total_; }

  private:
    std::vector<FactorBlock> blocks_;
    std::vector<Int> copy_degrees_;
    std::vector<std::size_t> copy_offsets_;
    IntMatrix e_;
    std::vector<IntMatrix> ops_;
    Int chi_total_ = 1;
};

struct Subvariety {
    LatticeBasis lattice;  // saturated, HNF-canonical
    Int chi = 1;
    std::size_t dim = 0;
    std::string provenance;
};

/* |Pf| of e restricted to the rows of s; 1 on the zero lattice; structural
   error on odd rank or degenerate restriction. */
Int chi_restricted(const IntMatrix& e, const LatticeBasis& s);

bool is_stable(const VarietyConfig& v, const LatticeBasis& s);

/* Saturate, canonicalize, check stability, compute chi. */
Subvariety make_subvariety(const VarietyConfig& v, const IntMatrix& rows,
                           std::string provenance);

Subvariety complement(const VarietyConfig& v, const Subvariety& s);

/* [Z^2g : lattice(a) + lattice(b)] for lattices meeting trivially with ranks
   summing to 2g. */
Int sum_isogeny_degree(const VarietyConfig& v, const Subvariety& a, const Subvariety& b);

struct PullbackResult {
    LatticeBasis lattice;  // intersection with the sublattice
    Int d_s;               // [lattice(s) : transferred]
};

/* Transfer s along the isogeny given by a finite-index stable sublattice m. */
PullbackResult isogeny_pullback(const VarietyConfig& v, const LatticeBasis& m,
                                const Subvariety& s);

}  // namespace subvar
