#pragma once
#include <string>

#include "subvar/enumerate.hpp"

namespace subvar {

struct CountSample {
    Int t;
    Int n;
    std::vector<Int> by_dim;  // counts at dimension 0..g
};

struct CountTable {
    std::vector<CountSample> samples;
    std::string config_digest;
};

/* N(t) for each requested t: one enumeration at the largest t, then prefix
   counts by chi. */
CountTable counting_function(const VarietyConfig& v, const std::vector<Int>& t_values,
                             int threads = 1, std::string config_digest = "");

/* q (k h + 2)(k - 1) with k the maximal multiplicity, h the maximal ring rank. */
Int theorem_bound_exponent(const VarietyConfig& v);

/* sum over blocks of (k_j h_j + 2)(k_j - 1), the sharper per-block exponent. */
Int per_block_exponent_sum(const VarietyConfig& v);

struct BoundReport {
    Int exponent_bound;
    Int per_block_sum_bound;
    double fitted_slope = 0.0;
    double margin = 0.25;
    bool conclusive = false;  // enough upper-half samples with N >= 2
    bool pass = false;        // slope <= exponent_bound + margin
    std::size_t samples_used = 0;
};

/* Least-squares slope of log N vs log t over the upper half of the t-range. */
BoundReport fit_exponent(const CountTable& table, const VarietyConfig& v);

struct IsogenyCheck {
    Int index;
    Int t_max;
    bool pass = false;
    std::string detail;
};

/* Transfer the enumeration along the sublattice m of index d and assert
   N(t) <= N_transferred(d t) and N_transferred(t) <= N(t) for t <= t_max. */
IsogenyCheck check_isogeny_inequalities(const VarietyConfig& v, const LatticeBasis& m,
                                        const Int& t_max, int threads = 1);

/* Sublattice doubling the first ncopies copies (index 4^ncopies). */
LatticeBasis doubled_copy_sublattice(const VarietyConfig& v, std::size_t ncopies);

/* factor * Z^2g (index factor^2g). */
LatticeBasis scaled_sublattice(const VarietyConfig& v, const Int& factor);

struct PermutationCheck {
    bool pass = true;
    bool applicable = false;  // some block has two copies of equal degree
    std::string detail;
};

/* Swapping two equal-degree copies of a block must permute the enumerated
   set (and therefore fix N). */
PermutationCheck check_permutation_invariance(const VarietyConfig& v, const Int& t,
                                              int threads = 1);

}  // namespace subvar
