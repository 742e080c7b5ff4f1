#pragma once
#include <functional>
#include <vector>

#include "subvar/end_ring.hpp"
#include "subvar/int_matrix.hpp"

namespace subvar {

/* Positive definite symmetric rational Gram matrix, integer-valued on Z^H. */
class GramForm {
  public:
    /* entries row-major, length rank*rank; validates symmetry, positive
       definiteness and integer-valuedness. */
    GramForm(std::size_t rank, std::vector<Rat> entries);

    std::size_t rank() const { return rank_; }
    const Rat& at(std::size_t i, std::size_t j) const { return gram_[i * rank_ + j]; }

    /* Exact Q(v) = v * gram * v^T, always an integer. */
    Int eval(const std::vector<Int>& v) const;

    /* det(gram) = product of the LDL^T pivots, exact. */
    Rat det() const;

    /* Unit lower-triangular LDL^T factors, used by the ellipsoid scan. */
    const std::vector<Rat>& ldl_diag() const { return ldl_d_; }
    const Rat& ldl_lower(std::size_t i, std::size_t j) const { return ldl_l_[i * rank_ + j]; }

  private:
    std::size_t rank_ = 0;
    std::vector<Rat> gram_;
    std::vector<Rat> ldl_d_;
    std::vector<Rat> ldl_l_;
};

/* Gram form of f -> sum_i deg(f_i) * d_i on Hom into weighted target copies:
   block-diagonal, block i = d_i times the ring norm form. */
GramForm degree_form(const EndRing& ring, const std::vector<Int>& target_degrees);

/* Visit every v in Z^H with Q(v) <= c exactly once, with its exact Q(v);
   sequential, deterministic order. */
void scan_ellipsoid(const GramForm& q, const Int& c,
                    const std::function<void(const std::vector<Int>&, const Int&)>& visit);

/* All v with Q(v) <= c, sorted lexicographically; may scan outer-coordinate
   chunks in parallel, the result is schedule-independent. */
std::vector<std::vector<Int>> enumerate_in_ellipsoid(const GramForm& q, const Int& c,
                                                     int threads = 1);

/* #{v : Q(v) <= t^2}. */
Int phi_count(const GramForm& q, const Rat& t);

/* Leading volume term (pi^(H/2)/Gamma(H/2+1)) * t^H / sqrt(det gram);
   floating point, reporting only. */
double ellipsoid_volume_estimate(const GramForm& q, double t);

}  // namespace subvar
