#include "subvar/variety.hpp"

#include <utility>

namespace subvar {

namespace {

/* Identical 2x2 row action on every copy of one block, zero elsewhere. */
IntMatrix embed_per_copy(std::size_t ambient, std::size_t first_copy, std::size_t k,
                         const IntMatrix& m) {
    IntMatrix op(ambient, ambient);
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t o = 2 * (first_copy + c);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) op.at(o + i, o + j) = m.at(i, j);
    }
    return op;
}

}  // namespace

VarietyConfig::VarietyConfig(std::vector<FactorBlock> blocks)
    : blocks_(std::move(blocks)) {
    if (blocks_.empty())
        throw structural_error("VarietyConfig: no blocks");
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        const FactorBlock& b = blocks_[j];
        if (b.multiplicity < 1)
            throw structural_error("VarietyConfig: multiplicity must be positive");
        if (b.degrees.size() != b.multiplicity)
            throw structural_error("VarietyConfig: degree list length != multiplicity");
        for (const Int& d : b.degrees)
            if (d < 1) throw structural_error("VarietyConfig: degrees must be positive");
        for (std::size_t i = 0; i < j; ++i)
            if (blocks_[i].ring == b.ring)
                throw structural_error("VarietyConfig: two blocks share one ring");
        copy_offsets_.push_back(copy_degrees_.size());
        for (const Int& d : b.degrees) {
            copy_degrees_.push_back(d);
            chi_total_ *= d;
        }
    }

    const std::size_t n = ambient();
    e_ = IntMatrix(n, n);
    for (std::size_t c = 0; c < copies(); ++c) {
        e_.at(2 * c, 2 * c + 1) = copy_degrees_[c];
        e_.at(2 * c + 1, 2 * c) = -copy_degrees_[c];
    }

    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        const FactorBlock& b = blocks_[j];
        const std::size_t off = copy_offsets_[j], k = b.multiplicity;
        if (b.ring.kind == EndRing::Kind::integers) {
            ops_.push_back(embed_per_copy(n, off, k, IntMatrix{{1, 0}, {0, 0}}));
            ops_.push_back(embed_per_copy(n, off, k, IntMatrix{{0, 1}, {0, 0}}));
            ops_.push_back(embed_per_copy(n, off, k, IntMatrix{{0, 0}, {1, 0}}));
        } else {
            ops_.push_back(embed_per_copy(n, off, k, b.ring.row_action({0, 1})));
        }
    }
}

Int chi_restricted(const IntMatrix& e, const LatticeBasis& s) {
    if (s.rank() % 2 != 0)
        throw structural_error("chi: lattice rank is odd");
    if (s.rank() == 0) return 1;
    IntMatrix g = s.basis * e * s.basis.transpose();
    Int pf = pfaffian(g);
    if (pf == 0)
        throw structural_error("chi: form degenerates on the lattice");
    return abs(pf);
}

bool is_stable(const VarietyConfig& v, const LatticeBasis& s) {
    if (s.rank() == 0) return true;
    const std::size_t r = hnf(s.basis).rank;
    for (const IntMatrix& op : v.stability_ops()) {
        IntMatrix moved = s.basis * op;
        if (hnf(stack_rows(s.basis, moved)).rank != r) return false;
    }
    return true;
}

Subvariety make_subvariety(const VarietyConfig& v, const IntMatrix& rows,
                           std::string provenance) {
    LatticeBasis sat = saturate(lattice_from_rows(v.ambient(), rows));
    if (!is_stable(v, sat))
        throw structural_error("make_subvariety: span not stable under the ring actions");
    Subvariety s;
    s.chi = chi_restricted(v.riemann_form(), sat);
    s.dim = sat.rank() / 2;
    s.lattice = std::move(sat);
    s.provenance = std::move(provenance);
    return s;
}

Subvariety complement(const VarietyConfig& v, const Subvariety& s) {
    LatticeBasis orth = orth_complement(s.lattice, v.riemann_form());
    return make_subvariety(v, orth.basis, "complement(" + s.provenance + ")");
}

Int sum_isogeny_degree(const VarietyConfig& v, const Subvariety& a, const Subvariety& b) {
    if (a.lattice.rank() + b.lattice.rank() != v.ambient())
        throw structural_error("sum_isogeny_degree: ranks do not sum to 2g");
    Int d = det(stack_rows(a.lattice.basis, b.lattice.basis));
    if (d == 0)
        throw structural_error("sum_isogeny_degree: lattices overlap");
    return abs(d);
}

PullbackResult isogeny_pullback(const VarietyConfig& v, const LatticeBasis& m,
                                const Subvariety& s) {
    if (m.rank() != v.ambient())
        throw structural_error("isogeny_pullback: sublattice has infinite index");
    /* the sublattice itself must carry the ring actions integrally */
    IntMatrix mh = hnf(m.basis).h;
    for (const IntMatrix& op : v.stability_ops())
        if (hnf(stack_rows(m.basis, m.basis * op)).h != mh)
            throw structural_error("isogeny_pullback: sublattice not stable under the ring actions");
    LatticeBasis transferred = intersect_lattices(s.lattice, m);
    Int d_s = index_in(transferred, s.lattice);
    return {std::move(transferred), std::move(d_s)};
}

}  // namespace subvar
