#include "subvar/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <sstream>
#include <utility>

namespace subvar {

VarietyConfig block_as_variety(const FactorBlock& block) {
    return VarietyConfig({block});
}

namespace {

std::string params_str(const GraphParams& p) {
    std::ostringstream os;
    os << "graph(a=" << p.a << ",f=[";
    for (std::size_t i = 0; i < p.f.size(); ++i) os << (i ? "," : "") << p.f[i];
    os << "])";
    return os.str();
}

/* Rows of the stacked action matrix of f on the source lattice. */
IntMatrix stacked_action(const EndRing& ring, std::size_t k, const std::vector<Int>& f) {
    const std::size_t h = ring.h();
    IntMatrix m(2 * (k - 1), 2);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::vector<Int> c(f.begin() + i * h, f.begin() + (i + 1) * h);
        IntMatrix a = ring.row_action(c);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t j = 0; j < 2; ++j) m.at(2 * i + r, j) = a.at(r, j);
    }
    return m;
}

/* #{v in (Z/a)^2 : M v = 0} for the stacked 2-column action matrix, via the
   gcd of entries and the gcd of 2x2 minors. */
Int kernel_count_two_cols(const IntMatrix& m, const Int& a) {
    Int s1 = 0, m2 = 0, t;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < 2; ++j)
            mpz_gcd(s1.get_mpz_t(), s1.get_mpz_t(), m.at(i, j).get_mpz_t());
    if (s1 == 0) return a * a;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            t = m.at(i, 0) * m.at(j, 1) - m.at(i, 1) * m.at(j, 0);
            mpz_gcd(m2.get_mpz_t(), m2.get_mpz_t(), t.get_mpz_t());
        }
    Int g1, g2;
    mpz_gcd(g1.get_mpz_t(), a.get_mpz_t(), s1.get_mpz_t());
    if (m2 == 0) return a * g1;
    Int s2 = m2 / s1;
    mpz_gcd(g2.get_mpz_t(), a.get_mpz_t(), s2.get_mpz_t());
    return g1 * g2;
}

}  // namespace

bool graph_degree_condition(const EndRing& ring, std::size_t k, const GraphParams& p) {
    if (p.a < 1) throw structural_error("graph_degree_condition: a must be positive");
    if (p.f.size() != ring.h() * (k - 1))
        throw structural_error("graph_degree_condition: wrong f length");
    if (p.a == 1) return true;
    if (k == 1) return false;  // kernel has a^2 > a elements
    IntMatrix m = stacked_action(ring, k, p.f);
    return kernel_count_two_cols(m, p.a) == p.a;
}

Int chi_graph_formula(const SliceBounds& bounds, const GraphParams& p, const GramForm& q) {
    Int num = p.a * p.a * bounds.m + q.eval(p.f);
    if (!mpz_divisible_p(num.get_mpz_t(), p.a.get_mpz_t()))
        throw invariant_error("chi_graph_formula: a does not divide a^2 m + Q(f)");
    return num / p.a;
}

Subvariety build_graph_subvariety(const VarietyConfig& block_variety, const GraphParams& p,
                                  std::size_t first_copy) {
    const FactorBlock& block = block_variety.blocks().at(0);
    const std::size_t k = block.multiplicity, h = block.ring.h();
    if (!graph_degree_condition(block.ring, k, p))
        throw structural_error("build_graph_subvariety: degree condition rejected (a,f)");
    IntMatrix rows(2, 2 * k);
    std::size_t chunk = 0;
    for (std::size_t c = 0; c < k; ++c) {
        IntMatrix m(2, 2);
        if (c == first_copy) {
            m.at(0, 0) = p.a;
            m.at(1, 1) = p.a;
        } else {
            std::vector<Int> fc(p.f.begin() + chunk * h, p.f.begin() + (chunk + 1) * h);
            m = block.ring.row_action(fc);
            ++chunk;
        }
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t j = 0; j < 2; ++j) rows.at(r, 2 * c + j) = m.at(r, j);
    }
    Subvariety s = make_subvariety(block_variety, rows, params_str(p));
    /* [Z^2 : projection onto the distinguished copy] is the projection degree */
    Int proj = abs(det(s.lattice.basis.cols_slice(2 * first_copy, 2 * first_copy + 2)));
    if (proj != p.a)
        throw invariant_error("build_graph_subvariety: projection degree != a");
    return s;
}

std::vector<Subvariety> enumerate_slice(const FactorBlock& block, std::size_t first_copy,
                                        const Int& t, int threads) {
    if (first_copy >= block.multiplicity)
        throw structural_error("enumerate_slice: no such copy");
    std::vector<Subvariety> out;
    if (t < 1) return out;
    VarietyConfig bv = block_as_variety(block);
    const std::size_t k = block.multiplicity;
    const Int m = block.degrees[first_copy];

    if (k == 1) {
        if (m <= t) out.push_back(build_graph_subvariety(bv, {1, {}}, 0));
        return out;
    }

    std::vector<Int> other;
    for (std::size_t c = 0; c < k; ++c)
        if (c != first_copy) other.push_back(block.degrees[c]);
    GramForm q = degree_form(block.ring, other);
    SliceBounds bounds{m, t};

    auto scan_a = [&](const Int& a) {
        std::vector<Subvariety> part;
        Int c = bounds.c(a);
        scan_ellipsoid(q, c, [&](const std::vector<Int>& f, const Int& qval) {
            if (a > 1 && qval == 0) return;  // f = 0 has kernel a^2
            GraphParams p{a, f};
            if (!graph_degree_condition(block.ring, k, p)) return;
            Int num = a * a * m + qval;
            if (!mpz_divisible_p(num.get_mpz_t(), a.get_mpz_t()))
                throw invariant_error("enumerate_slice: chi formula non-integral");
            Int chi = num / a;
            if (chi > t)
                throw invariant_error("enumerate_slice: ellipsoid bound admitted chi > t");
            Subvariety s = build_graph_subvariety(bv, p, first_copy);
            if (s.chi != chi)
                throw invariant_error("enumerate_slice: formula chi != Pfaffian chi for " +
                                      s.provenance);
            part.push_back(std::move(s));
        });
        return part;
    };

    const Int amax = bounds.a_max();
    const long amax_l = amax.get_si();
    std::vector<std::vector<Subvariety>> parts(amax_l > 0 ? amax_l : 0);
    if (threads <= 1 || amax_l <= 1) {
        for (long a = 1; a <= amax_l; ++a) parts[a - 1] = scan_a(Int(a));
    } else {
        std::atomic<long> next{1};
        auto worker = [&]() {
            for (;;) {
                long a = next.fetch_add(1);
                if (a > amax_l) return;
                parts[a - 1] = scan_a(Int(a));
            }
        };
        std::vector<std::future<void>> futs;
        for (int i = 0; i < threads && i < amax_l; ++i)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& fu : futs) fu.get();
    }

    std::map<std::string, std::string> seen;
    for (auto& part : parts)
        for (auto& s : part) {
            auto [it, fresh] = seen.emplace(s.lattice.basis.str(), s.provenance);
            if (!fresh)
                throw invariant_error("enumerate_slice: duplicate lattice from " +
                                      it->second + " and " + s.provenance);
            out.push_back(std::move(s));
        }
    sort_canonical(out);
    return out;
}

namespace {

/* Prepend one zero copy (two zero columns) to a block-local subvariety. */
Subvariety embed_after_first(const Subvariety& s) {
    Subvariety e = s;
    const std::size_t r = s.lattice.rank(), n = s.lattice.ambient_rank;
    IntMatrix b(r, n + 2);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) b.at(i, j + 2) = s.lattice.basis.at(i, j);
    e.lattice = LatticeBasis{n + 2, std::move(b), true};
    e.provenance = "embed(" + s.provenance + ")";
    return e;
}

}  // namespace

std::vector<Subvariety> enumerate_block(const FactorBlock& block, const Int& t,
                                        int threads) {
    std::vector<Subvariety> out;
    if (t < 1) return out;
    VarietyConfig bv = block_as_variety(block);
    const std::size_t k = block.multiplicity;
    const IntMatrix& e = bv.riemann_form();

    if (k == 1) {
        out.push_back(make_subvariety(bv, IntMatrix(0, 2), "0"));
        if (block.degrees[0] <= t)
            out.push_back(make_subvariety(bv, IntMatrix::identity(2), "B"));
        sort_canonical(out);
        return out;
    }

    FactorBlock sub = block;
    sub.multiplicity = k - 1;
    sub.degrees.assign(block.degrees.begin() + 1, block.degrees.end());
    std::vector<Subvariety> inner = enumerate_block(sub, t, threads);

    const Int m = block.degrees[0];
    const Int f_cap = t / m;
    Int max_chi_f = 0;
    std::vector<const Subvariety*> fs;
    for (const Subvariety& s : inner)
        if (s.chi <= f_cap) {
            fs.push_back(&s);
            max_chi_f = std::max(max_chi_f, s.chi);
        }

    for (const Subvariety& s : inner) out.push_back(embed_after_first(s));

    if (!fs.empty()) {
        Int cap_coarse = t * t / m, cap_sharp = t * max_chi_f;
        const Int& slice_cap = cap_sharp < cap_coarse ? cap_sharp : cap_coarse;
        std::vector<Subvariety> ts = enumerate_slice(block, 0, slice_cap, threads);
        for (const Subvariety* fp : fs) {
            const Subvariety f = embed_after_first(*fp);
            const Int t_cap = t * f.chi;
            for (const Subvariety& tt : ts) {
                if (tt.chi > t_cap) continue;
                if (f.lattice.rank() > 0) {
                    if (intersect_lattices(f.lattice, tt.lattice).rank() != 0) continue;
                    if (!(f.lattice.basis * e * tt.lattice.basis.transpose()).is_zero())
                        continue;
                }
                IntMatrix stacked = stack_rows(f.lattice.basis, tt.lattice.basis);
                Subvariety s = make_subvariety(
                    bv, stacked, "sum(F=" + f.provenance + ",T=" + tt.provenance + ")");
                Int a_s = span_index(stacked);
                if (a_s * s.chi != f.chi * tt.chi)
                    throw invariant_error("enumerate_block: a*chi(S) != chi(F)*chi(T) for " +
                                          s.provenance);
                if (s.chi > t) continue;
                if (a_s * m > tt.chi)
                    throw invariant_error("enumerate_block: a*m > chi(T) for " + s.provenance);
                if (tt.chi > s.chi * f.chi)
                    throw invariant_error("enumerate_block: chi(T) > chi(S)chi(F) for " +
                                          s.provenance);
                out.push_back(std::move(s));
            }
        }
    }

    std::map<std::string, std::string> seen;
    for (const Subvariety& s : out) {
        auto [it, fresh] = seen.emplace(s.lattice.basis.str(), s.provenance);
        if (!fresh)
            throw invariant_error("enumerate_block: duplicate lattice from " + it->second +
                                  " and " + s.provenance);
    }
    sort_canonical(out);
    return out;
}

std::vector<Subvariety> assemble_products(const VarietyConfig& v,
                                          const std::vector<std::vector<Subvariety>>& per_block,
                                          const Int& t) {
    if (per_block.size() != v.q())
        throw structural_error("assemble_products: list count != block count");
    std::vector<Subvariety> out;

    std::vector<std::vector<const Subvariety*>> sorted(per_block.size());
    for (std::size_t j = 0; j < per_block.size(); ++j) {
        for (const Subvariety& s : per_block[j]) sorted[j].push_back(&s);
        std::sort(sorted[j].begin(), sorted[j].end(),
                  [](const Subvariety* a, const Subvariety* b) { return a->chi < b->chi; });
    }

    std::vector<const Subvariety*> pick(per_block.size());
    auto emit = [&]() {
        IntMatrix basis(0, v.ambient());
        Int chi(1);
        std::size_t dim = 0;
        std::ostringstream prov;
        prov << "product(";
        for (std::size_t j = 0; j < pick.size(); ++j) {
            const Subvariety& s = *pick[j];
            const std::size_t off = 2 * v.copy_offset(j);
            IntMatrix rows(s.lattice.rank(), v.ambient());
            for (std::size_t i = 0; i < s.lattice.rank(); ++i)
                for (std::size_t c = 0; c < s.lattice.ambient_rank; ++c)
                    rows.at(i, off + c) = s.lattice.basis.at(i, c);
            basis = stack_rows(basis, rows);
            chi *= s.chi;
            dim += s.dim;
            prov << (j ? ";" : "") << s.provenance;
        }
        prov << ")";
        /* block-diagonal stack of HNF bases is already the HNF */
        Subvariety s;
        s.lattice = LatticeBasis{v.ambient(), std::move(basis), true};
        s.chi = std::move(chi);
        s.dim = dim;
        s.provenance = prov.str();
        out.push_back(std::move(s));
    };

    auto rec = [&](auto&& self, std::size_t j, const Int& rem) -> void {
        if (j == sorted.size()) {
            emit();
            return;
        }
        for (const Subvariety* s : sorted[j]) {
            if (s->chi > rem) break;
            pick[j] = s;
            self(self, j + 1, rem / s->chi);
        }
    };

    if (v.q() == 1) {
        for (const Subvariety& s : per_block[0])
            if (s.chi <= t) out.push_back(s);
    } else {
        rec(rec, 0, t);
    }

    std::map<std::string, std::string> seen;
    for (const Subvariety& s : out) {
        auto [it, fresh] = seen.emplace(s.lattice.basis.str(), s.provenance);
        if (!fresh)
            throw invariant_error("assemble_products: duplicate lattice from " + it->second +
                                  " and " + s.provenance);
    }
    sort_canonical(out);
    return out;
}

Int count_products(const std::vector<std::vector<Subvariety>>& per_block, const Int& t) {
    std::vector<std::vector<Int>> chis(per_block.size());
    for (std::size_t j = 0; j < per_block.size(); ++j) {
        for (const Subvariety& s : per_block[j]) chis[j].push_back(s.chi);
        std::sort(chis[j].begin(), chis[j].end());
    }
    auto rec = [&](auto&& self, std::size_t j, const Int& rem) -> Int {
        if (rem < 1) return 0;
        if (j + 1 == chis.size())
            return Int(std::upper_bound(chis[j].begin(), chis[j].end(), rem) -
                       chis[j].begin());
        Int n = 0;
        for (const Int& c : chis[j]) {
            if (c > rem) break;
            n += self(self, j + 1, rem / c);
        }
        return n;
    };
    if (chis.empty()) return 0;
    return rec(rec, 0, t);
}

std::vector<Subvariety> enumerate_all(const VarietyConfig& v, const Int& t, int threads) {
    std::vector<std::vector<Subvariety>> per_block;
    for (const FactorBlock& b : v.blocks()) per_block.push_back(enumerate_block(b, t, threads));
    return assemble_products(v, per_block, t);
}

void sort_canonical(std::vector<Subvariety>& list) {
    std::sort(list.begin(), list.end(), [](const Subvariety& a, const Subvariety& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        int c = cmp(a.chi, b.chi);
        if (c != 0) return c < 0;
        return a.lattice.basis.str() < b.lattice.basis.str();
    });
}

}  // namespace subvar
