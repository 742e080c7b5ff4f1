#include "subvar/counting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "subvar/errors.hpp"

namespace subvar {

CountTable counting_function(const VarietyConfig& v, const std::vector<Int>& t_values,
                             int threads, std::string config_digest) {
    CountTable out;
    out.config_digest = std::move(config_digest);
    if (t_values.empty()) return out;
    Int t_max = t_values.front();
    for (const Int& t : t_values) {
        if (t < 0) throw input_error("counting_function: negative bound");
        if (t > t_max) t_max = t;
    }
    const auto all = enumerate_all(v, t_max, threads);

    const std::size_t g = v.copies();
    std::vector<std::vector<Int>> chi_by_dim(g + 1);
    for (const auto& s : all) chi_by_dim[s.dim].push_back(s.chi);
    for (auto& chis : chi_by_dim) std::sort(chis.begin(), chis.end());

    for (const Int& t : t_values) {
        CountSample sample;
        sample.t = t;
        sample.n = 0;
        sample.by_dim.assign(g + 1, Int(0));
        for (std::size_t d = 0; d <= g; ++d) {
            const auto& chis = chi_by_dim[d];
            const auto hi = std::upper_bound(chis.begin(), chis.end(), t);
            sample.by_dim[d] = Int(static_cast<long>(hi - chis.begin()));
            sample.n += sample.by_dim[d];
        }
        out.samples.push_back(std::move(sample));
    }
    return out;
}

Int theorem_bound_exponent(const VarietyConfig& v) {
    Int k = 1, h = 1;
    for (const auto& b : v.blocks()) {
        if (Int(static_cast<long>(b.multiplicity)) > k)
            k = Int(static_cast<long>(b.multiplicity));
        if (Int(static_cast<long>(b.ring.h())) > h) h = Int(static_cast<long>(b.ring.h()));
    }
    return Int(static_cast<long>(v.q())) * (k * h + 2) * (k - 1);
}

Int per_block_exponent_sum(const VarietyConfig& v) {
    Int sum = 0;
    for (const auto& b : v.blocks()) {
        const Int k(static_cast<long>(b.multiplicity));
        const Int h(static_cast<long>(b.ring.h()));
        sum += (k * h + 2) * (k - 1);
    }
    return sum;
}

BoundReport fit_exponent(const CountTable& table, const VarietyConfig& v) {
    BoundReport report;
    report.exponent_bound = theorem_bound_exponent(v);
    report.per_block_sum_bound = per_block_exponent_sum(v);
    if (table.samples.empty()) return report;

    Int t_max = 0;
    for (const auto& s : table.samples)
        if (s.t > t_max) t_max = s.t;

    std::vector<double> xs, ys;
    for (const auto& s : table.samples) {
        if (2 * s.t <= t_max || s.t < 1 || s.n < 2) continue;
        xs.push_back(std::log(s.t.get_d()));
        ys.push_back(std::log(s.n.get_d()));
    }
    report.samples_used = xs.size();
    if (xs.size() < 5) return report;

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double var = sxx - sx * sx / n;
    if (var <= 0) return report;

    report.fitted_slope = (sxy - sx * sy / n) / var;
    report.conclusive = true;
    report.pass = report.fitted_slope <= report.exponent_bound.get_d() + report.margin;
    return report;
}

IsogenyCheck check_isogeny_inequalities(const VarietyConfig& v, const LatticeBasis& m,
                                        const Int& t_max, int threads) {
    if (m.ambient_rank != v.ambient() || m.rank() != v.ambient())
        throw input_error("isogeny check: sublattice must have full rank");
    if (t_max < 1) throw input_error("isogeny check: bound must be positive");

    IsogenyCheck out;
    out.index = span_index(m.basis);
    out.t_max = t_max;

    const auto all = enumerate_all(v, out.index * t_max, threads);
    std::vector<Int> chi_here, chi_transferred;
    chi_here.reserve(all.size());
    chi_transferred.reserve(all.size());
    for (const auto& s : all) {
        const auto pulled = isogeny_pullback(v, m, s);
        const Int chi_star = chi_restricted(v.riemann_form(), pulled.lattice);
        if (chi_star != pulled.d_s * s.chi)
            throw invariant_error("isogeny check: pullback chi != index * chi");
        if (chi_star < s.chi || chi_star > out.index * s.chi)
            throw invariant_error("isogeny check: pullback chi outside [chi, d chi]");
        chi_here.push_back(s.chi);
        chi_transferred.push_back(chi_star);
    }
    std::sort(chi_here.begin(), chi_here.end());
    std::sort(chi_transferred.begin(), chi_transferred.end());

    const auto count_le = [](const std::vector<Int>& chis, const Int& t) {
        return static_cast<long>(std::upper_bound(chis.begin(), chis.end(), t) - chis.begin());
    };
    out.pass = true;
    for (Int t = 1; t <= t_max; ++t) {
        const long n_here = count_le(chi_here, t);
        const long n_there = count_le(chi_transferred, t);
        const long n_here_stretched = count_le(chi_transferred, out.index * t);
        if (n_there <= n_here && n_here <= n_here_stretched) continue;
        out.pass = false;
        std::ostringstream msg;
        msg << "t=" << t << ": N=" << n_here << " N'=" << n_there
            << " N'(d t)=" << n_here_stretched;
        out.detail = msg.str();
        break;
    }
    return out;
}

LatticeBasis doubled_copy_sublattice(const VarietyConfig& v, std::size_t ncopies) {
    if (ncopies > v.copies()) throw input_error("doubled_copy_sublattice: too many copies");
    IntMatrix m = IntMatrix::identity(v.ambient());
    for (std::size_t i = 0; i < 2 * ncopies; ++i) m.at(i, i) = 2;
    return lattice_from_rows(v.ambient(), m);
}

LatticeBasis scaled_sublattice(const VarietyConfig& v, const Int& factor) {
    if (factor < 1) throw input_error("scaled_sublattice: factor must be positive");
    return lattice_from_rows(v.ambient(), IntMatrix::identity(v.ambient()).scaled(factor));
}

PermutationCheck check_permutation_invariance(const VarietyConfig& v, const Int& t,
                                              int threads) {
    PermutationCheck out;
    std::vector<std::array<std::size_t, 2>> swaps;
    for (std::size_t j = 0; j < v.q(); ++j) {
        const auto& b = v.blocks()[j];
        const std::size_t base = v.copy_offset(j);
        for (std::size_t c1 = 0; c1 < b.multiplicity; ++c1)
            for (std::size_t c2 = c1 + 1; c2 < b.multiplicity; ++c2)
                if (b.degrees[c1] == b.degrees[c2]) swaps.push_back({base + c1, base + c2});
    }
    out.applicable = !swaps.empty();
    if (!out.applicable) {
        out.detail = "no equal-degree copy pair";
        return out;
    }

    const auto all = enumerate_all(v, t, threads);
    std::set<std::string> base_set;
    for (const auto& s : all) base_set.insert(s.lattice.basis.str());

    for (const auto& sw : swaps) {
        IntMatrix p = IntMatrix::identity(v.ambient());
        p.swap_rows(2 * sw[0], 2 * sw[1]);
        p.swap_rows(2 * sw[0] + 1, 2 * sw[1] + 1);
        std::set<std::string> mapped;
        for (const auto& s : all) mapped.insert(hnf(s.lattice.basis * p).h.str());
        if (mapped == base_set) continue;
        out.pass = false;
        std::ostringstream msg;
        msg << "swap of copies " << sw[0] << "," << sw[1] << " does not fix the set";
        out.detail = msg.str();
        return out;
    }
    return out;
}

}  // namespace subvar
