#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

namespace {

std::vector<std::vector<Rat>> to_rational(const IntMatrix& m) {
    std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rat(m.at(i, j));
    return a;
}

/* Row echelon form in place; returns (rank, det of the leading square part
   if square, sign-tracked). */
std::size_t echelon(std::vector<std::vector<Rat>>& a, Rat* det_out) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Rat det = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) {
            det = 0;
            continue;
        }
        if (piv != r) {
            std::swap(a[piv], a[r]);
            det = -det;
        }
        det *= a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            const Rat f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    if (det_out) *det_out = det;
    return r;
}

/* Solve x * basis = v over Q; empty result if inconsistent. */
std::vector<Rat> solve_left(const IntMatrix& basis, const std::vector<Int>& v) {
    const std::size_t r = basis.rows(), n = basis.cols();
    /* augmented transposed system: n equations in r unknowns */
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(r + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = Rat(basis.at(j, i));
        a[i][r] = Rat(v[i]);
    }
    echelon(a, nullptr);
    std::vector<Rat> x(r, 0);
    /* back substitution over the echelon rows */
    for (std::size_t i = n; i-- > 0;) {
        std::size_t lead = 0;
        while (lead < r && a[i][lead] == 0) ++lead;
        if (lead == r) {
            if (a[i][r] != 0) return {};
            continue;
        }
        Rat s = a[i][r];
        for (std::size_t j = lead + 1; j < r; ++j) s -= a[i][j] * x[j];
        x[lead] = s / a[i][lead];
    }
    /* verify (covers underdetermined corner cases) */
    for (std::size_t i = 0; i < n; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < r; ++j) s += x[j] * Rat(basis.at(j, i));
        if (s != Rat(v[i])) return {};
    }
    return x;
}

struct Gauss {
    long x = 0, y = 0;
    Gauss conj() const { return {x, -y}; }
    Gauss operator*(const Gauss& b) const { return {x * b.x - y * b.y, x * b.y + y * b.x}; }
    Gauss operator-(const Gauss& b) const { return {x - b.x, y - b.y}; }
    long norm() const { return x * x + y * y; }
    bool is_zero() const { return x == 0 && y == 0; }
};

long round_div(long num, long den) {
    const long q = num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
    return q;
}

Gauss gauss_gcd(Gauss a, Gauss b) {
    while (!b.is_zero()) {
        const Gauss num = a * b.conj();
        const long n = b.norm();
        const Gauss q{round_div(num.x, n), round_div(num.y, n)};
        a = a - q * b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace

Rat det_rational(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::logic_error("oracle det: square only");
    if (m.rows() == 0) return 1;
    auto a = to_rational(m);
    Rat det;
    echelon(a, &det);
    return det;
}

Int det_expansion(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols() || n > 6) throw std::logic_error("oracle det: bad size");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Int total = 0;
    do {
        /* sign by counting inversions */
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Int term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= m.at(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return n == 0 ? Int(1) : total;
}

bool in_lattice(const IntMatrix& basis, const std::vector<Int>& v) {
    const auto x = solve_left(basis, v);
    if (x.empty() && basis.rows() > 0) return false;
    if (basis.rows() == 0) {
        for (const Int& c : v)
            if (c != 0) return false;
        return true;
    }
    for (const Rat& c : x)
        if (c.get_den() != 1) return false;
    return true;
}

bool same_span(const IntMatrix& a, const IntMatrix& b) {
    const auto contains = [](const IntMatrix& sup, const IntMatrix& sub) {
        for (std::size_t i = 0; i < sub.rows(); ++i) {
            std::vector<Int> v(sub.cols());
            for (std::size_t j = 0; j < sub.cols(); ++j) v[j] = sub.at(i, j);
            if (sup.rows() == 0) {
                for (const Int& c : v)
                    if (c != 0) return false;
                continue;
            }
            if (solve_left(sup, v).empty()) return false;
        }
        return true;
    };
    return contains(a, b) && contains(b, a);
}

Int kernel_count_brute(const IntMatrix& m, long a) {
    const std::size_t n = m.cols();
    std::vector<long> v(n, 0);
    Int count = 0;
    while (true) {
        bool in_kernel = true;
        for (std::size_t i = 0; i < m.rows() && in_kernel; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < n; ++j) s += m.at(i, j) * v[j];
            if (s % a != 0) in_kernel = false;
        }
        if (in_kernel) ++count;
        std::size_t k = 0;
        while (k < n && ++v[k] == a) v[k++] = 0;
        if (k == n) break;
    }
    return count;
}

Int points_in_ellipsoid_brute(const GramForm& q, const Int& c) {
    if (c < 0) return 0;
    const std::size_t n = q.rank();
    /* safe box per coordinate: x_j^2 <= c * (G^{-1})_{jj} */
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = q.at(i, j);
        aug[i][n + i] = 1;
    }
    /* Gauss-Jordan */
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (aug[piv][col] == 0) ++piv;
        std::swap(aug[piv], aug[col]);
        const Rat p = aug[col][col];
        for (auto& e : aug[col]) e /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            const Rat f = aug[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[col][j];
        }
    }
    std::vector<long> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Rat bound2 = Rat(c) * aug[j][n + j];
        long b = 0;
        while (Rat((b + 1)) * (b + 1) <= bound2) ++b;
        lo[j] = -b;
        hi[j] = b;
    }
    std::vector<long> v(lo);
    Int count = 0;
    while (true) {
        std::vector<Int> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = v[j];
        if (q.eval(x) <= c) ++count;
        std::size_t k = 0;
        while (k < n && ++v[k] > hi[k]) v[k] = lo[k], ++k;
        if (k == n) break;
    }
    return count;
}

Int primitive_pair_count(const Int& d1, const Int& d2, const Int& t) {
    Int count = (t >= d2) ? 1 : 0;  // (0, 1); (0, b) is imprimitive for b > 1
    for (Int a = 1; a * a * d1 <= t; ++a)
        for (Int b = 0; a * a * d1 + b * b * d2 <= t; ++b) {
            if (gcd(a, b) != 1) continue;
            count += (b == 0) ? 1 : 2;  // (a, b) and (a, -b) differ up to sign
        }
    return count;
}

std::vector<Int> gaussian_pair_counts_upto(long t_max) {
    long r = 0;
    while ((r + 1) * (r + 1) <= t_max) ++r;
    std::map<std::array<long, 4>, long> orbits;  // canonical rep -> norm sum
    for (long x1 = -r; x1 <= r; ++x1)
        for (long y1 = -r; y1 <= r; ++y1) {
            const Gauss alpha{x1, y1};
            if (alpha.norm() > t_max) continue;
            for (long x2 = -r; x2 <= r; ++x2)
                for (long y2 = -r; y2 <= r; ++y2) {
                    const Gauss beta{x2, y2};
                    if (alpha.is_zero() && beta.is_zero()) continue;
                    const long norm_sum = alpha.norm() + beta.norm();
                    if (norm_sum > t_max) continue;
                    if (gauss_gcd(alpha, beta).norm() != 1) continue;
                    std::array<long, 4> best{alpha.x, alpha.y, beta.x, beta.y};
                    Gauss ua = alpha, ub = beta;
                    const Gauss i{0, 1};
                    for (int k = 0; k < 3; ++k) {
                        ua = ua * i;
                        ub = ub * i;
                        const std::array<long, 4> cand{ua.x, ua.y, ub.x, ub.y};
                        if (cand < best) best = cand;
                    }
                    orbits.emplace(best, norm_sum);
                }
        }
    std::vector<Int> counts(t_max + 1, Int(0));
    for (const auto& [rep, norm_sum] : orbits) ++counts[norm_sum];
    for (long t = 1; t <= t_max; ++t) counts[t] += counts[t - 1];
    return counts;
}

Int gaussian_pair_count(const Int& t) {
    const long tl = t.get_si();
    if (tl < 0) return 0;
    return gaussian_pair_counts_upto(tl).back();
}

}  // namespace oracle
