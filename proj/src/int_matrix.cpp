#include "subvar/int_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace subvar {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> vals) {
    rows_ = vals.size();
    cols_ = rows_ ? vals.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : vals) {
        if (r.size() != cols_)
            throw structural_error("IntMatrix: ragged initializer");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw structural_error("IntMatrix: shape mismatch in product");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = c * data_[i];
    return m;
}

IntMatrix IntMatrix::row(std::size_t i) const { return rows_slice(i, i + 1); }

IntMatrix IntMatrix::rows_slice(std::size_t r0, std::size_t r1) const {
    IntMatrix m(r1 - r0, cols_);
    std::copy(data_.begin() + r0 * cols_, data_.begin() + r1 * cols_, m.data_.begin());
    return m;
}

IntMatrix IntMatrix::cols_slice(std::size_t c0, std::size_t c1) const {
    IntMatrix m(rows_, c1 - c0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = c0; j < c1; ++j) m.at(i, j - c0) = at(i, j);
    return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix stack_rows(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols())
        throw structural_error("stack_rows: column mismatch");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

namespace {

/* Shared HNF pass over (work, optional transform). */
std::size_t hnf_in_place(IntMatrix& a, IntMatrix* u) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    Int g, s, t, q;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a.at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        a.swap_rows(r, piv);
        if (u) u->swap_rows(r, piv);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a.at(i, c) == 0) continue;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                       a.at(r, c).get_mpz_t(), a.at(i, c).get_mpz_t());
            Int ar = a.at(r, c) / g, ai = a.at(i, c) / g;
            for (std::size_t k = 0; k < cols; ++k) {
                Int nr = s * a.at(r, k) + t * a.at(i, k);
                Int ni = ar * a.at(i, k) - ai * a.at(r, k);
                a.at(r, k) = nr;
                a.at(i, k) = ni;
            }
            if (u) {
                for (std::size_t k = 0; k < u->cols(); ++k) {
                    Int nr = s * u->at(r, k) + t * u->at(i, k);
                    Int ni = ar * u->at(i, k) - ai * u->at(r, k);
                    u->at(r, k) = nr;
                    u->at(i, k) = ni;
                }
            }
        }
        if (a.at(r, c) < 0) {
            a.negate_row(r);
            if (u) u->negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_fdiv_q(q.get_mpz_t(), a.at(i, c).get_mpz_t(), a.at(r, c).get_mpz_t());
            if (q != 0) {
                a.add_row_multiple(i, r, -q);
                if (u) u->add_row_multiple(i, r, -q);
            }
        }
        ++r;
    }
    return r;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t rank = hnf_in_place(a, nullptr);
    return {a.rows_slice(0, rank), rank};
}

HnfTransform hnf_with_transform(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t rank = hnf_in_place(a, &u);
    return {a, u, rank};
}

std::vector<Int> snf_divisors(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<Int> divs;
    Int q;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        /* pull a minimal nonzero entry of the trailing block into (t,t) */
        std::size_t bi = t, bj = t;
        bool found = false;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a.at(i, j) == 0) continue;
                if (!found || cmp(abs(a.at(i, j)), abs(a.at(bi, bj))) < 0) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) break;
        a.swap_rows(t, bi);
        for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, t), a.at(i, bj));

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a.at(i, t) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
                a.add_row_multiple(i, t, -q);
                if (a.at(i, t) != 0) {
                    a.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a.at(t, j) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
                if (q != 0)
                    for (std::size_t i = 0; i < rows; ++i) a.at(i, j) -= q * a.at(i, t);
                if (a.at(t, j) != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, t), a.at(i, j));
                    clean = false;
                }
            }
            if (!clean) continue;
            /* pivot must divide the whole trailing block */
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(t, t).get_mpz_t())) {
                        a.add_row_multiple(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        divs.push_back(abs(a.at(t, t)));
    }
    return divs;
}

Int kernel_count_mod(const IntMatrix& m, const Int& a) {
    if (a < 1) throw structural_error("kernel_count_mod: modulus must be positive");
    std::vector<Int> divs = snf_divisors(m);
    Int count;
    mpz_pow_ui(count.get_mpz_t(), a.get_mpz_t(),
               static_cast<unsigned long>(m.cols() - divs.size()));
    Int g;
    for (const Int& s : divs) {
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), s.get_mpz_t());
        count *= g;
    }
    return count;
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw structural_error("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1, t;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

Int pfaffian(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n || n % 2 != 0)
        throw structural_error("pfaffian: need even-dimensional square matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (m.at(i, j) != -m.at(j, i))
                throw structural_error("pfaffian: matrix not skew-symmetric");
    if (n == 0) return 1;

    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m.at(i, j));

    Rat pf(1);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;

    std::size_t sz = n;
    while (sz > 0) {
        std::size_t col = 1;
        while (col < sz && a[idx[0]][idx[col]] == 0) ++col;
        if (col == sz) return 0;
        if (col != 1) {
            std::swap(idx[1], idx[col]);
            pf = -pf;
        }
        const Rat piv = a[idx[0]][idx[1]];
        pf *= piv;
        for (std::size_t i = 2; i < sz; ++i)
            for (std::size_t j = i + 1; j < sz; ++j) {
                Rat upd = (a[idx[0]][idx[i]] * a[idx[1]][idx[j]] -
                           a[idx[0]][idx[j]] * a[idx[1]][idx[i]]) /
                          piv;
                a[idx[i]][idx[j]] -= upd;
                a[idx[j]][idx[i]] = -a[idx[i]][idx[j]];
            }
        idx.erase(idx.begin(), idx.begin() + 2);
        sz -= 2;
    }
    pf.canonicalize();
    if (pf.get_den() != 1)
        throw invariant_error("pfaffian: elimination produced a non-integer");
    return pf.get_num();
}

}  // namespace subvar
