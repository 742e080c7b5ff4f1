#include "subvar/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

namespace subvar {

GramForm::GramForm(std::size_t rank, std::vector<Rat> entries)
    : rank_(rank), gram_(std::move(entries)) {
    if (rank_ == 0 || gram_.size() != rank_ * rank_)
        throw structural_error("GramForm: bad dimensions");
    for (auto& e : gram_) e.canonicalize();
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (at(i, j) != at(j, i))
                throw structural_error("GramForm: matrix not symmetric");
    for (std::size_t i = 0; i < rank_; ++i) {
        if (at(i, i).get_den() != 1)
            throw structural_error("GramForm: diagonal entry not an integer");
        for (std::size_t j = i + 1; j < rank_; ++j) {
            Rat twice = 2 * at(i, j);
            twice.canonicalize();
            if (twice.get_den() != 1)
                throw structural_error("GramForm: off-diagonal entry not a half-integer");
        }
    }
    /* LDL^T; positive pivots certify positive definiteness */
    ldl_d_.assign(rank_, Rat(0));
    ldl_l_.assign(rank_ * rank_, Rat(0));
    for (std::size_t j = 0; j < rank_; ++j) {
        Rat d = at(j, j);
        for (std::size_t k = 0; k < j; ++k)
            d -= ldl_l_[j * rank_ + k] * ldl_l_[j * rank_ + k] * ldl_d_[k];
        if (d <= 0)
            throw structural_error("GramForm: matrix not positive definite");
        ldl_d_[j] = d;
        ldl_l_[j * rank_ + j] = 1;
        for (std::size_t i = j + 1; i < rank_; ++i) {
            Rat v = at(i, j);
            for (std::size_t k = 0; k < j; ++k)
                v -= ldl_l_[i * rank_ + k] * ldl_l_[j * rank_ + k] * ldl_d_[k];
            ldl_l_[i * rank_ + j] = v / d;
        }
    }
}

Int GramForm::eval(const std::vector<Int>& v) const {
    if (v.size() != rank_)
        throw structural_error("GramForm: vector length mismatch");
    /* Q = sum G_ii v_i^2 + sum_{i<j} (2 G_ij) v_i v_j, all terms integral */
    Rat q(0);
    for (std::size_t i = 0; i < rank_; ++i) {
        q += at(i, i) * v[i] * v[i];
        for (std::size_t j = i + 1; j < rank_; ++j) q += 2 * at(i, j) * v[i] * v[j];
    }
    q.canonicalize();
    if (q.get_den() != 1)
        throw invariant_error("GramForm: non-integral value on an integer vector");
    return q.get_num();
}

Rat GramForm::det() const {
    Rat d(1);
    for (const Rat& p : ldl_d_) d *= p;
    d.canonicalize();
    return d;
}

GramForm degree_form(const EndRing& ring, const std::vector<Int>& target_degrees) {
    if (target_degrees.empty())
        throw structural_error("degree_form: empty target degree list");
    for (const Int& d : target_degrees)
        if (d < 1) throw structural_error("degree_form: degrees must be positive");
    const std::size_t h = ring.h();
    const std::size_t rank = h * target_degrees.size();
    std::vector<Rat> g(rank * rank, Rat(0));
    for (std::size_t i = 0; i < target_degrees.size(); ++i) {
        const Int& d = target_degrees[i];
        const std::size_t o = i * h;
        if (h == 1) {
            g[o * rank + o] = Rat(d);
        } else {
            g[o * rank + o] = Rat(d);
            g[o * rank + o + 1] = Rat(d * ring.s) / 2;
            g[(o + 1) * rank + o] = g[o * rank + o + 1];
            g[(o + 1) * rank + o + 1] = Rat(d * ring.p);
        }
    }
    return GramForm(rank, std::move(g));
}

namespace {

/* Largest integer z with z <= u + sqrt(r), r >= 0. */
Int floor_plus_sqrt(const Rat& u, const Rat& r) {
    Int s, tmp = r.get_num() * r.get_den();
    mpz_sqrt(s.get_mpz_t(), tmp.get_mpz_t());
    /* u + s/den(r) <= u + sqrt(r) < u + (s+1)/den(r), so the floor is base
       or base + 1 */
    Int base, num = u.get_num() * r.get_den() + s * u.get_den();
    Int den = u.get_den() * r.get_den();
    mpz_fdiv_q(base.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rat diff = Rat(base + 1) - u;
    diff.canonicalize();
    if (diff <= 0 || diff * diff <= r) return base + 1;
    return base;
}

struct Scanner {
    const GramForm& q;
    Int c;
    std::vector<Int> x;
    const std::function<void(const std::vector<Int>&, const Int&)>* visit;

    explicit Scanner(const GramForm& q_, const Int& c_) : q(q_), c(c_), x(q_.rank()) {}

    /* u_j = sum_{i>j} L_ij x_i */
    Rat offset(std::size_t j) const {
        Rat u(0);
        for (std::size_t i = j + 1; i < q.rank(); ++i)
            if (x[i] != 0) u += q.ldl_lower(i, j) * x[i];
        return u;
    }

    void emit_innermost(const Rat& budget) {
        Rat u = offset(0);
        Rat r = budget / q.ldl_diag()[0];
        Int hi = floor_plus_sqrt(-u, r);
        Int lo = -floor_plus_sqrt(u, r);
        if (lo > hi) return;
        x[0] = lo;
        Int qv = q.eval(x);
        /* Q(x0+1) - Q(x0) = G_00 (2 x0 + 1) + sum_{i>0} 2 G_0i x_i */
        Rat step_r = q.at(0, 0) * (2 * lo + 1);
        for (std::size_t i = 1; i < q.rank(); ++i) step_r += 2 * q.at(0, i) * x[i];
        step_r.canonicalize();
        Int step = step_r.get_num() / step_r.get_den();
        const Int step2 = 2 * Int(q.at(0, 0).get_num());
        for (Int v = lo; v <= hi; ++v) {
            x[0] = v;
            if (qv > c)
                throw invariant_error("scan_ellipsoid: bound admitted a point outside");
            (*visit)(x, qv);
            qv += step;
            step += step2;
        }
    }

    void descend(std::size_t j, const Rat& budget) {
        if (j == 0) {
            emit_innermost(budget);
            return;
        }
        Rat u = offset(j);
        Rat r = budget / q.ldl_diag()[j];
        Int hi = floor_plus_sqrt(-u, r);
        Int lo = -floor_plus_sqrt(u, r);
        for (Int v = lo; v <= hi; ++v) {
            x[j] = v;
            Rat y = u + v;
            Rat rem = budget - q.ldl_diag()[j] * y * y;
            descend(j - 1, rem);
        }
        x[j] = 0;
    }
};

}  // namespace

void scan_ellipsoid(const GramForm& q, const Int& c,
                    const std::function<void(const std::vector<Int>&, const Int&)>& visit) {
    if (c < 0) return;
    Scanner s(q, c);
    s.visit = &visit;
    s.descend(q.rank() - 1, Rat(c));
}

std::vector<std::vector<Int>> enumerate_in_ellipsoid(const GramForm& q, const Int& c,
                                                     int threads) {
    std::vector<std::vector<Int>> out;
    if (c < 0) return out;
    const std::size_t top = q.rank() - 1;
    Rat r = Rat(c) / q.ldl_diag()[top];
    Int hi = floor_plus_sqrt(Rat(0), r);

    auto scan_outer_range = [&q, &c](const Int& from, const Int& to) {
        std::vector<std::vector<Int>> part;
        Scanner s(q, c);
        std::function<void(const std::vector<Int>&, const Int&)> collect =
            [&part](const std::vector<Int>& v, const Int&) { part.push_back(v); };
        s.visit = &collect;
        const std::size_t tp = s.q.rank() - 1;
        for (Int v = from; v <= to; ++v) {
            if (tp == 0) {
                /* rank 1: outer level is the innermost level */
                Int qv = s.q.eval({v});
                if (qv <= c) {
                    s.x[0] = v;
                    collect(s.x, qv);
                }
                continue;
            }
            s.x[tp] = v;
            Rat y(v);
            Rat rem = Rat(c) - s.q.ldl_diag()[tp] * y * y;
            if (rem >= 0) s.descend(tp - 1, rem);
        }
        return part;
    };

    const Int span = 2 * hi + 1;
    int nt = threads;
    if (nt < 1) nt = 1;
    if (Int(nt) > span) nt = static_cast<int>(span.get_si());
    if (nt <= 1) {
        out = scan_outer_range(-hi, hi);
    } else {
        std::vector<std::future<std::vector<std::vector<Int>>>> futs;
        Int chunk = span / nt, from = -hi;
        for (int i = 0; i < nt; ++i) {
            Int to = (i == nt - 1) ? hi : from + chunk - 1;
            futs.push_back(std::async(std::launch::async, scan_outer_range, from, to));
            from = to + 1;
        }
        for (auto& f : futs) {
            auto part = f.get();
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<Int>& a, const std::vector<Int>& b) {
                  for (std::size_t i = 0; i < a.size(); ++i) {
                      int c0 = cmp(a[i], b[i]);
                      if (c0 != 0) return c0 < 0;
                  }
                  return false;
              });
    return out;
}

Int phi_count(const GramForm& q, const Rat& t) {
    Rat t2 = t * t;
    t2.canonicalize();
    Int c;
    mpz_fdiv_q(c.get_mpz_t(), t2.get_num().get_mpz_t(), t2.get_den().get_mpz_t());
    Int n = 0;
    scan_ellipsoid(q, c, [&n](const std::vector<Int>&, const Int&) { ++n; });
    return n;
}

double ellipsoid_volume_estimate(const GramForm& q, double t) {
    const double hh = static_cast<double>(q.rank()) / 2.0;
    const double unit_ball = std::pow(std::numbers::pi, hh) / std::tgamma(hh + 1.0);
    return unit_ball * std::pow(t, static_cast<double>(q.rank())) /
           std::sqrt(q.det().get_d());
}

}  // namespace subvar
