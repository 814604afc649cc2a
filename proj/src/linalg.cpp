#include "stresslab/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace stresslab::linalg {

namespace {

// Integer row in sparse form; kept primitive with a positive leading entry.
struct IRow {
    std::vector<std::uint32_t> col;
    std::vector<Integer> val;

    std::size_t size() const { return col.size(); }
    bool empty() const { return col.empty(); }
};

mpz_ptr raw(Integer& x) { return x.backend().data(); }
mpz_srcptr raw(const Integer& x) { return x.backend().data(); }

void make_primitive(IRow& r) {
    if (r.empty()) return;
    Integer g = abs(r.val[0]);
    for (std::size_t i = 1; i < r.size() && g != 1; ++i) mpz_gcd(raw(g), raw(g), raw(r.val[i]));
    if (r.val[0].sign() < 0) g = -g;
    if (g != 1) {
        for (auto& v : r.val) mpz_divexact(raw(v), raw(v), raw(g));
    }
}

// a*r - b*p
IRow combine(const Integer& a, const IRow& r, const Integer& b, const IRow& p) {
    IRow out;
    out.col.reserve(r.size() + p.size());
    out.val.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    Integer t;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r.col[i] < p.col[j])) {
            mpz_mul(raw(t), raw(a), raw(r.val[i]));
            out.col.push_back(r.col[i]);
            out.val.push_back(t);
            ++i;
        } else if (i == r.size() || p.col[j] < r.col[i]) {
            mpz_mul(raw(t), raw(b), raw(p.val[j]));
            mpz_neg(raw(t), raw(t));
            out.col.push_back(p.col[j]);
            out.val.push_back(t);
            ++j;
        } else {
            mpz_mul(raw(t), raw(a), raw(r.val[i]));
            mpz_submul(raw(t), raw(b), raw(p.val[j]));
            if (t.sign() != 0) {
                out.col.push_back(r.col[i]);
                out.val.push_back(t);
            }
            ++i;
            ++j;
        }
    }
    return out;
}

// Eliminates the entry of r at column c using pivot row p (leading at c).
void eliminate(IRow& r, std::size_t pos_in_r, const IRow& p) {
    Integer a = p.val[0];
    Integer b = r.val[pos_in_r];
    Integer g;
    mpz_gcd(raw(g), raw(a), raw(b));
    if (g != 1) {
        mpz_divexact(raw(a), raw(a), raw(g));
        mpz_divexact(raw(b), raw(b), raw(g));
    }
    r = combine(a, r, b, p);
    make_primitive(r);
}

IRow from_rational(const std::vector<std::pair<std::uint32_t, Rational>>& entries) {
    IRow r;
    Integer l = 1;
    for (const auto& [c, q] : entries) {
        if (q.sign() == 0) continue;
        const Integer& d = boost::multiprecision::denominator(q);
        if (d != 1) mpz_lcm(raw(l), raw(l), raw(d));
    }
    for (const auto& [c, q] : entries) {
        if (q.sign() == 0) continue;
        Integer v = boost::multiprecision::numerator(q);
        const Integer& d = boost::multiprecision::denominator(q);
        if (l != 1) {
            Integer f;
            mpz_divexact(raw(f), raw(l), raw(d));
            v *= f;
        }
        r.col.push_back(c);
        r.val.push_back(std::move(v));
    }
    make_primitive(r);
    return r;
}

struct Echelon {
    std::vector<IRow> rows;  // pivot rows in increasing pivot column
    std::vector<std::size_t> pivots;
};

// Full reduction to RREF (up to row scaling).
Echelon eliminate_all(std::vector<IRow> rows, std::size_t ncols, bool back_substitute) {
    std::vector<std::vector<std::size_t>> bucket(ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].empty()) bucket[rows[i].col[0]].push_back(i);
    }
    Echelon e;
    for (std::size_t c = 0; c < ncols; ++c) {
        auto& here = bucket[c];
        if (here.empty()) continue;
        std::size_t best = 0;
        for (std::size_t t = 1; t < here.size(); ++t) {
            if (rows[here[t]].size() < rows[here[best]].size()) best = t;
        }
        std::size_t piv = here[best];
        for (std::size_t t = 0; t < here.size(); ++t) {
            if (t == best) continue;
            IRow& r = rows[here[t]];
            eliminate(r, 0, rows[piv]);
            if (!r.empty()) bucket[r.col[0]].push_back(here[t]);
        }
        here.clear();
        e.rows.push_back(std::move(rows[piv]));
        e.pivots.push_back(c);
    }
    if (back_substitute) {
        for (std::size_t t = e.rows.size(); t-- > 0;) {
            const std::uint32_t c = static_cast<std::uint32_t>(e.pivots[t]);
            for (std::size_t s = 0; s < t; ++s) {
                IRow& r = e.rows[s];
                auto it = std::lower_bound(r.col.begin(), r.col.end(), c);
                if (it == r.col.end() || *it != c) continue;
                eliminate(r, static_cast<std::size_t>(it - r.col.begin()), e.rows[t]);
            }
        }
    }
    return e;
}

RowVector normalized_dense(const IRow& r, std::size_t ncols) {
    RowVector out(ncols);
    const Integer& lead = r.val[0];
    for (std::size_t i = 0; i < r.size(); ++i) out[r.col[i]] = Rational(r.val[i], lead);
    return out;
}

std::vector<IRow> to_irows(const SparseMatrix& m) {
    std::vector<IRow> rows;
    rows.reserve(m.size());
    for (const auto& r : m) rows.push_back(from_rational(r.entries));
    return rows;
}

std::vector<IRow> to_irows(const DenseMatrix& m) {
    std::vector<IRow> rows;
    rows.reserve(m.size());
    for (const auto& r : m) rows.push_back(from_rational(to_sparse(r).entries));
    return rows;
}

DenseMatrix nullspace_impl(std::vector<IRow> rows, std::size_t ncols) {
    // Reversing the column order makes the free-variable basis come out in
    // RREF with respect to the original order.
    const auto flip = [ncols](std::uint32_t c) { return static_cast<std::uint32_t>(ncols - 1 - c); };
    for (auto& r : rows) {
        std::reverse(r.col.begin(), r.col.end());
        std::reverse(r.val.begin(), r.val.end());
        for (auto& c : r.col) c = flip(c);
        make_primitive(r);
    }
    Echelon e = eliminate_all(std::move(rows), ncols, true);
    std::vector<char> is_pivot(ncols, 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    DenseMatrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RowVector v(ncols);
        v[flip(static_cast<std::uint32_t>(f))] = 1;
        for (std::size_t t = 0; t < e.rows.size(); ++t) {
            const IRow& r = e.rows[t];
            auto it = std::lower_bound(r.col.begin(), r.col.end(), static_cast<std::uint32_t>(f));
            if (it == r.col.end() || *it != f) continue;
            v[flip(static_cast<std::uint32_t>(e.pivots[t]))] =
                -Rational(r.val[static_cast<std::size_t>(it - r.col.begin())], r.val[0]);
        }
        basis.push_back(std::move(v));
    }
    // Free columns in reversed order arrive with descending original lead.
    std::reverse(basis.begin(), basis.end());
    return basis;
}

}  // namespace

SparseRow to_sparse(const RowVector& row) {
    SparseRow s;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].sign() != 0) s.entries.emplace_back(static_cast<std::uint32_t>(i), row[i]);
    }
    return s;
}

RowVector to_dense(const SparseRow& row, std::size_t ncols) {
    RowVector out(ncols);
    for (const auto& [c, q] : row.entries) out[c] = q;
    return out;
}

DenseMatrix rref(const DenseMatrix& rows, std::size_t ncols) {
    Echelon e = eliminate_all(to_irows(rows), ncols, true);
    DenseMatrix out;
    for (const auto& r : e.rows) out.push_back(normalized_dense(r, ncols));
    return out;
}

DenseMatrix rref(const SparseMatrix& rows, std::size_t ncols) {
    Echelon e = eliminate_all(to_irows(rows), ncols, true);
    DenseMatrix out;
    for (const auto& r : e.rows) out.push_back(normalized_dense(r, ncols));
    return out;
}

std::size_t rank(const SparseMatrix& rows, std::size_t ncols) {
    return eliminate_all(to_irows(rows), ncols, false).rows.size();
}

std::size_t rank(const DenseMatrix& rows, std::size_t ncols) {
    return eliminate_all(to_irows(rows), ncols, false).rows.size();
}

DenseMatrix nullspace(const SparseMatrix& rows, std::size_t ncols) {
    return nullspace_impl(to_irows(rows), ncols);
}

DenseMatrix nullspace(const DenseMatrix& rows, std::size_t ncols) {
    return nullspace_impl(to_irows(rows), ncols);
}

std::optional<RowVector> solve(const SparseMatrix& a, const RowVector& b, std::size_t ncols) {
    SparseMatrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        if (b[i].sign() != 0) aug[i].entries.emplace_back(static_cast<std::uint32_t>(ncols), b[i]);
    }
    Echelon e = eliminate_all(to_irows(aug), ncols + 1, true);
    RowVector x(ncols);
    for (std::size_t t = 0; t < e.rows.size(); ++t) {
        if (e.pivots[t] == ncols) return std::nullopt;
        const IRow& r = e.rows[t];
        if (r.col.back() == ncols) x[e.pivots[t]] = Rational(r.val.back(), r.val[0]);
    }
    return x;
}

std::vector<std::size_t> pivot_columns(const DenseMatrix& rref_rows) {
    std::vector<std::size_t> piv;
    for (const auto& r : rref_rows) {
        std::size_t c = 0;
        while (c < r.size() && r[c].sign() == 0) ++c;
        piv.push_back(c);
    }
    return piv;
}

RowVector reduce(const DenseMatrix& rref_rows, RowVector v) {
    auto piv = pivot_columns(rref_rows);
    for (std::size_t t = 0; t < rref_rows.size(); ++t) {
        const Rational f = v[piv[t]];
        if (f.sign() == 0) continue;
        const RowVector& r = rref_rows[t];
        for (std::size_t c = piv[t]; c < r.size(); ++c) {
            if (r[c].sign() != 0) v[c] -= f * r[c];
        }
    }
    return v;
}

bool is_zero(const RowVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.sign() == 0; });
}

std::optional<DenseMatrix> inverse(const DenseMatrix& m) {
    const std::size_t n = m.size();
    DenseMatrix aug(n, RowVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    DenseMatrix r = rref(aug, 2 * n);
    if (r.size() < n) return std::nullopt;
    auto piv = pivot_columns(r);
    if (piv[n - 1] != n - 1) return std::nullopt;
    DenseMatrix inv(n, RowVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = r[i][n + j];
    }
    return inv;
}

Rational determinant(const DenseMatrix& m) {
    const std::size_t n = m.size();
    DenseMatrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].sign() == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c].sign() == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

std::size_t rank_gf2(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t ncols) {
    const std::size_t words = (ncols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<std::uint64_t> bits(words, 0);
        for (auto c : r) bits[c / 64] ^= std::uint64_t{1} << (c % 64);
        m.push_back(std::move(bits));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t p = rank;
        while (p < m.size() && !(m[p][w] & mask)) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != rank && (m[r][w] & mask)) {
                for (std::size_t k = w; k < words; ++k) m[r][k] ^= m[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace stresslab::linalg
