#include "stresslab/stress.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace stresslab {

namespace {

// Per-basis cache of divisor bases; guarded so const use stays thread-safe.
struct DivisorCache {
    std::mutex mu;
    std::map<const MonomialBasis*, std::map<int, std::weak_ptr<const MonomialBasis>>> entries;
};

DivisorCache& divisor_cache() {
    static DivisorCache cache;
    return cache;
}

void enumerate(const SimplicialComplex& c, int remaining, Monomial& cur, Face& supp, std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    const auto n = static_cast<VertexId>(c.num_vertices());
    for (VertexId v = cur.empty() ? 0 : cur.back(); v < n; ++v) {
        const bool fresh = supp.empty() || supp.back() != v;
        if (fresh) {
            supp.push_back(v);
            if (!c.contains(supp)) {
                supp.pop_back();
                continue;
            }
        }
        cur.push_back(v);
        enumerate(c, remaining - 1, cur, supp, out);
        cur.pop_back();
        if (fresh) supp.pop_back();
    }
}

// Sub-multisets of m with `size` elements.
void sub_multisets(const Monomial& m, std::size_t size, std::size_t from, Monomial& cur, std::set<Monomial>& out) {
    if (cur.size() == size) {
        out.insert(cur);
        return;
    }
    for (std::size_t i = from; i < m.size(); ++i) {
        if (i > from && m[i] == m[i - 1]) continue;
        cur.push_back(m[i]);
        sub_multisets(m, size, i + 1, cur, out);
        cur.pop_back();
    }
}

// m / mu with the derivative factor, or nullopt when mu does not divide m.
std::optional<std::pair<Monomial, Integer>> divide(const Monomial& m, const Monomial& mu) {
    Monomial rest;
    Integer factor = 1;
    std::size_t i = 0, j = 0;
    while (i < m.size()) {
        const VertexId v = m[i];
        std::size_t e = 0;
        while (i < m.size() && m[i] == v) {
            ++e;
            ++i;
        }
        while (j < mu.size() && mu[j] < v) return std::nullopt;
        std::size_t a = 0;
        while (j < mu.size() && mu[j] == v) {
            ++a;
            ++j;
        }
        if (a > e) return std::nullopt;
        for (std::size_t t = 0; t < a; ++t) factor *= static_cast<long>(e - t);
        for (std::size_t t = 0; t < e - a; ++t) rest.push_back(v);
    }
    if (j != mu.size()) return std::nullopt;
    return std::make_pair(std::move(rest), factor);
}

std::pair<Subspace, Subspace> align(const Subspace& a, const Subspace& b) {
    if (a.basis == b.basis || *a.basis == *b.basis) return {Subspace{a.basis, a.rows}, Subspace{a.basis, b.rows}};
    if (a.basis->degree() != b.basis->degree()) throw StressError("ambient mismatch: degrees differ");
    const bool a_smaller = a.basis->size() <= b.basis->size();
    try {
        if (a_smaller) return {reembed(a, b.basis), b};
        return {a, reembed(b, a.basis)};
    } catch (const StressError&) {
    }
    try {
        if (a_smaller) return {a, reembed(b, a.basis)};
        return {reembed(a, b.basis), b};
    } catch (const StressError&) {
        throw StressError("ambient mismatch: neither monomial basis contains the other");
    }
}

}  // namespace

const char* kind_name(StressKind k) {
    return k == StressKind::linear ? "linear" : "affine";
}

StressKind parse_kind(const std::string& name) {
    if (name == "linear") return StressKind::linear;
    if (name == "affine") return StressKind::affine;
    throw StressError("unknown stress kind '" + name + "'");
}

std::shared_ptr<const MonomialBasis> MonomialBasis::of(const SimplicialComplex& c, int degree) {
    if (degree < 0) throw StressError("negative degree");
    auto b = std::make_shared<MonomialBasis>();
    b->labels_ = c.labels();
    b->degree_ = degree;
    Monomial cur;
    Face supp;
    enumerate(c, degree, cur, supp, b->monomials_);
    return b;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::from_list(std::vector<std::string> labels, int degree,
                                                              std::vector<Monomial> monomials) {
    auto b = std::make_shared<MonomialBasis>();
    b->labels_ = std::move(labels);
    b->degree_ = degree;
    for (auto& m : monomials) {
        std::sort(m.begin(), m.end());
        if (static_cast<int>(m.size()) != degree) throw StressError("monomial of the wrong degree");
    }
    std::sort(monomials.begin(), monomials.end());
    monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
    b->monomials_ = std::move(monomials);
    return b;
}

std::optional<std::size_t> MonomialBasis::index_of(const Monomial& m) const {
    auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m);
    if (it == monomials_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - monomials_.begin());
}

Face MonomialBasis::support(std::size_t i) const {
    Face f = monomials_[i];
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

bool MonomialBasis::is_squarefree(std::size_t i) const {
    const auto& m = monomials_[i];
    return std::adjacent_find(m.begin(), m.end()) == m.end();
}

LabelMonomial MonomialBasis::labelled(std::size_t i) const {
    LabelMonomial out;
    for (auto v : monomials_[i]) {
        if (!out.empty() && out.back().first == labels_[v]) {
            ++out.back().second;
        } else {
            out.emplace_back(labels_[v], 1);
        }
    }
    return out;
}

std::string MonomialBasis::text(std::size_t i) const {
    std::string s;
    for (const auto& [l, e] : labelled(i)) {
        if (!s.empty()) s += "*";
        s += "x_" + l + (e > 1 ? "^" + std::to_string(e) : "");
    }
    return s.empty() ? "1" : s;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::divisors(int r) const {
    if (r < 0 || r > degree_) throw StressError("derivative order exceeds the degree");
    auto& cache = divisor_cache();
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.entries.find(this);
        if (it != cache.entries.end()) {
            auto jt = it->second.find(r);
            if (jt != it->second.end()) {
                if (auto sp = jt->second.lock()) return sp;
            }
        }
    }
    std::set<Monomial> out;
    const auto size = static_cast<std::size_t>(degree_ - r);
    for (const auto& m : monomials_) {
        Monomial cur;
        sub_multisets(m, size, 0, cur, out);
    }
    auto b = from_list(labels_, degree_ - r, std::vector<Monomial>(out.begin(), out.end()));
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.entries[this][r] = b;
    return b;
}

BasisPtr monomial_basis(const SimplicialComplex& c, int k) {
    return MonomialBasis::of(c, k);
}

StressPoly derivative(const StressPoly& lambda, const Monomial& mu) {
    BasisPtr target = lambda.basis->divisors(static_cast<int>(mu.size()));
    StressPoly out{target, RowVector(target->size())};
    for (std::size_t i = 0; i < lambda.coeffs.size(); ++i) {
        if (lambda.coeffs[i].sign() == 0) continue;
        auto q = divide((*lambda.basis)[i], mu);
        if (!q) continue;
        auto idx = target->index_of(q->first);
        out.coeffs[*idx] += lambda.coeffs[i] * q->second;
    }
    return out;
}

StressPoly derivative_by_form(const StressPoly& lambda, const RowVector& form) {
    BasisPtr target = lambda.basis->divisors(1);
    StressPoly out{target, RowVector(target->size())};
    for (std::size_t i = 0; i < lambda.coeffs.size(); ++i) {
        if (lambda.coeffs[i].sign() == 0) continue;
        const Monomial& m = (*lambda.basis)[i];
        for (std::size_t t = 0; t < m.size(); ++t) {
            if (t > 0 && m[t] == m[t - 1]) continue;
            const VertexId v = m[t];
            if (form[v].sign() == 0) continue;
            long e = std::count(m.begin(), m.end(), v);
            Monomial rest = m;
            rest.erase(rest.begin() + static_cast<long>(t));
            out.coeffs[*target->index_of(rest)] += lambda.coeffs[i] * e * form[v];
        }
    }
    return out;
}

linalg::SparseMatrix stress_equations(const MonomialBasis& basis_k, const MonomialBasis& basis_km1,
                                      const linalg::DenseMatrix& forms) {
    linalg::SparseMatrix rows;
    const auto n = static_cast<VertexId>(basis_k.labels().size());
    rows.reserve(basis_km1.size() * forms.size());
    for (std::size_t nu = 0; nu < basis_km1.size(); ++nu) {
        // Columns x_v * ν reachable from ν, with the exponent of x_v there.
        std::vector<std::tuple<std::uint32_t, VertexId, long>> reach;
        for (VertexId v = 0; v < n; ++v) {
            Monomial mu = basis_km1[nu];
            mu.insert(std::upper_bound(mu.begin(), mu.end(), v), v);
            auto idx = basis_k.index_of(mu);
            if (!idx) continue;
            reach.emplace_back(static_cast<std::uint32_t>(*idx), v, std::count(mu.begin(), mu.end(), v));
        }
        std::sort(reach.begin(), reach.end());
        for (const auto& form : forms) {
            linalg::SparseRow row;
            for (const auto& [col, v, e] : reach) {
                if (form[v].sign() != 0) row.entries.emplace_back(col, form[v] * e);
            }
            if (!row.entries.empty()) rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

linalg::DenseMatrix forms_for(const SimplicialComplex& c, const Embedding& p, StressKind kind) {
    ThetaSystem t = theta(c, p);
    if (kind == StressKind::linear) t.rows.pop_back();
    return t.rows;
}

}  // namespace

StressSpace stress_space(const SimplicialComplex& c, const Embedding& p, int k, StressKind kind) {
    StressSpace s;
    s.kind = kind;
    s.degree = k;
    BasisPtr basis = monomial_basis(c, k);
    s.space.basis = basis;
    if (k == 0) {
        s.space.rows = {RowVector{Rational(1)}};
        return s;
    }
    BasisPtr lower = basis->divisors(1);
    auto eqs = stress_equations(*basis, *lower, forms_for(c, p, kind));
    s.space.rows = linalg::nullspace(eqs, basis->size());
    return s;
}

bool is_stress(const StressPoly& lambda, const SimplicialComplex& c, const Embedding& p, StressKind kind) {
    if (lambda.degree() == 0) return true;
    for (const auto& form : forms_for(c, p, kind)) {
        if (!linalg::is_zero(derivative_by_form(lambda, form).coeffs)) return false;
    }
    return true;
}

Subspace span(BasisPtr basis, const linalg::DenseMatrix& generators) {
    const std::size_t n = basis->size();
    return Subspace{std::move(basis), linalg::rref(generators, n)};
}

Subspace zero_space(BasisPtr basis) {
    return Subspace{std::move(basis), {}};
}

namespace {

Subspace span_of_derivatives(const Subspace& s, int r, const std::vector<Monomial>& mus) {
    BasisPtr target = s.basis->divisors(r);
    linalg::DenseMatrix gens;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        StressPoly w = s.vector(i);
        for (const auto& mu : mus) {
            StressPoly dw = derivative(w, mu);
            if (!linalg::is_zero(dw.coeffs)) gens.push_back(std::move(dw.coeffs));
        }
    }
    return span(target, gens);
}

}  // namespace

Subspace derivative_span_over(const Subspace& s, int r, const std::vector<VertexId>& vertices) {
    if (r == 0) return s;
    std::vector<VertexId> vs = vertices;
    std::sort(vs.begin(), vs.end());
    std::vector<Monomial> mus;
    Monomial cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(cur.size()) == r) {
            mus.push_back(cur);
            return;
        }
        for (std::size_t t = from; t < vs.size(); ++t) {
            cur.push_back(vs[t]);
            rec(t + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return span_of_derivatives(s, r, mus);
}

Subspace derivative_span(const Subspace& s, int r, DerivativeMode mode) {
    if (r == 0) return s;
    if (mode == DerivativeMode::all_monomials) {
        std::vector<VertexId> all(s.basis->labels().size());
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VertexId>(v);
        return derivative_span_over(s, r, all);
    }
    // Face monomials x_F with |F| = r are the squarefree degree-r divisors.
    BasisPtr deg_r = s.basis->divisors(s.basis->degree() - r);
    std::vector<Monomial> mus;
    for (std::size_t i = 0; i < deg_r->size(); ++i) {
        if (deg_r->is_squarefree(i)) mus.push_back((*deg_r)[i]);
    }
    return span_of_derivatives(s, r, mus);
}

Subspace reembed(const Subspace& s, const BasisPtr& target) {
    if (s.basis == target || *s.basis == *target) return Subspace{target, s.rows};
    if (s.basis->degree() != target->degree()) throw StressError("ambient mismatch: degrees differ");
    std::vector<std::optional<VertexId>> vmap;
    for (const auto& l : s.basis->labels()) {
        auto it = std::lower_bound(target->labels().begin(), target->labels().end(), l);
        if (it == target->labels().end() || *it != l) {
            vmap.emplace_back(std::nullopt);
        } else {
            vmap.emplace_back(static_cast<VertexId>(it - target->labels().begin()));
        }
    }
    std::vector<std::optional<std::size_t>> col;
    for (const auto& m : s.basis->monomials()) {
        Monomial t;
        bool ok = true;
        for (auto v : m) {
            if (!vmap[v]) {
                ok = false;
                break;
            }
            t.push_back(*vmap[v]);
        }
        col.push_back(ok ? target->index_of(t) : std::nullopt);
    }
    linalg::DenseMatrix rows;
    for (const auto& r : s.rows) {
        RowVector out(target->size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].sign() == 0) continue;
            if (!col[i]) throw StressError("monomial " + s.basis->text(i) + " is absent from the target basis");
            out[*col[i]] = r[i];
        }
        rows.push_back(std::move(out));
    }
    // The label map is order preserving, so RREF survives.
    return Subspace{target, std::move(rows)};
}

Subspace sum(const Subspace& a, const Subspace& b) {
    auto [x, y] = align(a, b);
    linalg::DenseMatrix rows = x.rows;
    rows.insert(rows.end(), y.rows.begin(), y.rows.end());
    return span(x.basis, rows);
}

Subspace sum(const std::vector<Subspace>& parts, const BasisPtr& ambient) {
    linalg::DenseMatrix rows;
    for (const auto& p : parts) {
        Subspace e = reembed(p, ambient);
        rows.insert(rows.end(), e.rows.begin(), e.rows.end());
    }
    return span(ambient, rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    auto [x, y] = align(a, b);
    const std::size_t n = x.basis->size();
    linalg::DenseMatrix perp = linalg::nullspace(x.rows, n);
    linalg::DenseMatrix perp_b = linalg::nullspace(y.rows, n);
    perp.insert(perp.end(), perp_b.begin(), perp_b.end());
    return Subspace{x.basis, linalg::nullspace(perp, n)};
}

bool contains(const Subspace& a, const Subspace& b) {
    auto [x, y] = align(a, b);
    for (const auto& r : y.rows) {
        if (!linalg::is_zero(linalg::reduce(x.rows, r))) return false;
    }
    return true;
}

bool equals(const Subspace& a, const Subspace& b) {
    auto [x, y] = align(a, b);
    return x.rows == y.rows;
}

bool contains_vector(const Subspace& a, const StressPoly& v) {
    return contains(a, Subspace{v.basis, linalg::rref(linalg::DenseMatrix{v.coeffs}, v.basis->size())});
}

std::vector<std::pair<LabelFace, Rational>> squarefree_part(const StressPoly& lambda) {
    std::vector<std::pair<LabelFace, Rational>> out;
    for (std::size_t i = 0; i < lambda.basis->size(); ++i) {
        if (!lambda.basis->is_squarefree(i)) continue;
        LabelFace f;
        for (auto v : (*lambda.basis)[i]) f.push_back(lambda.basis->labels()[v]);
        out.emplace_back(std::move(f), lambda.coeffs[i]);
    }
    return out;
}

std::vector<std::pair<LabelFace, int>> sign_vector(const StressPoly& lambda) {
    std::vector<std::pair<LabelFace, int>> out;
    for (auto& [f, q] : squarefree_part(lambda)) out.emplace_back(std::move(f), q.sign());
    return out;
}

std::vector<LabelFace> support_faces(const Subspace& s) {
    std::vector<LabelFace> out;
    for (std::size_t i = 0; i < s.basis->size(); ++i) {
        if (!s.basis->is_squarefree(i)) continue;
        bool hit = std::any_of(s.rows.begin(), s.rows.end(), [&](const RowVector& r) { return r[i].sign() != 0; });
        if (!hit) continue;
        LabelFace f;
        for (auto v : (*s.basis)[i]) f.push_back(s.basis->labels()[v]);
        out.push_back(std::move(f));
    }
    return out;
}

StressPoly cone_lift(const StressPoly& omega, const Embedding& base_embedding, const SimplicialComplex& cone_complex,
                     const std::string& apex, const Embedding& cone_embedding) {
    const int k = omega.degree();
    if (!linalg::is_zero(cone_embedding.at(apex))) throw StressError("cone apex must sit at the origin");
    const auto& base_labels = omega.basis->labels();
    std::map<std::string, Rational> scale;
    for (const auto& u : base_labels) {
        const RowVector& pu = cone_embedding.at(u);
        const RowVector& qu = base_embedding.at(u);
        if (pu.size() != qu.size() + 1) throw StressError("cone embedding must be one dimension up");
        Rational a = pu.back();
        if (a.sign() == 0) throw StressError("cone embedding has a zero scale at '" + u + "'");
        for (std::size_t i = 0; i < qu.size(); ++i) {
            if (pu[i] != a * qu[i]) throw StressError("cone embedding is not of the form (a p'(u), a) at '" + u + "'");
        }
        scale[u] = a;
    }
    BasisPtr basis = monomial_basis(cone_complex, k);
    linalg::SparseMatrix rows;
    if (k > 0) rows = stress_equations(*basis, *basis->divisors(1), forms_for(cone_complex, cone_embedding, StressKind::affine));
    RowVector rhs(rows.size());
    for (std::size_t i = 0; i < omega.basis->size(); ++i) {
        if (!omega.basis->is_squarefree(i)) continue;
        Monomial m;
        Rational w = omega.coeffs[i];
        for (auto v : (*omega.basis)[i]) {
            const std::string& l = base_labels[v];
            w /= scale[l];
            m.push_back(*cone_complex.index_of(l));
        }
        std::sort(m.begin(), m.end());
        auto col = basis->index_of(m);
        if (!col) throw StressError("face of the base is missing from the cone");
        linalg::SparseRow r;
        r.entries.emplace_back(static_cast<std::uint32_t>(*col), Rational(1));
        rows.push_back(std::move(r));
        rhs.push_back(w);
    }
    auto x = linalg::solve(rows, rhs, basis->size());
    if (!x) throw StressError("no affine stress on the cone has the prescribed weights");
    return StressPoly{basis, std::move(*x)};
}

Embedding recover_affine_type(const Subspace& s1) {
    if (s1.basis->degree() != 1) throw StressError("affine type recovery needs a degree-1 space");
    const std::size_t n = s1.basis->size();
    if (n != s1.basis->labels().size()) throw StressError("degree-1 basis must list every vertex");
    linalg::DenseMatrix perp = linalg::nullspace(s1.rows, n);
    RowVector ones(n, Rational(1));
    if (!linalg::is_zero(linalg::reduce(perp, ones))) {
        throw StressError("space does not consist of affine dependencies (stresses must sum to zero)");
    }
    const std::size_t d = perp.size() - 1;
    linalg::DenseMatrix chosen{ones};
    for (const auto& r : perp) {
        if (chosen.size() == d + 1) break;
        chosen.push_back(r);
        if (linalg::rank(chosen, n) < chosen.size()) chosen.pop_back();
    }
    Embedding p;
    p.dim = static_cast<int>(d);
    for (std::size_t v = 0; v < n; ++v) {
        RowVector x;
        for (std::size_t i = 1; i <= d; ++i) x.push_back(chosen[i][v]);
        p.coords[s1.basis->labels()[v]] = std::move(x);
    }
    if (d == 0) return p;
    return canonical(p);
}

}  // namespace stresslab
