#include "catalog.hpp"
#include "oracle.hpp"

#include "stresslab/homology.hpp"
#include "stresslab/stress.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace stresslab;

namespace {

SimplicialComplex square() {
    return complex_of({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
}

Embedding unit_square() {
    return natural(square(), std::map<std::string, RowVector>{
                                 {"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}});
}

StressPoly poly(const BasisPtr& basis, const std::vector<std::pair<Monomial, Rational>>& terms) {
    StressPoly out{basis, RowVector(basis->size())};
    for (const auto& [m, c] : terms) out.coeffs[*basis->index_of(m)] = c;
    return out;
}

Rational coeff(const StressPoly& p, const Monomial& m) {
    const auto idx = p.basis->index_of(m);
    return idx ? p.coeffs[*idx] : Rational(0);
}

linalg::DenseMatrix transpose(const linalg::DenseMatrix& m, std::size_t cols) {
    linalg::DenseMatrix t(cols, RowVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

linalg::DenseMatrix random_invertible(std::mt19937_64& rng, int d) {
    for (;;) {
        linalg::DenseMatrix a(d, RowVector(d));
        for (auto& row : a)
            for (auto& x : row) x = Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
        if (linalg::determinant(a) != 0) return a;
    }
}

// Highest degree worth comparing against the brute-force oracle, whose cost grows fast with k.
int oracle_degree_cap(const SimplicialComplex& c) {
    const int d = c.dim() + 1;
    if (c.num_vertices() <= 8 && d <= 4) return d;
    return c.num_vertices() <= 10 ? 3 : 2;
}

}  // namespace

TEST_CASE("face-supported monomial bases") {
    CHECK(monomial_basis(catalog::get("C_3").complex, 2)->size() == 6);
    CHECK(monomial_basis(catalog::get("Oct_4").complex, 2)->size() == 32);
    const auto oct4 = catalog::get("Oct_4").complex;
    CHECK(monomial_basis(oct4, 0)->size() == 1);
    CHECK(monomial_basis(oct4, 1)->size() == 8);
    // Degree-k monomials on a face with s vertices and full support: C(k-1, s-1).
    for (int k = 0; k <= 4; ++k) {
        long expected = k == 0 ? 1 : 0;
        for (int s = 1; s <= k && s <= 4; ++s)
            expected += static_cast<long>(oracle::f_vector(oct4)[static_cast<std::size_t>(s - 1)]) * binomial_long(k - 1, s - 1);
        CHECK(static_cast<long>(monomial_basis(oct4, k)->size()) == expected);
    }
    const auto b = monomial_basis(square(), 2);
    for (std::size_t i = 1; i < b->size(); ++i) CHECK((*b)[i - 1] < (*b)[i]);
    for (std::size_t i = 0; i < b->size(); ++i) CHECK(square().contains(b->support(i)));
    CHECK(b->text(*b->index_of({0, 1})) == "x_a*x_b");
    CHECK(b->is_squarefree(*b->index_of({0, 1})));
    CHECK_FALSE(b->is_squarefree(*b->index_of({0, 0})));
    CHECK(*b->divisors(1) == *monomial_basis(square(), 1));
}

TEST_CASE("partial derivatives") {
    const auto b = monomial_basis(square(), 2);
    const auto ab = poly(b, {{{0, 1}, 1}});
    const auto da = derivative(ab, {0});
    CHECK(coeff(da, {1}) == 1);
    CHECK(coeff(da, {0}) == 0);
    const auto aa = poly(b, {{{0, 0}, 1}});
    CHECK(coeff(derivative(aa, {0}), {0}) == 2);
    CHECK(linalg::is_zero(derivative(aa, {1}).coeffs));
    CHECK(coeff(derivative(aa, {0, 0}), {}) == 2);

    // The form derivative is the matching combination of coordinate derivatives.
    const auto mixed = poly(b, {{{0, 0}, 3}, {{0, 1}, -2}, {{2, 3}, 5}});
    const RowVector form{1, 2, -1, 4};
    const auto df = derivative_by_form(mixed, form);
    RowVector combo(df.coeffs.size());
    for (VertexId v = 0; v < 4; ++v) {
        const auto dv = derivative(mixed, {v});
        for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += form[v] * dv.coeffs[i];
    }
    CHECK(df.coeffs == combo);
}

TEST_CASE("the unit square carries one alternating affine dependence") {
    const auto s = stress_space(square(), unit_square(), 1, StressKind::affine);
    REQUIRE(s.dim() == 1);
    CHECK(s.space.rows[0] == RowVector{1, -1, 1, -1});
    const auto lambda = s.space.vector(0);
    CHECK(is_stress(lambda, square(), unit_square(), StressKind::affine));
    const auto signs = sign_vector(lambda);
    REQUIRE(signs.size() == 4);
    std::vector<int> only;
    for (const auto& [f, sg] : signs) only.push_back(sg);
    CHECK(only == std::vector<int>{1, -1, 1, -1});
    CHECK(support_faces(s.space).size() == 4);
    CHECK(stress_space(square(), unit_square(), 1, StressKind::linear).dim() == 2);

    const auto zero = zero_space(monomial_basis(square(), 1));
    CHECK(support_faces(zero).empty());
    for (const auto& [f, sg] : sign_vector(StressPoly{zero.basis, RowVector(4)})) CHECK(sg == 0);
}

TEST_CASE("stress dimensions agree with the brute-force oracle") {
    for (const auto& name : catalog::small()) {
        const auto inst = catalog::get(name);
        const auto& c = inst.complex;
        const int cap = oracle_degree_cap(c);
        for (int k = 0; k <= cap; ++k) {
            for (auto kind : {StressKind::linear, StressKind::affine}) {
                CAPTURE(name, k, kind_name(kind));
                CHECK(stress_space(c, *inst.embedding, k, kind).dim() ==
                      oracle::stress_dim(c, *inst.embedding, k, kind == StressKind::affine));
            }
        }
    }
}

TEST_CASE("on spheres linear dimensions are h and affine ones are g") {
    for (const auto& name : catalog::small()) {
        const auto inst = catalog::get(name);
        const int d = inst.d();
        const auto v = fhg(inst.complex, d);
        CAPTURE(name);
        REQUIRE(is_homology_sphere(inst.complex, Field::Q));
        const int cap = std::min(oracle_degree_cap(inst.complex), d);
        for (int k = 0; k <= cap; ++k) {
            CAPTURE(k);
            CHECK(static_cast<long>(stress_space(inst.complex, *inst.embedding, k, StressKind::linear).dim()) == v.h[k]);
            if (2 * k <= d)
                CHECK(static_cast<long>(stress_space(inst.complex, *inst.embedding, k, StressKind::affine).dim()) == g_at(v, k));
        }
    }
    const auto oct4 = catalog::get("Oct_4");
    CHECK(stress_space(oct4.complex, *oct4.embedding, 2, StressKind::affine).dim() == 2);
    const auto generic = catalog::get("Oct_4@generic:1");
    for (int k = 0; k <= 4; ++k)
        CHECK(stress_space(generic.complex, *generic.embedding, k, StressKind::linear).dim() ==
              static_cast<std::size_t>(binomial_long(4, k)));
}

TEST_CASE("affine stresses are the linear ones killed by the all-ones derivative") {
    for (const auto& name : {"Oct_4", "cyclic(4,7)", "polygon_join(4,5)", "random_pl_sphere(4,10,2)", "C_5"}) {
        const auto inst = catalog::get(name);
        for (int k = 1; k <= 3; ++k) {
            CAPTURE(name, k);
            const auto lin = stress_space(inst.complex, *inst.embedding, k, StressKind::linear).space;
            const auto aff = stress_space(inst.complex, *inst.embedding, k, StressKind::affine).space;
            const RowVector ones(inst.complex.num_vertices(), Rational(1));
            for (std::size_t r = 0; r < aff.dim(); ++r) CHECK(linalg::is_zero(derivative_by_form(aff.vector(r), ones).coeffs));
            if (lin.dim() == 0) {
                CHECK(aff.dim() == 0);
                continue;
            }
            linalg::DenseMatrix images;
            for (std::size_t r = 0; r < lin.dim(); ++r) images.push_back(derivative_by_form(lin.vector(r), ones).coeffs);
            const std::size_t cols = images.front().size();
            linalg::DenseMatrix kernel;
            for (const auto& c : linalg::nullspace(transpose(images, cols), lin.dim())) {
                RowVector v(lin.basis->size());
                for (std::size_t r = 0; r < lin.dim(); ++r)
                    for (std::size_t t = 0; t < v.size(); ++t) v[t] += c[r] * lin.rows[r][t];
                kernel.push_back(std::move(v));
            }
            CHECK(equals(span(lin.basis, kernel), aff));
        }
    }
}

TEST_CASE("derivatives of stresses stay stresses supported on the star") {
    for (const auto& name : {"Oct_4", "cyclic(4,7)", "stacked_sphere(4,8)", "random_pl_sphere(5,8,3)"}) {
        const auto inst = catalog::get(name);
        const auto& c = inst.complex;
        for (auto kind : {StressKind::linear, StressKind::affine}) {
            const auto s = stress_space(c, *inst.embedding, 2, kind).space;
            for (std::size_t r = 0; r < s.dim(); ++r) {
                for (VertexId v = 0; v < c.num_vertices(); ++v) {
                    const auto dv = derivative(s.vector(r), {v});
                    CAPTURE(name, kind_name(kind), r, v);
                    CHECK(is_stress(dv, c, *inst.embedding, kind));
                    for (std::size_t t = 0; t < dv.coeffs.size(); ++t) {
                        if (dv.coeffs[t] == 0) continue;
                        CHECK(c.contains(face_union(dv.basis->support(t), {v})));
                    }
                }
            }
        }
    }
}

TEST_CASE("derivative spans") {
    const auto generic = catalog::get("Oct_4@generic:1");
    const auto& g = generic.complex;
    const auto l2 = stress_space(g, *generic.embedding, 2, StressKind::linear).space;
    const auto l1 = stress_space(g, *generic.embedding, 1, StressKind::linear).space;
    CHECK(equals(derivative_span(l2, 1, DerivativeMode::all_monomials), l1));
    CHECK(equals(derivative_span(l2, 1, DerivativeMode::face_monomials), l1));

    const auto oct4 = catalog::get("Oct_4");
    const auto a2 = stress_space(oct4.complex, *oct4.embedding, 2, StressKind::affine).space;
    const auto a1 = stress_space(oct4.complex, *oct4.embedding, 1, StressKind::affine).space;
    CHECK(equals(derivative_span(a2, 1, DerivativeMode::all_monomials), a1));

    const auto z = zero_space(monomial_basis(g, 3));
    CHECK(derivative_span(z, 1, DerivativeMode::all_monomials).dim() == 0);

    for (const auto& name : {"cyclic(4,7)", "polygon_join(4,5)", "random_pl_sphere(4,10,2)", "Oct_5"}) {
        const auto inst = catalog::get(name);
        for (auto kind : {StressKind::linear, StressKind::affine}) {
            for (int k = 2; k <= 3; ++k) {
                const auto top = stress_space(inst.complex, *inst.embedding, k, kind).space;
                for (int r = 1; r < k; ++r) {
                    CAPTURE(name, kind_name(kind), k, r);
                    const auto below = stress_space(inst.complex, *inst.embedding, k - r, kind).space;
                    const auto all = derivative_span(top, r, DerivativeMode::all_monomials);
                    const auto faces = derivative_span(top, r, DerivativeMode::face_monomials);
                    CHECK(contains(below, all));
                    CHECK(contains(all, faces));
                }
            }
        }
    }
}

TEST_CASE("subspace algebra") {
    const auto oct4 = catalog::get("Oct_4");
    const auto& c = oct4.complex;
    const auto whole = stress_space(c, *oct4.embedding, 1, StressKind::affine).space;
    std::vector<Subspace> parts;
    for (VertexId v = 0; v < c.num_vertices(); ++v) {
        const auto st = star(c, {v});
        parts.push_back(stress_space(st, oct4.embedding->restricted_to(st), 1, StressKind::affine).space);
    }
    const auto total = sum(parts, whole.basis);
    CHECK(equals(total, whole));
    CHECK(equals(whole, whole));
    const auto zero = zero_space(whole.basis);
    CHECK(intersect(whole, zero).dim() == 0);
    CHECK(equals(sum(whole, zero), whole));
    CHECK(contains(whole, zero));
    CHECK_FALSE(contains(zero, whole));
    CHECK(equals(intersect(whole, parts[0]), reembed(parts[0], whole.basis)));

    // dim(S + T) + dim(S ∩ T) = dim S + dim T on random spans.
    std::mt19937_64 rng(23);
    const auto basis = monomial_basis(c, 2);
    for (int t = 0; t < 20; ++t) {
        auto draw = [&](std::size_t n) {
            linalg::DenseMatrix m(n, RowVector(basis->size()));
            for (auto& row : m)
                for (std::size_t i = 0; i < row.size(); i += 1 + rng() % 5) row[i] = static_cast<long>(rng() % 5) - 2;
            return span(basis, m);
        };
        const auto s = draw(1 + rng() % 12), u = draw(1 + rng() % 12);
        CHECK(sum(s, u).dim() + intersect(s, u).dim() == s.dim() + u.dim());
        CHECK(contains(sum(s, u), s));
        CHECK(contains(s, intersect(s, u)));
    }
    CHECK_THROWS_AS(sum(whole, stress_space(c, *oct4.embedding, 2, StressKind::affine).space), StressError);
}

TEST_CASE("affine stresses on Oct_4 in degree two use every edge") {
    const auto oct4 = catalog::get("Oct_4");
    const auto s = stress_space(oct4.complex, *oct4.embedding, 2, StressKind::affine).space;
    CHECK(support_faces(s).size() == 24);
    REQUIRE(s.dim() == 2);
    // Each reduced basis row vanishes on eight edges; their sum vanishes on none.
    for (std::size_t r = 0; r < s.dim(); ++r) {
        std::size_t zeros = 0;
        for (const auto& [f, w] : squarefree_part(s.vector(r))) zeros += w == 0;
        CHECK(zeros == 8);
    }
    RowVector both(s.basis->size());
    for (const auto& row : s.rows)
        for (std::size_t i = 0; i < both.size(); ++i) both[i] += row[i];
    const auto weights = squarefree_part(StressPoly{s.basis, both});
    REQUIRE(weights.size() == 24);
    for (const auto& [f, w] : weights) {
        CAPTURE(f);
        CHECK(w != 0);
    }
    // Column-rank oracle: an edge is supported iff its column in the basis is nonzero.
    std::size_t nonzero_columns = 0;
    for (std::size_t i = 0; i < s.basis->size(); ++i) {
        if (!s.basis->is_squarefree(i)) continue;
        linalg::DenseMatrix column;
        for (const auto& row : s.rows) column.push_back({row[i]});
        nonzero_columns += oracle::rank(column) > 0;
    }
    CHECK(nonzero_columns == 24);
}

TEST_CASE("affine maps preserve stress spaces") {
    std::mt19937_64 rng(31);
    for (const auto& name : {"Oct_4", "cyclic(4,7)", "polygon_join(4,5)", "random_pl_sphere(5,8,3)"}) {
        const auto inst = catalog::get(name);
        const int d = inst.embedding->dim;
        RowVector b(d);
        for (auto& x : b) x = static_cast<long>(rng() % 11) - 5;
        const auto moved = affine_transform(*inst.embedding, random_invertible(rng, d), b);
        const RowVector origin(d);
        const auto linear_only = affine_transform(*inst.embedding, random_invertible(rng, d), origin);
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(name, k);
            CHECK(equals(stress_space(inst.complex, moved, k, StressKind::affine).space,
                         stress_space(inst.complex, *inst.embedding, k, StressKind::affine).space));
            // Linear stresses follow the linear span of the coordinates, so translations move them; dimensions stay.
            const auto lin = stress_space(inst.complex, *inst.embedding, k, StressKind::linear).space;
            CHECK(stress_space(inst.complex, moved, k, StressKind::linear).dim() == lin.dim());
            CHECK(equals(stress_space(inst.complex, linear_only, k, StressKind::linear).space, lin));
        }
    }
}

TEST_CASE("cone lifts") {
    const auto base = stress_space(square(), unit_square(), 1, StressKind::affine).space.vector(0);
    const auto cone_c = cone(square(), "v");
    for (const Rational a : {Rational(1), Rational(2), Rational(1, 3)}) {
        Embedding lifted;
        lifted.dim = 3;
        lifted.coords["v"] = RowVector(3);
        for (const auto& [l, x] : unit_square().coords) lifted.coords[l] = {a * x[0], a * x[1], a};
        const auto omega = cone_lift(base, unit_square(), cone_c, "v", lifted);
        CAPTURE(a);
        CHECK(is_stress(omega, cone_c, lifted, StressKind::affine));
        for (const auto& [l, w] : std::vector<std::pair<std::string, Rational>>{{"a", 1}, {"b", -1}, {"c", 1}, {"d", -1}})
            CHECK(coeff(omega, {*cone_c.index_of(l)}) == w / a);
    }
    Embedding skew;
    skew.dim = 3;
    skew.coords["v"] = RowVector(3);
    for (const auto& [l, x] : unit_square().coords) skew.coords[l] = {x[0], x[1] + 1, 1};
    CHECK_THROWS_AS(cone_lift(base, unit_square(), cone_c, "v", skew), StressError);

    // Vertex figures lifted into the closed star: Oct_3 inside Oct_4 in degree one, Oct_4 inside Oct_5 in degree two.
    for (auto [name, k] : std::vector<std::pair<std::string, int>>{{"Oct_4", 1}, {"Oct_4", 2}, {"Oct_5", 2}}) {
        const auto inst = catalog::get(name);
        const auto& c = inst.complex;
        const Face apex = c.face_of({"p1"});
        const auto q = quotient_embedding(c, *inst.embedding, apex);
        const auto st = star(c, apex);
        const auto form = cone_form(*inst.embedding, q.steps[0], st);
        const auto link_space = stress_space(q.link, q.embedding, k, StressKind::affine).space;
        const auto star_space = stress_space(st, form, k, StressKind::affine).space;
        CAPTURE(name, k);
        // A 3-sphere has no affine 2-stresses, so that case is vacuous.
        CHECK(static_cast<long>(link_space.dim()) == g_at(fhg(q.link, q.link.dim() + 1), k) * (2 * k <= q.link.dim() + 1));
        for (std::size_t r = 0; r < link_space.dim(); ++r) {
            const auto w = link_space.vector(r);
            const auto lift = cone_lift(w, q.embedding, st, "p1", form);
            CHECK(contains_vector(star_space, lift));
            for (std::size_t i = 0; i < w.basis->size(); ++i) {
                if (!w.basis->is_squarefree(i)) continue;
                Rational prod = 1;
                Monomial m;
                for (auto u : (*w.basis)[i]) {
                    const auto& l = w.basis->labels()[u];
                    prod *= q.steps[0].scale.at(l);
                    m.push_back(*st.index_of(l));
                }
                std::sort(m.begin(), m.end());
                CAPTURE(r, w.basis->text(i));
                CHECK(prod * coeff(lift, m) == w.coeffs[i]);
            }
        }
    }
}

TEST_CASE("affine type from the dependence space") {
    const auto square_deps = stress_space(square(), unit_square(), 1, StressKind::affine).space;
    const auto rec = recover_affine_type(square_deps);
    CHECK(rec.dim == 2);
    CHECK(rec.at("a") == RowVector{0, 0});
    CHECK(rec.at("b") == RowVector{1, 0});
    CHECK(rec.at("c") == RowVector{0, 1});
    CHECK(rec.at("d") == RowVector{-1, 1});

    const auto sb3 = catalog::get("SB_3");
    const auto none = stress_space(sb3.complex, *sb3.embedding, 1, StressKind::affine).space;
    REQUIRE(none.dim() == 0);
    const auto simplex_rec = recover_affine_type(none);
    CHECK(simplex_rec.dim == 3);
    CHECK(simplex_rec.at("v0") == RowVector{0, 0, 0});
    CHECK(simplex_rec.at("v1") == RowVector{1, 0, 0});
    CHECK(simplex_rec.at("v2") == RowVector{0, 1, 0});
    CHECK(simplex_rec.at("v3") == RowVector{0, 0, 1});

    for (const auto& name : {"Oct_4", "cyclic(4,7)", "polygon_join(5,5)", "random_pl_sphere(5,8,3)"}) {
        const auto inst = catalog::get(name);
        const auto deps = stress_space(inst.complex, *inst.embedding, 1, StressKind::affine).space;
        const auto back = recover_affine_type(deps);
        CAPTURE(name);
        CHECK(back == canonical(*inst.embedding));
        CHECK(equals(stress_space(inst.complex, back, 1, StressKind::affine).space, deps));
    }
    // Dependencies must sum to zero.
    CHECK_THROWS_AS(recover_affine_type(span(monomial_basis(square(), 1), {{1, 0, 0, 0}})), StressError);
}
