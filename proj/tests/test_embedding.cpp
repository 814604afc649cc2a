#include "catalog.hpp"
#include "oracle.hpp"

#include "stresslab/embedding.hpp"

#include <catch_amalgamated.hpp>

using namespace stresslab;

namespace {

SimplicialComplex square() {
    return complex_of({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
}

Embedding unit_square() {
    return natural(square(), std::map<std::string, std::vector<std::string>>{
                                 {"a", {"0", "0"}}, {"b", {"1", "0"}}, {"c", {"1", "1"}}, {"d", {"0", "1"}}});
}

linalg::DenseMatrix random_invertible(std::mt19937_64& rng, int d) {
    for (;;) {
        linalg::DenseMatrix a(d, RowVector(d));
        for (auto& row : a)
            for (auto& x : row) x = Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1);
        if (linalg::determinant(a) != 0) return a;
    }
}

}  // namespace

TEST_CASE("natural embeddings from coordinate tables") {
    const auto oct4 = catalog::get("Oct_4");
    REQUIRE(oct4.embedding);
    CHECK(oct4.embedding->dim == 4);
    CHECK(oct4.embedding->coords.size() == 8);
    CHECK(oct4.embedding->at("p2") == RowVector{0, 1, 0, 0});
    CHECK(oct4.embedding->at("m3") == RowVector{0, 0, -1, 0});

    const auto p = unit_square();
    CHECK(p.dim == 2);
    CHECK(p.at("c") == RowVector{1, 1});
    CHECK_THROWS_AS(natural(square(), std::map<std::string, std::vector<std::string>>{
                                          {"a", {"0", "0"}}, {"b", {"1", "0"}}, {"c", {"1", "1"}}}),
                    EmbeddingError);
    CHECK_THROWS(natural(square(), std::map<std::string, std::vector<std::string>>{
                                       {"a", {"0", "x"}}, {"b", {"1", "0"}}, {"c", {"1", "1"}}, {"d", {"0", "1"}}}));
}

TEST_CASE("generic embeddings carry exact certificates") {
    const auto oct4 = catalog::get("Oct_4").complex;
    const auto g = generic_random(oct4, 4, 1, 1'000'000);
    CHECK(g.certificate.facet_independent);
    CHECK(g.certificate.adjacent_pairs_affinely_independent);
    CHECK(g.certificate.seed == 1);
    CHECK(certify(oct4, g.embedding).passes());
    CHECK(generic_random(oct4, 4, 1, 1'000'000).embedding == g.embedding);
    CHECK_FALSE(generic_random(oct4, 4, 2, 1'000'000).embedding == g.embedding);

    const auto c3 = catalog::get("SB_2").complex;
    const auto t = generic_random(c3, 2, 1, 1'000'000);
    CHECK(affine_rank(t.embedding.for_complex(c3)) == 3);

    CHECK_THROWS_AS(generic_random(c3, 2, 1, 0), EmbeddingError);

    CHECK(certify(oct4, *catalog::get("Oct_4").embedding).passes());
    const auto flat = natural(square(), std::map<std::string, std::vector<std::string>>{
                                            {"a", {"0", "0"}}, {"b", {"1", "0"}}, {"c", {"2", "0"}}, {"d", {"3", "0"}}});
    CHECK_FALSE(certify(square(), flat).adjacent_pairs_affinely_independent);
}

TEST_CASE("parameter system") {
    const auto th = theta(square(), unit_square());
    CHECK(th.dim == 2);
    REQUIRE(th.rows.size() == 3);
    CHECK(th.rows[2] == RowVector{1, 1, 1, 1});
    CHECK(th.rows[0] == RowVector{0, 1, 1, 0});

    const auto oct4 = catalog::get("Oct_4");
    const auto t4 = theta(oct4.complex, *oct4.embedding);
    REQUIRE(t4.rows.size() == 5);
    CHECK(t4.rows[0].size() == 8);
    // Columns m1..m4, p1..p4.
    CHECK(t4.rows[0] == RowVector{-1, 0, 0, 0, 1, 0, 0, 0});

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Embedding p;
        p.dim = 3;
        const bool planar = trial % 2 == 0;
        for (const auto& l : oct4.complex.labels()) {
            RowVector x{static_cast<long>(rng() % 5), static_cast<long>(rng() % 5), planar ? 0 : static_cast<long>(rng() % 5)};
            p.coords[l] = x;
        }
        const auto rows = theta(oct4.complex, p).rows;
        const bool spans = affine_rank(p.for_complex(oct4.complex)) == 4;
        CHECK((oracle::rank(rows) == 4) == spans);
        if (planar) CHECK_FALSE(spans);
    }
}

TEST_CASE("polytopality agrees with the hull oracle") {
    for (const auto& name : {"Oct_3", "Oct_4", "SB_4", "cyclic(4,6)", "cyclic(4,7)", "stacked_sphere(4,8)",
                             "polygon_join(4,5)", "stacked_join(6,2)", "C_5"}) {
        CAPTURE(name);
        const auto inst = catalog::get(name);
        CHECK(check_polytopal(inst.complex, *inst.embedding).ok);
        std::set<oracle::Mask> facets;
        for (auto m : oracle::facet_masks(inst.complex)) facets.insert(m);
        CHECK(oracle::hull_facets(inst.complex, *inst.embedding) == facets);
    }
    auto oct4 = catalog::get("Oct_4");
    Embedding moved = *oct4.embedding;
    moved.coords["p1"] = RowVector(4, Rational(0));
    const auto r = check_polytopal(oct4.complex, moved);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness);
    const auto oct_facets = oracle::facet_masks(oct4.complex);
    CHECK_FALSE(oracle::hull_facets(oct4.complex, moved) == std::set<oracle::Mask>(oct_facets.begin(), oct_facets.end()));
    // A generic embedding of a non-polytopal complex is not in convex position.
    const auto walk = catalog::get("random_pl_sphere(4,10,2)");
    CHECK_FALSE(check_polytopal(walk.complex, *walk.embedding).ok);
}

TEST_CASE("iterated vertex figures") {
    const auto oct4 = catalog::get("Oct_4");
    const auto& c = oct4.complex;
    const auto q = quotient_embedding(c, *oct4.embedding, c.face_of({"p1"}));
    CHECK(q.link == link(c, c.face_of({"p1"})));
    CHECK(q.embedding.dim == 3);
    CHECK(check_polytopal(q.link, q.embedding).ok);
    REQUIRE(q.steps.size() == 1);
    CHECK(q.steps[0].apex == "p1");
    for (const auto& [label, s] : q.steps[0].scale) CHECK(s >= 1);

    const auto edge = quotient_embedding(c, *oct4.embedding, c.face_of({"p1", "p2"}));
    CHECK(edge.link.num_vertices() == 4);
    CHECK(edge.link.facets().size() == 4);
    CHECK(edge.embedding.dim == 2);
    CHECK(check_polytopal(edge.link, edge.embedding).ok);
    CHECK(edge.steps.size() == 2);

    for (int d = 3; d <= 5; ++d) {
        const auto sb = catalog::get("SB_" + std::to_string(d));
        const auto fig = quotient_embedding(sb.complex, *sb.embedding, sb.complex.face_of({"v2"}));
        CHECK(fig.link.num_vertices() == static_cast<std::size_t>(d));
        CHECK(fig.link.facets().size() == static_cast<std::size_t>(d));
        CHECK(check_polytopal(fig.link, fig.embedding).ok);
    }
    const auto empty = quotient_embedding(c, *oct4.embedding, {});
    CHECK(empty.link == c);
    CHECK(empty.steps.empty());
}

TEST_CASE("cone form sends the apex to the origin") {
    const auto oct4 = catalog::get("Oct_4");
    const auto& c = oct4.complex;
    const Face v = c.face_of({"m2"});
    const auto q = quotient_embedding(c, *oct4.embedding, v);
    const auto st = star(c, v);
    const auto form = cone_form(*oct4.embedding, q.steps[0], st);
    CHECK(form.at("m2") == RowVector(4, Rational(0)));
    for (const auto& l : q.link.labels()) {
        const auto& x = form.at(l);
        const Rational s = q.steps[0].scale.at(l);
        CHECK(x.back() == s);
        for (std::size_t t = 0; t + 1 < x.size(); ++t) CHECK(x[t] == s * q.embedding.at(l)[t]);
    }
}

TEST_CASE("affine normal form") {
    const auto oct4 = catalog::get("Oct_4");
    const auto& p = *oct4.embedding;
    linalg::DenseMatrix id(4, RowVector(4));
    for (int i = 0; i < 4; ++i) id[i][i] = 1;
    CHECK(affine_transform(p, id, RowVector(4)) == p);

    const auto canon = canonical(p);
    CHECK(canon.at("m1") == RowVector{0, 0, 0, 0});
    CHECK(canon.at("m2") == RowVector{1, 0, 0, 0});
    CHECK(canon.at("m3") == RowVector{0, 1, 0, 0});
    CHECK(canon.at("m4") == RowVector{0, 0, 1, 0});
    CHECK(canon.at("p1") == RowVector{0, 0, 0, 1});

    std::mt19937_64 rng(13);
    for (const auto& name : {"Oct_4", "cyclic(4,7)", "polygon_join(4,5)", "random_pl_sphere(5,8,3)"}) {
        const auto inst = catalog::get(name);
        const int d = inst.embedding->dim;
        for (int t = 0; t < 3; ++t) {
            RowVector b(d);
            for (auto& x : b) x = static_cast<long>(rng() % 21) - 10;
            const auto moved = affine_transform(*inst.embedding, random_invertible(rng, d), b);
            CAPTURE(name, t);
            CHECK(canonical(moved) == canonical(*inst.embedding));
        }
    }
    linalg::DenseMatrix singular(4, RowVector(4));
    CHECK_THROWS_AS(affine_transform(p, singular, RowVector(4)), EmbeddingError);
    Embedding flat;
    flat.dim = 2;
    flat.coords = {{"a", {0, 0}}, {"b", {1, 1}}, {"c", {2, 2}}};
    CHECK_THROWS_AS(canonical(flat), EmbeddingError);
}
