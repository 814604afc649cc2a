#include "catalog.hpp"
#include "oracle.hpp"

#include "stresslab/generators.hpp"
#include "stresslab/homology.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace stresslab;

namespace {

std::vector<long> f_of(const SimplicialComplex& c) {
    std::vector<long> f;
    for (int k = 0; k <= c.dim(); ++k) f.push_back(static_cast<long>(c.faces_of_dim(k).size()));
    return f;
}

std::vector<long> h_of(const Instance& inst) {
    return fhg(inst.complex, inst.d()).h;
}

std::vector<long> g_of(const Instance& inst) {
    return fhg(inst.complex, inst.d()).g;
}

std::set<oracle::Mask> facet_set(const SimplicialComplex& c) {
    const auto m = oracle::facet_masks(c);
    return {m.begin(), m.end()};
}

}  // namespace

TEST_CASE("simplex and cross-polytope boundaries") {
    const auto oct4 = cross_polytope(4);
    CHECK(is_flag(oct4.complex));
    CHECK(h_of(oct4) == std::vector<long>{1, 4, 6, 4, 1});
    for (int d = 2; d <= 6; ++d) {
        const auto oct = cross_polytope(d);
        CAPTURE(d);
        for (int i = 0; i < d; ++i) CHECK(f_of(oct.complex)[i] == (1L << (i + 1)) * binomial_long(d, i + 1));
        for (int i = 0; i <= d; ++i) CHECK(h_of(oct)[i] == binomial_long(d, i));
    }
    const auto sb3 = simplex_boundary(3);
    CHECK(sb3.complex.facets().size() == 4);
    CHECK(g_of(sb3) == std::vector<long>{1, 0, 0});
    const auto oct3 = cross_polytope(3);
    CHECK(check_polytopal(oct3.complex, *oct3.embedding).ok);
    CHECK(oct3.embedding_kind == EmbeddingKind::natural);
}

TEST_CASE("cyclic polytopes") {
    const auto c46 = cyclic_polytope(4, 6);
    CHECK(f_of(c46.complex)[0] == 6);
    CHECK(f_of(c46.complex)[1] == 15);
    CHECK(check_polytopal(c46.complex, *c46.embedding).ok);

    const auto pentagon = cyclic_polytope(2, 5);
    CHECK(pentagon.complex.facets().size() == 5);
    CHECK(pentagon.complex.dim() == 1);

    // Facets follow Gale's evenness condition; the h-vector is that of a neighborly sphere.
    for (auto [d, n] : std::vector<std::pair<int, int>>{{4, 6}, {4, 7}, {4, 8}, {5, 8}, {6, 9}, {3, 7}}) {
        CAPTURE(d, n);
        const auto inst = cyclic_polytope(d, n);
        CHECK(facet_set(inst.complex) == oracle::gale_facets(n, d));
        const auto h = h_of(inst);
        for (int i = 0; 2 * i <= d; ++i) CHECK(h[i] == binomial_long(n - d - 1 + i, i));
    }
    CHECK(h_of(cyclic_polytope(4, 7)) == std::vector<long>{1, 3, 6, 3, 1});
    CHECK(cyclic_polytope(4, 7).complex.facets().size() == oracle::gale_facets(7, 4).size());
    CHECK_THROWS(cyclic_polytope(4, 4));
}

TEST_CASE("bistellar flips") {
    for (int d = 2; d <= 5; ++d) {
        const auto sb = simplex_boundary(d).complex;
        const LabelFace facet = sb.facet_labels().front();
        const auto sub = bistellar_flip(sb, facet, {"new"});
        CHECK(sub.num_vertices() == static_cast<std::size_t>(d + 2));
        CHECK(sub.facets().size() == static_cast<std::size_t>(2 * d));
        CHECK(bistellar_flip(sub, {"new"}, facet) == sb);
    }
    const auto oct4 = cross_polytope(4).complex;
    // {p1, m1} is not a face, so it cannot be the removed side.
    CHECK_THROWS_AS(bistellar_flip(oct4, {"m1", "p1"}, {"p2", "p3", "p4"}), FlipError);
    // The link of a triangle of Oct_4 is an antipodal pair: a legal flip adding that edge.
    const auto flipped = bistellar_flip(oct4, {"p1", "p2", "p3"}, {"m4", "p4"});
    CHECK(flipped.contains_labels({"m4", "p4"}));
    CHECK_FALSE(flipped.contains_labels({"p1", "p2", "p3"}));
    CHECK(is_homology_sphere(flipped, Field::Q));
    CHECK(bistellar_flip(flipped, {"m4", "p4"}, {"p1", "p2", "p3"}) == oct4);
    // Its inverse cannot be applied twice.
    CHECK_THROWS_AS(bistellar_flip(flipped, {"p1", "p2", "p3"}, {"m4", "p4"}), FlipError);

    for (const auto& move : legal_flips(oct4, "z")) {
        CHECK(move.a.size() + move.b.size() == 5);
        CHECK_NOTHROW(bistellar_flip(oct4, move.a, move.b));
    }
}

TEST_CASE("seeded random PL spheres") {
    CHECK(random_pl_sphere(4, 0, 3).complex == simplex_boundary(4).complex);
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const auto one = random_pl_sphere(4, 1, s);
        CHECK(one.complex.num_vertices() == 6);
        CHECK(g_of(one)[2] == 0);
    }
    const auto walk = random_pl_sphere(5, 20, 7);
    CHECK(is_homology_sphere(walk.complex, Field::GF2));
    REQUIRE(walk.trace);
    CHECK(walk.trace->steps.size() == 20);
    CHECK(replay(*walk.trace) == walk.complex);
    CHECK(random_pl_sphere(5, 20, 7).complex == walk.complex);
    CHECK(walk.embedding_kind == EmbeddingKind::generic);
    CHECK(certify(walk.complex, *walk.embedding).passes());

    for (std::uint64_t s = 1; s <= 10; ++s) {
        const auto inst = random_pl_sphere(4, 15, s);
        CAPTURE(s);
        CHECK(is_homology_sphere(inst.complex, Field::Q));
        CHECK(classify(inst.complex).normal);
        CHECK(provenance_replays(inst));
    }

    // From a simplex boundary the only moves are subdivisions, each leaving a missing facet behind.
    FlipConstraints bounded;
    bounded.forbid_missing_dim_from = 3;
    try {
        random_pl_sphere(5, 12, 4, bounded);
        FAIL("expected a stuck walk");
    } catch (const FlipError& e) {
        REQUIRE(e.partial_trace());
        CHECK(e.partial_trace()->steps.empty());
    }
    const auto fresh = [](std::size_t t) { return "n" + std::to_string(t); };
    bounded.forbid_missing_dim_from = 4;
    const auto low = random_flip_walk(cross_polytope(5).complex, 12, 4, bounded, fresh);
    CHECK(low.steps.size() == 12);
    const auto end = replay(low);
    CHECK(max_missing_dim(end).value_or(0) < 4);
    CHECK(is_homology_sphere(end, Field::Q));
    // Any flip of a flag sphere creates a missing face of dimension at least 2.
    FlipConstraints flag;
    flag.keep_flag = true;
    CHECK_THROWS_AS(random_flip_walk(cross_polytope(4).complex, 1, 1, flag, fresh), FlipError);
}

TEST_CASE("stacked spheres and the ball they bound") {
    CHECK(g_of(stacked_sphere(4, 6))[2] == 0);
    CHECK(stacked_sphere(4, 5).complex == simplex_boundary(4).complex);
    const auto s58 = stacked_sphere(5, 8);
    CHECK(g_of(s58)[2] == 0);
    const auto ball = murai_nevo_ball(s58.complex, 1);
    CHECK(ball.facets().size() == 3);
    CHECK(facet_set(ball) == oracle::stacked_ball_facets(s58.complex, 5, 1));

    const auto two = murai_nevo_ball(stacked_sphere(4, 6).complex, 1);
    CHECK(two.facets().size() == 2);
    CHECK(two.dim() == 4);
    CHECK(minimal_interior_faces(two).size() == 1);

    for (int d = 3; d <= 5; ++d) {
        const auto sb = simplex_boundary(d).complex;
        const auto t = murai_nevo_ball(sb, 0);
        REQUIRE(t.facets().size() == 1);
        CHECK(t.dim() == d);
        CHECK(facet_set(t) == oracle::stacked_ball_facets(sb, d, 0));
    }
}

TEST_CASE("joins of simplex boundaries") {
    const auto sj = stacked_join(6, 2);
    CHECK(g_of(sj) == std::vector<long>{1, 1, 1, 0});
    CHECK(h_of(sj) == oracle::h_product(std::vector<long>(5, 1), std::vector<long>(3, 1)));
    std::vector<std::size_t> dims;
    for (const auto& m : missing_faces(sj.complex)) dims.push_back(m.size() - 1);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<std::size_t>{2, 4});
    CHECK(check_polytopal(sj.complex, *sj.embedding).ok);

    const auto ball = murai_nevo_ball(sj.complex, 2);
    CHECK(facet_set(ball) == oracle::stacked_ball_facets(sj.complex, 6, 2));
    CHECK(ball == join(simplex({"a0", "a1", "a2", "a3", "a4"}), simplex_boundary_on({"b0", "b1", "b2"})));

    for (int d = 3; d <= 6; ++d) {
        const auto one = stacked_join(d, 1);
        CAPTURE(d);
        // A bipyramid over a simplex is stacked.
        CHECK(g_at(fhg(one.complex, d), 2) == 0);
        CHECK(g_at(fhg(one.complex, d), 1) == 1);
        CHECK(one.complex.num_vertices() == static_cast<std::size_t>(d + 2));
    }
}

TEST_CASE("polygon joins") {
    const auto pj44 = polygon_join({4, 4});
    CHECK(f_of(pj44.complex) == f_of(cross_polytope(4).complex));
    CHECK(h_of(pj44) == h_of(cross_polytope(4)));
    CHECK(is_flag(pj44.complex));
    const auto pj55 = polygon_join({5, 5});
    CHECK(f_of(pj55.complex) == std::vector<long>{10, 35, 50, 25});
    CHECK(g_of(pj55)[2] == 5);
    CHECK(check_polytopal(pj55.complex, *pj55.embedding).ok);
    const auto pj45 = polygon_join({4, 5});
    CHECK(f_of(pj45.complex)[1] == 29);
    CHECK(g_of(pj45)[2] == 3);
    const auto pj336 = polygon_join({3, 3, 6});
    CHECK(pj336.d() == 6);
    CHECK(max_missing_dim(pj336.complex) == 2);
    CHECK(check_polytopal(pj336.complex, *pj336.embedding).ok);
    CHECK(check_polytopal(polygon_join({4, 4, 4}).complex, *polygon_join({4, 4, 4}).embedding).ok);
}

TEST_CASE("free joins of polytope boundaries are polytopal") {
    const auto gap = free_join({"C_6", "SB_3"});
    CHECK(gap.d() == 5);
    CHECK(check_polytopal(gap.complex, *gap.embedding).ok);
    CHECK(max_missing_dim(gap.complex) == 3);
    CHECK(h_of(gap) == oracle::h_product({1, 4, 1}, {1, 1, 1, 1}));
}

TEST_CASE("instances from expressions and their provenance") {
    CHECK(catalog::get("Oct_4").complex == cross_polytope(4).complex);
    CHECK(catalog::get("SB_3").complex == simplex_boundary(3).complex);
    CHECK(catalog::get("C_5").complex == polygon_join({5}).complex);
    CHECK(catalog::get("cyclic(4,7)").complex == cyclic_polytope(4, 7).complex);
    CHECK(catalog::get("stacked_join(6,2)").complex == stacked_join(6, 2).complex);
    CHECK(catalog::get("random_pl_sphere(5,15,3)").complex == random_pl_sphere(5, 15, 3).complex);

    const auto generic = catalog::get("Oct_4@generic:5");
    CHECK(generic.embedding_kind == EmbeddingKind::generic);
    CHECK(generic.embedding_seed == 5u);
    REQUIRE(generic.certificate);
    CHECK(generic.certificate->passes());
    CHECK(with_generic_embedding(cross_polytope(4), 5).embedding == generic.embedding);

    for (const char* bad : {"Oct_x", "nonsense", "cyclic(4)", "polygon_join()"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(catalog::get(bad), StressLabError);
    }

    for (const auto& name : catalog::small()) {
        CAPTURE(name);
        CHECK(provenance_replays(catalog::get(name)));
    }
    auto tampered = cross_polytope(4);
    tampered.complex = bistellar_flip(tampered.complex, {"p1", "p2", "p3"}, {"m4", "p4"});
    CHECK_FALSE(provenance_replays(tampered));
    auto retraced = random_pl_sphere(4, 6, 2);
    retraced.trace->steps.pop_back();
    CHECK_FALSE(provenance_replays(retraced));

    CHECK(is_polytope_constructor("cross-polytope"));
    CHECK(is_polytope_constructor("free-join"));
    CHECK_FALSE(is_polytope_constructor("random-pl-sphere"));
    CHECK(make_instance("polygon-join", nlohmann::ordered_json{{"sizes", nlohmann::ordered_json::array({5, 5})}}).complex == polygon_join({5, 5}).complex);
    CHECK_THROWS(make_instance("polygon-join", nlohmann::ordered_json::object()));
}
