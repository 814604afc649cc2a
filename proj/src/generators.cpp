#include "stresslab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace stresslab {

using json = nlohmann::ordered_json;

const Embedding& Instance::coords() const {
    if (!embedding) throw EmbeddingError("instance '" + name + "' has no embedding");
    return *embedding;
}

std::string indexed_label(const std::string& prefix, std::size_t index, std::size_t count) {
    std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
    std::string digits = std::to_string(index);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

namespace {

Instance polytope_instance(std::string name, std::string constructor, json params, const SimplicialComplex& c,
                           std::map<std::string, RowVector> coords) {
    Instance inst;
    inst.name = std::move(name);
    inst.complex = c;
    inst.embedding = natural(c, coords);
    inst.embedding_kind = EmbeddingKind::natural;
    inst.provenance.constructor = std::move(constructor);
    inst.provenance.params = std::move(params);
    return inst;
}

// Vertices of the standard m-simplex translated to barycenter 0, in an
// ambient block of `total` coordinates starting at `offset`.
std::vector<RowVector> centered_simplex(int m, int offset, int total) {
    std::vector<RowVector> pts;
    for (int i = 0; i <= m; ++i) {
        RowVector p(static_cast<std::size_t>(total));
        for (int t = 0; t < m; ++t) {
            Rational x = (i == t + 1 ? 1 : 0);
            p[static_cast<std::size_t>(offset + t)] = x - Rational(1, m + 1);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return static_cast<std::size_t>(x % range);
    }
}

std::vector<Face> combinations(std::size_t n, std::size_t k) {
    std::vector<Face> out;
    if (k > n) return out;
    Face cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<VertexId>(i);
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t t = i; t < k; ++t) cur[t] = cur[t - 1] + 1;
    }
    return out;
}

}  // namespace

Instance simplex_boundary(int d) {
    if (d < 1) throw ComplexError("simplex boundary needs d >= 1");
    LabelFace labels;
    for (int i = 0; i <= d; ++i) labels.push_back(indexed_label("v", static_cast<std::size_t>(i), static_cast<std::size_t>(d + 1)));
    auto pts = centered_simplex(d, 0, d);
    std::map<std::string, RowVector> coords;
    for (int i = 0; i <= d; ++i) coords[labels[static_cast<std::size_t>(i)]] = pts[static_cast<std::size_t>(i)];
    return polytope_instance("SB_" + std::to_string(d), "simplex-boundary", json{{"d", d}},
                             simplex_boundary_on(labels), coords);
}

Instance cross_polytope(int d) {
    if (d < 1) throw ComplexError("cross-polytope needs d >= 1");
    const auto count = static_cast<std::size_t>(d + 1);
    std::vector<LabelFace> facets{{}};
    std::map<std::string, RowVector> coords;
    for (int i = 1; i <= d; ++i) {
        std::string plus = indexed_label("p", static_cast<std::size_t>(i), count);
        std::string minus = indexed_label("m", static_cast<std::size_t>(i), count);
        RowVector e(static_cast<std::size_t>(d));
        e[static_cast<std::size_t>(i - 1)] = 1;
        coords[plus] = e;
        e[static_cast<std::size_t>(i - 1)] = -1;
        coords[minus] = e;
        std::vector<LabelFace> next;
        for (const auto& f : facets) {
            LabelFace a = f, b = f;
            a.push_back(plus);
            b.push_back(minus);
            next.push_back(std::move(a));
            next.push_back(std::move(b));
        }
        facets = std::move(next);
    }
    return polytope_instance("Oct_" + std::to_string(d), "cross-polytope", json{{"d", d}},
                             SimplicialComplex::from_facets(facets), coords);
}

Instance cyclic_polytope(int d, int n) {
    if (d < 2 || n < d + 1) throw ComplexError("cyclic polytope needs d >= 2 and n >= d + 1");
    LabelFace labels;
    std::map<std::string, RowVector> coords;
    for (int t = 1; t <= n; ++t) {
        std::string l = indexed_label("t", static_cast<std::size_t>(t), static_cast<std::size_t>(n + 1));
        RowVector x;
        Integer power = 1;
        for (int i = 1; i <= d; ++i) {
            power *= t;
            x.push_back(Rational(power));
        }
        coords[l] = std::move(x);
        labels.push_back(std::move(l));
    }
    // Gale's evenness condition.
    std::vector<LabelFace> facets;
    for (const auto& s : combinations(static_cast<std::size_t>(n), static_cast<std::size_t>(d))) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (auto v : s) in[v] = 1;
        bool even = true;
        for (int i = 0; i < n && even; ++i) {
            if (in[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (in[static_cast<std::size_t>(j)]) continue;
                int between = 0;
                for (int t = i + 1; t < j; ++t) between += in[static_cast<std::size_t>(t)];
                if (between % 2) {
                    even = false;
                    break;
                }
            }
        }
        if (!even) continue;
        LabelFace f;
        for (auto v : s) f.push_back(labels[v]);
        facets.push_back(std::move(f));
    }
    std::ostringstream name;
    name << "cyclic(" << d << "," << n << ")";
    return polytope_instance(name.str(), "cyclic-polytope", json{{"d", d}, {"n", n}},
                             SimplicialComplex::from_facets(facets), coords);
}

Instance stacked_sphere(int d, int n) {
    if (d < 2 || n < d + 1) throw ComplexError("stacked sphere needs d >= 2 and n >= d + 1");
    const auto count = static_cast<std::size_t>(n);
    LabelFace labels;
    for (int i = 0; i <= d; ++i) labels.push_back(indexed_label("v", static_cast<std::size_t>(i), count));
    auto base = centered_simplex(d, 0, d);
    std::map<std::string, RowVector> coords;
    for (int i = 0; i <= d; ++i) coords[labels[static_cast<std::size_t>(i)]] = base[static_cast<std::size_t>(i)];
    SimplicialComplex c = simplex_boundary_on(labels);
    std::string newest;
    for (int step = d + 1; step < n; ++step) {
        // Subdivide the first facet containing the newest vertex.
        Face target = c.facets().front();
        if (!newest.empty()) {
            VertexId nv = *c.index_of(newest);
            for (const auto& f : c.facets()) {
                if (std::binary_search(f.begin(), f.end(), nv)) {
                    target = f;
                    break;
                }
            }
        }
        Embedding emb = natural(c, coords);
        auto pts = emb.for_complex(c);
        linalg::DenseMatrix fp;
        RowVector bary(static_cast<std::size_t>(d));
        for (auto v : target) {
            fp.push_back(pts[v]);
            for (int i = 0; i < d; ++i) bary[static_cast<std::size_t>(i)] += pts[v][static_cast<std::size_t>(i)] / d;
        }
        RowVector centroid(static_cast<std::size_t>(d));
        for (const auto& p : pts) {
            for (int i = 0; i < d; ++i) centroid[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i)] / static_cast<long>(pts.size());
        }
        auto hp = hyperplane_through(fp, d);
        if (!hp) throw EmbeddingError("degenerate facet while stacking");
        RowVector normal = hp->first;
        Rational side = -hp->second;
        for (int i = 0; i < d; ++i) side += normal[static_cast<std::size_t>(i)] * centroid[static_cast<std::size_t>(i)];
        if (side.sign() > 0) {
            for (auto& x : normal) x = -x;
        }
        std::string apex = indexed_label("v", static_cast<std::size_t>(step), count);
        SimplicialComplex next = bistellar_flip(c, c.labels_of(target), {apex});
        Rational eps = 1;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 200) throw EmbeddingError("stacking never became convex");
            RowVector x = bary;
            for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] += eps * normal[static_cast<std::size_t>(i)];
            coords[apex] = x;
            if (check_polytopal(next, natural(next, coords)).ok) break;
            eps /= 2;
        }
        c = std::move(next);
        newest = apex;
    }
    std::ostringstream name;
    name << "stacked_sphere(" << d << "," << n << ")";
    return polytope_instance(name.str(), "stacked-sphere", json{{"d", d}, {"n", n}}, c, coords);
}

Instance stacked_join(int d, int k) {
    if (k < 1 || k > d - 1) throw ComplexError("stacked join needs 1 <= k <= d - 1");
    const int m = d - k;
    LabelFace a, b;
    for (int i = 0; i <= m; ++i) a.push_back(indexed_label("a", static_cast<std::size_t>(i), static_cast<std::size_t>(m + 1)));
    for (int i = 0; i <= k; ++i) b.push_back(indexed_label("b", static_cast<std::size_t>(i), static_cast<std::size_t>(k + 1)));
    auto pa = centered_simplex(m, 0, d);
    auto pb = centered_simplex(k, m, d);
    std::map<std::string, RowVector> coords;
    for (int i = 0; i <= m; ++i) coords[a[static_cast<std::size_t>(i)]] = pa[static_cast<std::size_t>(i)];
    for (int i = 0; i <= k; ++i) coords[b[static_cast<std::size_t>(i)]] = pb[static_cast<std::size_t>(i)];
    std::ostringstream name;
    name << "stacked_join(" << d << "," << k << ")";
    return polytope_instance(name.str(), "stacked-join", json{{"d", d}, {"k", k}},
                             join(simplex_boundary_on(a), simplex_boundary_on(b)), coords);
}

Instance polygon_join(const std::vector<int>& sizes) {
    if (sizes.empty()) throw ComplexError("polygon join needs at least one polygon");
    const int d = 2 * static_cast<int>(sizes.size());
    std::optional<SimplicialComplex> acc;
    std::map<std::string, RowVector> coords;
    std::ostringstream name;
    name << "polygon_join(";
    for (std::size_t r = 0; r < sizes.size(); ++r) {
        const int m = sizes[r];
        if (m < 3) throw ComplexError("polygons need at least 3 vertices");
        name << (r ? "," : "") << m;
        LabelFace labels;
        std::vector<LabelFace> edges;
        for (int i = 0; i < m; ++i) {
            labels.push_back("c" + std::to_string(r + 1) + indexed_label("v", static_cast<std::size_t>(i), static_cast<std::size_t>(m)));
        }
        for (int i = 0; i < m; ++i) edges.push_back({labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>((i + 1) % m)]});
        for (int i = 0; i < m; ++i) {
            // Rational point on the unit circle near angle 2 pi i / m.
            Rational x, y;
            if (2 * i == m) {
                x = -1;
                y = 0;
            } else {
                const double theta = 2.0 * std::numbers::pi * i / m;
                Rational t(static_cast<long>(std::llround(std::tan(theta / 2) * 100)), 100);
                x = (1 - t * t) / (1 + t * t);
                y = 2 * t / (1 + t * t);
            }
            RowVector p(static_cast<std::size_t>(d));
            p[2 * r] = x;
            p[2 * r + 1] = y;
            coords[labels[static_cast<std::size_t>(i)]] = p;
        }
        SimplicialComplex poly = SimplicialComplex::from_facets(edges);
        acc = acc ? join(*acc, poly) : poly;
    }
    name << ")";
    json params = json::object();
    params["sizes"] = sizes;
    return polytope_instance(name.str(), "polygon-join", params, *acc, coords);
}

Instance free_join(const std::vector<std::string>& part_expressions) {
    if (part_expressions.size() < 2) throw ComplexError("free join needs at least two parts");
    std::vector<Instance> parts;
    int d = 0;
    for (const auto& e : part_expressions) {
        if (e.find('@') != std::string::npos) throw ComplexError("free join parts must carry natural coordinates");
        parts.push_back(instance_from_expression(e));
        if (!is_polytope_constructor(parts.back().provenance.constructor)) {
            throw ComplexError("free join part '" + e + "' is not a polytope boundary");
        }
        d += parts.back().d();
    }
    std::optional<SimplicialComplex> acc;
    std::map<std::string, RowVector> coords;
    std::ostringstream name;
    name << "join(";
    int offset = 0;
    for (std::size_t r = 0; r < parts.size(); ++r) {
        const Instance& part = parts[r];
        const std::string prefix = "j" + std::to_string(r + 1) + "_";
        const int m = part.d();
        RowVector centroid(static_cast<std::size_t>(m));
        for (const auto& [label, x] : part.coords().coords) {
            for (int i = 0; i < m; ++i) centroid[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)];
        }
        for (auto& x : centroid) x /= static_cast<long>(part.complex.num_vertices());
        std::vector<LabelFace> facets;
        for (auto f : part.complex.facet_labels()) {
            for (auto& l : f) l = prefix + l;
            facets.push_back(std::move(f));
        }
        for (const auto& [label, x] : part.coords().coords) {
            RowVector p(static_cast<std::size_t>(d));
            for (int i = 0; i < m; ++i) {
                p[static_cast<std::size_t>(offset + i)] = x[static_cast<std::size_t>(i)] - centroid[static_cast<std::size_t>(i)];
            }
            coords[prefix + label] = std::move(p);
        }
        SimplicialComplex block = SimplicialComplex::from_facets(facets);
        acc = acc ? join(*acc, block) : block;
        offset += m;
        name << (r ? "," : "") << part_expressions[r];
    }
    name << ")";
    json params = json::object();
    params["parts"] = part_expressions;
    return polytope_instance(name.str(), "free-join", params, *acc, coords);
}

SimplicialComplex bistellar_flip(const SimplicialComplex& c, const LabelFace& a_labels, const LabelFace& b_labels) {
    const int d = c.dim() + 1;
    std::set<std::string> aset(a_labels.begin(), a_labels.end()), bset(b_labels.begin(), b_labels.end());
    if (aset.empty() || bset.empty()) throw FlipError("flip needs nonempty A and B");
    if (static_cast<int>(aset.size() + bset.size()) != d + 1) throw FlipError("flip needs |A| + |B| = d + 1");
    for (const auto& l : aset) {
        if (bset.count(l)) throw FlipError("A and B share vertex '" + l + "'");
    }
    auto describe = [](const std::set<std::string>& s) {
        std::string out = "{";
        for (const auto& l : s) out += (out.size() > 1 ? "," : "") + l;
        return out + "}";
    };
    LabelFace a(aset.begin(), aset.end());
    if (!c.contains_labels(a)) throw FlipError("A = " + describe(aset) + " is not a face");
    if (c.contains_labels(LabelFace(bset.begin(), bset.end()))) {
        throw FlipError("B = " + describe(bset) + " is a face, so Ā*∂B̄ is not induced");
    }
    for (const auto& b : bset) {
        std::set<std::string> f = aset;
        for (const auto& x : bset) {
            if (x != b) f.insert(x);
        }
        if (!c.contains_labels(LabelFace(f.begin(), f.end()))) {
            throw FlipError("A ∪ (B minus " + b + ") = " + describe(f) + " is not a face");
        }
    }
    Face a_idx = c.face_of(a);
    SimplicialComplex lk = link(c, a_idx);
    if (lk.facets().size() != bset.size() && !(bset.size() == 1 && lk.dim() == -1)) {
        throw FlipError("link of A = " + describe(aset) + " is larger than ∂B̄");
    }
    std::vector<LabelFace> facets;
    for (const auto& f : c.facets()) {
        if (!is_subset(a_idx, f)) facets.push_back(c.labels_of(f));
    }
    for (const auto& drop : aset) {
        LabelFace f(bset.begin(), bset.end());
        for (const auto& x : aset) {
            if (x != drop) f.push_back(x);
        }
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_facets(facets);
}

std::vector<FlipMove> legal_flips(const SimplicialComplex& c, const std::string& fresh) {
    const int d = c.dim() + 1;
    std::vector<FlipMove> moves;
    for (int j = 1; j < d; ++j) {
        const std::size_t bsize = static_cast<std::size_t>(d - j + 1);
        for (const auto& a : c.faces_of_dim(j - 1)) {
            SimplicialComplex lk = link(c, a);
            if (lk.num_vertices() != bsize || lk.facets().size() != bsize || !lk.is_pure() ||
                lk.dim() != static_cast<int>(bsize) - 2) {
                continue;
            }
            if (c.contains_labels(lk.labels())) continue;
            moves.push_back({c.labels_of(a), lk.labels()});
        }
    }
    for (const auto& f : c.facets()) moves.push_back({c.labels_of(f), {fresh}});
    return moves;
}

SimplicialComplex replay(const FlipTrace& trace) {
    SimplicialComplex c = trace.start;
    for (const auto& s : trace.steps) c = bistellar_flip(c, s.a, s.b);
    return c;
}

bool FlipConstraints::admits(const SimplicialComplex& c) const {
    if (!keep_flag && !forbid_missing_dim_from) return true;
    auto m = missing_faces(c);
    for (const auto& f : m) {
        const int dim = static_cast<int>(f.size()) - 1;
        if (keep_flag && dim > 1) return false;
        if (forbid_missing_dim_from && dim >= *forbid_missing_dim_from) return false;
    }
    return true;
}

FlipTrace random_flip_walk(const SimplicialComplex& start, int steps, std::uint64_t seed,
                           const FlipConstraints& constraints,
                           const std::function<std::string(std::size_t)>& fresh_label) {
    FlipTrace trace{start, {}, seed};
    std::mt19937_64 rng(seed);
    SimplicialComplex c = start;
    std::size_t fresh_count = 0;
    for (int step = 0; step < steps; ++step) {
        const std::string fresh = fresh_label(fresh_count);
        std::vector<std::pair<FlipMove, SimplicialComplex>> admissible;
        for (auto& mv : legal_flips(c, fresh)) {
            SimplicialComplex next = bistellar_flip(c, mv.a, mv.b);
            if (constraints.admits(next)) admissible.emplace_back(std::move(mv), std::move(next));
        }
        if (admissible.empty()) {
            throw FlipError("no admissible flip at step " + std::to_string(step), trace);
        }
        auto& [mv, next] = admissible[uniform_index(rng, admissible.size())];
        if (mv.b.size() == 1 && mv.b[0] == fresh) ++fresh_count;
        trace.steps.push_back({mv.a, mv.b, static_cast<int>(mv.a.size())});
        c = std::move(next);
    }
    return trace;
}

Instance random_pl_sphere(int d, int steps, std::uint64_t seed, const FlipConstraints& constraints) {
    if (d < 2 || steps < 0) throw ComplexError("random PL sphere needs d >= 2 and steps >= 0");
    const auto count = static_cast<std::size_t>(d + 1 + steps);
    LabelFace labels;
    for (int i = 0; i <= d; ++i) labels.push_back(indexed_label("v", static_cast<std::size_t>(i), count));
    SimplicialComplex start = simplex_boundary_on(labels);
    FlipTrace trace = random_flip_walk(start, steps, seed, constraints, [&](std::size_t t) {
        return indexed_label("v", static_cast<std::size_t>(d + 1) + t, count);
    });
    Instance inst;
    std::ostringstream name;
    name << "random_pl_sphere(" << d << "," << steps << "," << seed << ")";
    inst.name = name.str();
    inst.complex = replay(trace);
    inst.trace = std::move(trace);
    inst.provenance.constructor = "random-pl-sphere";
    inst.provenance.params = json{{"d", d}, {"steps", steps}};
    if (constraints.keep_flag) inst.provenance.params["keep_flag"] = true;
    if (constraints.forbid_missing_dim_from) inst.provenance.params["forbid_missing_dim_from"] = *constraints.forbid_missing_dim_from;
    inst.provenance.seed = seed;
    return with_generic_embedding(std::move(inst), seed);
}

SimplicialComplex murai_nevo_ball(const SimplicialComplex& c, int k) {
    const int d = c.dim() + 1;
    if (k < 0 || k > d - 1) throw ComplexError("T(Δ) needs 0 <= k <= d - 1");
    const std::size_t s = static_cast<std::size_t>(d - k);  // subsets up to this size must be faces
    const auto n = static_cast<VertexId>(c.num_vertices());
    std::vector<Face> members;
    for (int j = -1; j < static_cast<int>(s) && j <= c.dim(); ++j) {
        for (const auto& f : c.faces_of_dim(j)) members.push_back(f);
    }
    if (static_cast<int>(s) - 1 > c.dim()) return SimplicialComplex::from_indexed(c.labels(), std::move(members));
    // Sets above size s only need their s-subsets through the new vertex checked.
    std::vector<Face> level = c.faces_of_dim(static_cast<int>(s) - 1);
    while (!level.empty()) {
        std::vector<Face> next;
        for (const auto& f : level) {
            for (VertexId v = f.back() + 1; v < n; ++v) {
                bool ok = true;
                for (const auto& sub : combinations(f.size(), s - 1)) {
                    Face g;
                    for (auto i : sub) g.push_back(f[i]);
                    g.push_back(v);
                    if (!c.contains(g)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                Face cand = f;
                cand.push_back(v);
                next.push_back(std::move(cand));
            }
        }
        members.insert(members.end(), level.begin(), level.end());
        level = std::move(next);
    }
    return SimplicialComplex::from_indexed(c.labels(), std::move(members));
}

Instance with_generic_embedding(Instance inst, std::uint64_t seed, std::uint64_t bound) {
    GenericEmbedding g = generic_random(inst.complex, inst.d(), seed, bound);
    inst.embedding = std::move(g.embedding);
    inst.embedding_kind = EmbeddingKind::generic;
    inst.certificate = g.certificate;
    inst.embedding_seed = seed;
    inst.embedding_bound = bound;
    return inst;
}

namespace {

int param_int(const json& params, std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
        if (params.contains(k)) return params.at(k).get<int>();
    }
    throw StressLabError(std::string("missing parameter '") + *keys.begin() + "'");
}

}  // namespace

Instance make_instance(const std::string& constructor, const json& params) {
    if (constructor == "simplex-boundary") return simplex_boundary(param_int(params, {"d", "dim"}));
    if (constructor == "cross-polytope") return cross_polytope(param_int(params, {"d", "dim"}));
    if (constructor == "cyclic-polytope") return cyclic_polytope(param_int(params, {"d", "dim"}), param_int(params, {"n"}));
    if (constructor == "stacked-sphere") return stacked_sphere(param_int(params, {"d", "dim"}), param_int(params, {"n"}));
    if (constructor == "stacked-join") return stacked_join(param_int(params, {"d", "dim"}), param_int(params, {"k"}));
    if (constructor == "polygon-join") {
        if (!params.contains("sizes")) throw StressLabError("missing parameter 'sizes'");
        return polygon_join(params.at("sizes").get<std::vector<int>>());
    }
    if (constructor == "free-join") {
        if (!params.contains("parts")) throw StressLabError("missing parameter 'parts'");
        return free_join(params.at("parts").get<std::vector<std::string>>());
    }
    if (constructor == "random-pl-sphere") {
        FlipConstraints cons;
        if (params.contains("keep_flag")) cons.keep_flag = params.at("keep_flag").get<bool>();
        if (params.contains("forbid_missing_dim_from")) cons.forbid_missing_dim_from = params.at("forbid_missing_dim_from").get<int>();
        std::uint64_t seed = params.contains("seed") ? params.at("seed").get<std::uint64_t>() : 0;
        return random_pl_sphere(param_int(params, {"d", "dim"}), param_int(params, {"steps"}), seed, cons);
    }
    throw StressLabError("unknown constructor '" + constructor + "'");
}

Instance instance_from_expression(const std::string& raw) {
    std::string expr = raw;
    std::optional<std::uint64_t> generic_seed;
    if (auto at = expr.find("@generic"); at != std::string::npos) {
        std::string rest = expr.substr(at + 8);
        generic_seed = rest.empty() ? 1 : std::stoull(rest.substr(1));
        expr = expr.substr(0, at);
    }
    if (expr.rfind("join(", 0) == 0 && expr.back() == ')') {
        // Split the argument list at top-level commas.
        std::vector<std::string> parts;
        std::string cur;
        int depth = 0;
        for (char ch : expr.substr(5, expr.size() - 6)) {
            if (ch == ',' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
                continue;
            }
            depth += (ch == '(') - (ch == ')');
            if (ch != ' ') cur += ch;
        }
        parts.push_back(cur);
        Instance inst = free_join(parts);
        if (generic_seed) inst = with_generic_embedding(std::move(inst), *generic_seed);
        return inst;
    }
    std::smatch m;
    std::vector<int> args;
    std::string head;
    static const std::regex shorthand(R"(^(Oct|SB|C)_(\d+)$)");
    static const std::regex call(R"(^([a-z_]+)\(([\d,\s]*)\)$)");
    if (std::regex_match(expr, m, shorthand)) {
        head = m[1];
        args.push_back(std::stoi(m[2]));
    } else if (std::regex_match(expr, m, call)) {
        head = m[1];
        std::stringstream ss(m[2]);
        std::string item;
        while (std::getline(ss, item, ',')) args.push_back(std::stoi(item));
    } else {
        throw StressLabError("unrecognized instance expression '" + raw + "'");
    }
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw StressLabError("wrong argument count in '" + raw + "'");
    };
    Instance inst;
    if (head == "Oct" || head == "cross_polytope") {
        need(1);
        inst = cross_polytope(args[0]);
    } else if (head == "SB" || head == "simplex_boundary") {
        need(1);
        inst = simplex_boundary(args[0]);
    } else if (head == "C") {
        need(1);
        inst = polygon_join({args[0]});
    } else if (head == "cyclic" || head == "cyclic_polytope") {
        need(2);
        inst = cyclic_polytope(args[0], args[1]);
    } else if (head == "stacked_sphere") {
        need(2);
        inst = stacked_sphere(args[0], args[1]);
    } else if (head == "stacked_join") {
        need(2);
        inst = stacked_join(args[0], args[1]);
    } else if (head == "polygon_join") {
        inst = polygon_join(args);
    } else if (head == "random_pl_sphere") {
        need(3);
        inst = random_pl_sphere(args[0], args[1], static_cast<std::uint64_t>(args[2]));
    } else {
        throw StressLabError("unknown instance family '" + head + "'");
    }
    if (generic_seed) inst = with_generic_embedding(std::move(inst), *generic_seed);
    return inst;
}

bool is_polytope_constructor(const std::string& constructor) {
    static const std::set<std::string> names{"simplex-boundary", "cross-polytope", "cyclic-polytope",
                                             "stacked-sphere",   "stacked-join",   "polygon-join",
                                             "free-join"};
    return names.count(constructor) > 0;
}

bool provenance_replays(const Instance& inst) {
    try {
        if (inst.trace) return replay(*inst.trace) == inst.complex;
        if (!is_polytope_constructor(inst.provenance.constructor)) return false;
        return make_instance(inst.provenance.constructor, inst.provenance.params).complex == inst.complex;
    } catch (const StressLabError&) {
        return false;
    }
}

}  // namespace stresslab
