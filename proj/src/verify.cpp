#include "stresslab/verify.hpp"

#include "stresslab/homology.hpp"
#include "stresslab/io.hpp"
#include "stresslab/lp.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

namespace stresslab {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Collects hypotheses (gates) and expectations (the claims under test).
class Run {
  public:
    Run(std::string id, json summary) : start_(Clock::now()) {
        r_.check_id = std::move(id);
        r_.instance = std::move(summary);
    }
    Run(std::string id, const Instance& inst) : Run(std::move(id), instance_summary(inst)) {}

    bool require(const std::string& name, bool holds) {
        r_.hypotheses.push_back({name, holds});
        return holds;
    }
    void expect(const std::string& name, bool holds) {
        checks_[name] = holds;
        if (!holds) failed_.push_back(name);
    }
    bool all_expected() const { return failed_.empty(); }
    json& dims() { return r_.dims; }
    json& witness() { return extra_; }

    VerificationReport unmet() { return finish(Conclusion::hypothesis_unmet, nullptr); }

    VerificationReport verdict() {
        if (failed_.empty()) return finish(Conclusion::pass, extra_.empty() ? json(nullptr) : extra_);
        return finish(Conclusion::fail, failure_witness());
    }

    VerificationReport probe() {
        if (failed_.empty()) return finish(Conclusion::probe_holds, extra_.empty() ? json(nullptr) : extra_);
        return finish(Conclusion::probe_fails, failure_witness());
    }

  private:
    json failure_witness() const {
        json w = json::object();
        w["failed"] = failed_;
        for (const auto& [k, v] : extra_.items()) w[k] = v;
        return w;
    }

    VerificationReport finish(Conclusion c, json witness) {
        if (!checks_.empty()) r_.dims["checks"] = checks_;
        r_.conclusion = c;
        r_.witness = std::move(witness);
        r_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
        return std::move(r_);
    }

    VerificationReport r_;
    json checks_ = json::object();
    json extra_ = json::object();
    std::vector<std::string> failed_;
    Clock::time_point start_;
};

std::string key(const std::string& prefix, int k) {
    return prefix + "_" + std::to_string(k);
}

Subspace affine(const SimplicialComplex& c, const Embedding& p, int k) {
    return stress_space(c, p, k, StressKind::affine).space;
}

Subspace linear(const SimplicialComplex& c, const Embedding& p, int k) {
    return stress_space(c, p, k, StressKind::linear).space;
}

Subspace star_sum(const SimplicialComplex& c, const Embedding& p, const std::vector<Face>& centers, int k,
                  StressKind kind, const BasisPtr& ambient) {
    std::vector<Subspace> parts;
    parts.reserve(centers.size());
    for (const auto& f : centers) parts.push_back(stress_space(star(c, f), p, k, kind).space);
    return sum(parts, ambient);
}

bool missing_at_most(const SimplicialComplex& c, int bound) {
    auto m = max_missing_dim(c);
    return !m || *m <= bound;
}

bool any_homology_sphere(const SimplicialComplex& c) {
    return is_homology_sphere(c, Field::Q) || is_homology_sphere(c, Field::GF2);
}

bool closed_normal_pseudomanifold(const SimplicialComplex& c) {
    StructureReport s = classify(c);
    return s.pseudomanifold == Pseudomanifold::without_boundary && s.normal;
}

bool embedded(Run& run, const Instance& inst) {
    return run.require("embedding present", inst.embedding.has_value()) &&
           run.require("embedding dimension equals d", inst.embedding->dim == inst.d());
}

// Polytope boundaries under the missing-face bound d - 2i + 1, or flag PL spheres
// embedded generically.
bool higher_scope(const Instance& inst, bool polytopal, int i) {
    const int d = inst.d();
    if (polytopal && missing_at_most(inst.complex, d - 2 * i + 1)) return true;
    return is_flag(inst.complex) && is_pl_certified(inst) && is_generic_proxy(inst);
}

// Polytope boundaries or closed normal pseudomanifolds embedded generically,
// in both cases with no missing face of dimension >= d - 2.
bool rigidity_scope(const Instance& inst, bool polytopal) {
    if (!missing_at_most(inst.complex, inst.d() - 3)) return false;
    return polytopal || (is_generic_proxy(inst) && closed_normal_pseudomanifold(inst.complex));
}

std::vector<LabelFace> face_labels(const SimplicialComplex& c, const std::vector<Face>& faces) {
    std::vector<LabelFace> out;
    out.reserve(faces.size());
    for (const auto& f : faces) out.push_back(c.labels_of(f));
    return out;
}

RowVector reembed_vector(const StressPoly& v, const BasisPtr& target) {
    RowVector out(target->size());
    const auto& from = v.basis->labels();
    const auto& to = target->labels();
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
        if (v.coeffs[i].sign() == 0) continue;
        Monomial m;
        for (auto x : (*v.basis)[i]) {
            auto it = std::lower_bound(to.begin(), to.end(), from[x]);
            if (it == to.end() || *it != from[x]) throw StressError("vertex '" + from[x] + "' is not in the target basis");
            m.push_back(static_cast<VertexId>(it - to.begin()));
        }
        std::sort(m.begin(), m.end());
        auto col = target->index_of(m);
        if (!col) throw StressError("monomial " + v.basis->text(i) + " is not in the target basis");
        out[*col] = v.coeffs[i];
    }
    return out;
}

RowVector combine(const linalg::DenseMatrix& rows, const RowVector& weights, std::size_t ncols) {
    RowVector out(ncols);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (weights[t].sign() == 0) continue;
        for (std::size_t c = 0; c < ncols; ++c) out[c] += weights[t] * rows[t][c];
    }
    return out;
}

Subspace image_under(const Subspace& s, const Monomial& mu) {
    BasisPtr target = s.basis->divisors(static_cast<int>(mu.size()));
    linalg::DenseMatrix gens;
    for (std::size_t t = 0; t < s.dim(); ++t) gens.push_back(derivative(s.vector(t), mu).coeffs);
    return span(target, gens);
}

bool same_faces(std::vector<LabelFace> a, std::vector<LabelFace> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

json g_vector(const SimplicialComplex& c, int d) {
    return fhg(c, d).g;
}

bool is_octahedral(const SimplicialComplex& c, int d) {
    const std::size_t n = c.num_vertices();
    if (n != static_cast<std::size_t>(2 * d)) return false;
    std::vector<std::set<VertexId>> nbrs(n);
    for (const auto& e : c.faces_of_dim(1)) {
        nbrs[e[0]].insert(e[1]);
        nbrs[e[1]].insert(e[0]);
    }
    std::vector<VertexId> partner(n);
    for (VertexId v = 0; v < n; ++v) {
        if (nbrs[v].size() != n - 2) return false;
        for (VertexId u = 0; u < n; ++u) {
            if (u != v && !nbrs[v].count(u)) partner[v] = u;
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (partner[partner[v]] != v) return false;
    }
    // No facet holds a pair, so each of the 2^d facets picks one vertex per pair.
    return c.facets().size() == (std::size_t{1} << d);
}

std::optional<Face> face_if_valid(const SimplicialComplex& c, const LabelFace& labels) {
    Face f;
    for (const auto& l : labels) {
        auto v = c.index_of(l);
        if (!v) return std::nullopt;
        f.push_back(*v);
    }
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) return std::nullopt;
    return f;
}

}  // namespace

const char* conclusion_name(Conclusion c) {
    switch (c) {
        case Conclusion::pass: return "pass";
        case Conclusion::fail: return "fail";
        case Conclusion::hypothesis_unmet: return "hypothesis-unmet";
        case Conclusion::probe_holds: return "probe-holds";
        case Conclusion::probe_fails: return "probe-fails";
    }
    return "hypothesis-unmet";
}

Conclusion parse_conclusion(const std::string& s) {
    for (auto c : {Conclusion::pass, Conclusion::fail, Conclusion::hypothesis_unmet, Conclusion::probe_holds,
                   Conclusion::probe_fails}) {
        if (s == conclusion_name(c)) return c;
    }
    throw StressLabError("unknown conclusion '" + s + "'");
}

bool VerificationReport::is_probe() const {
    return conclusion == Conclusion::probe_holds || conclusion == Conclusion::probe_fails ||
           check_id.rfind("conj-", 0) == 0;
}

std::optional<std::string> VerificationReport::unmet() const {
    for (const auto& h : hypotheses) {
        if (!h.holds) return h.name;
    }
    return std::nullopt;
}

json instance_summary(const Instance& inst) {
    json j;
    j["name"] = inst.name;
    j["constructor"] = inst.provenance.constructor;
    j["params"] = inst.provenance.params;
    j["seed"] = inst.provenance.seed ? json(*inst.provenance.seed) : json(nullptr);
    j["embedding_kind"] = inst.embedding_kind == EmbeddingKind::generic   ? "generic"
                          : inst.embedding_kind == EmbeddingKind::natural ? "natural"
                                                                          : "none";
    j["embedding_seed"] = inst.embedding_seed ? json(*inst.embedding_seed) : json(nullptr);
    j["vertices"] = inst.complex.num_vertices();
    j["d"] = inst.d();
    return j;
}

bool is_polytopal(const Instance& inst) {
    if (!inst.embedding || inst.embedding->dim != inst.d() || inst.d() < 1 || !inst.complex.is_pure()) return false;
    try {
        return check_polytopal(inst.complex, *inst.embedding).ok;
    } catch (const StressLabError&) {
        return false;
    }
}

bool is_generic_proxy(const Instance& inst) {
    if (!inst.embedding || inst.embedding_kind != EmbeddingKind::generic) return false;
    return certify(inst.complex, *inst.embedding).passes();
}

bool is_pl_certified(const Instance& inst) {
    return provenance_replays(inst);
}

bool is_facet_independent(const Instance& inst) {
    return inst.embedding && certify(inst.complex, *inst.embedding).facet_independent;
}

VerificationReport verify_lefschetz(const Instance& inst, int i) {
    Run run("lefschetz", inst);
    const int d = inst.d();
    run.dims()["i"] = i;
    if (!run.require("1 <= i <= ceil(d/2)", 1 <= i && i <= (d + 1) / 2)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    const bool scope = is_polytopal(inst) || (is_generic_proxy(inst) && is_homology_sphere(inst.complex, Field::GF2));
    if (!run.require("polytope, or GF2 homology sphere with generic embedding", scope)) return run.unmet();

    const auto& c = inst.complex;
    const auto& p = inst.coords();
    Subspace top = linear(c, p, i);
    Subspace below = linear(c, p, i - 1);
    Subspace aff = affine(c, p, i);
    const RowVector ones(top.basis->labels().size(), Rational(1));
    linalg::DenseMatrix image;
    for (std::size_t t = 0; t < top.dim(); ++t) image.push_back(derivative_by_form(top.vector(t), ones).coeffs);
    const long g = g_at(fhg(c, d), i);

    run.dims()[key("linear", i)] = top.dim();
    run.dims()[key("linear", i - 1)] = below.dim();
    run.dims()[key("affine", i)] = aff.dim();
    run.dims()[key("g", i)] = g;
    run.expect("derivative along the ones form is onto", equals(span(top.basis->divisors(1), image), below));
    run.expect("affine dimension equals g", static_cast<long>(aff.dim()) == g);
    if (d == 2 * i - 1) run.expect("derivative along the ones form is injective", top.dim() == below.dim());
    return run.verdict();
}

VerificationReport verify_pou_affine1(const Instance& inst) {
    Run run("pou-affine1", inst);
    const int d = inst.d();
    if (!run.require("d >= 3", d >= 3)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    const auto& c = inst.complex;
    const auto& p = inst.coords();
    if (!run.require("strongly connected", is_strongly_connected(c))) return run.unmet();
    if (!run.require("adjacent facets affinely independent", certify(c, p).adjacent_pairs_affinely_independent)) {
        return run.unmet();
    }

    Subspace whole = affine(c, p, 1);
    Subspace by_faces = star_sum(c, p, c.faces_of_dim(d - 3), 1, StressKind::affine, whole.basis);
    Subspace by_vertices = star_sum(c, p, c.faces_of_dim(0), 1, StressKind::affine, whole.basis);
    run.dims()["affine_1"] = whole.dim();
    run.dims()["codim2_star_sum"] = by_faces.dim();
    run.dims()["vertex_star_sum"] = by_vertices.dim();
    run.expect("sum over stars of (d-3)-faces", equals(whole, by_faces));
    run.expect("sum over vertex stars", equals(whole, by_vertices));
    return run.verdict();
}

VerificationReport verify_pou_linear(const Instance& inst, int i, int k, std::optional<int> j) {
    Run run("pou-linear", inst);
    const int lower = j.value_or(i - 1);
    run.dims()["i"] = i;
    run.dims()["k"] = k;
    run.dims()["j"] = lower;
    if (!embedded(run, inst)) return run.unmet();
    const auto& c = inst.complex;
    const auto& p = inst.coords();

    // Vertices common to all facets: if any, c is a simplex joined with the link of that set.
    Face apex = c.facets().front();
    for (const auto& f : c.facets()) {
        Face keep;
        std::set_intersection(apex.begin(), apex.end(), f.begin(), f.end(), std::back_inserter(keep));
        apex = std::move(keep);
    }
    const bool joined = !apex.empty();
    const SimplicialComplex sphere = joined ? link(c, apex) : c;
    run.dims()["shape"] = joined ? "simplex-join" : "sphere";
    if (joined) run.dims()["simplex"] = c.labels_of(apex);
    if (!run.require(joined ? "link of the common simplex is a homology sphere" : "homology sphere",
                     any_homology_sphere(sphere))) {
        return run.unmet();
    }
    if (!run.require("facets linearly independent", certify(c, p).facet_independent)) return run.unmet();

    const int n = sphere.dim() + 1;  // the sphere is an (n-1)-sphere
    const bool part1 = 1 <= i && i <= n - 1 && 1 <= k && k <= n - i;
    const bool part2 = 1 <= lower && lower < i && i <= n;
    if (!run.require("parameters in range of the star decomposition or the derivative span", part1 || part2)) {
        return run.unmet();
    }
    run.dims()["star_decomposition_checked"] = part1;
    run.dims()["derivative_span_checked"] = part2;

    Subspace top = linear(c, p, i);
    run.dims()[key("linear", i)] = top.dim();
    auto centers = [&](int size) {
        std::vector<Face> out;
        for (const auto& g : sphere.faces_of_dim(size - 1)) out.push_back(c.face_of(sphere.labels_of(g)));
        return out;
    };
    if (part1) {
        if (!joined) run.expect("sum over vertex stars", equals(top, star_sum(c, p, centers(1), i, StressKind::linear, top.basis)));
        run.expect("sum over stars of k-faces", equals(top, star_sum(c, p, centers(k), i, StressKind::linear, top.basis)));
    }
    if (part2) {
        Subspace target = linear(c, p, lower);
        run.dims()[key("linear", lower)] = target.dim();
        if (joined) {
            std::vector<VertexId> vs;
            for (const auto& l : sphere.labels()) vs.push_back(*c.index_of(l));
            run.expect("derivatives by monomials in the link span", equals(derivative_span_over(top, i - lower, vs), target));
        } else {
            run.expect("derivatives by all squarefree monomials span",
                       equals(derivative_span(top, i - lower, DerivativeMode::all_monomials), target));
            run.expect("derivatives by face monomials span",
                       equals(derivative_span(top, i - lower, DerivativeMode::face_monomials), target));
        }
    }
    return run.verdict();
}

VerificationReport verify_pou_affine_higher(const Instance& inst, int i) {
    Run run("pou-affine-higher", inst);
    const int d = inst.d();
    run.dims()["i"] = i;
    if (!run.require("2 <= i <= (d-1)/2", 2 <= i && 2 * i <= d - 1)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    const bool scope = is_polytopal(inst) || (is_pl_certified(inst) && is_generic_proxy(inst));
    if (!run.require("polytope, or PL sphere with generic embedding", scope)) return run.unmet();

    const auto& c = inst.complex;
    const auto& p = inst.coords();
    Subspace whole = affine(c, p, i);
    Subspace parts = star_sum(c, p, c.faces_of_dim(0), i, StressKind::affine, whole.basis);
    run.dims()[key("affine", i)] = whole.dim();
    run.dims()["vertex_star_sum"] = parts.dim();
    run.expect("sum over vertex stars", equals(whole, parts));
    return run.verdict();
}

VerificationReport verify_antistar(const Instance& inst, const LabelFace& tau, int i) {
    Run run("antistar", inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    run.dims()["i"] = i;
    run.dims()["tau"] = tau;
    if (!run.require("d >= 4", d >= 4)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    auto t = face_if_valid(c, tau);
    if (!run.require("tau is a nonempty face", t && !t->empty() && c.contains(*t))) return run.unmet();
    if (!run.require("1 <= i <= d-1", 1 <= i && i <= d - 1)) return run.unmet();
    const bool polytopal = is_polytopal(inst);
    const bool flag_pl = !polytopal && is_flag(c) && is_pl_certified(inst) && is_generic_proxy(inst);
    if (!run.require("polytope, or flag PL sphere with generic embedding", polytopal || flag_pl)) return run.unmet();
    SimplicialComplex rest = antistar(c, *t);
    if (!run.require("antistar is a pseudomanifold with boundary",
                     classify(rest).pseudomanifold == Pseudomanifold::with_boundary)) {
        return run.unmet();
    }

    const auto& p = inst.coords();
    std::vector<Face> centers;
    for (const auto& h : minimal_interior_faces(rest)) centers.push_back(c.face_of(rest.labels_of(h)));
    Subspace whole = linear(rest, p, i);
    Subspace parts = star_sum(c, p, centers, i, StressKind::linear, whole.basis);
    run.dims()["minimal_interior_faces"] = face_labels(c, centers);
    run.dims()[key("linear", i)] = whole.dim();
    run.dims()["star_sum"] = parts.dim();
    run.expect("linear stresses of the antistar split over stars of minimal interior faces", equals(whole, parts));

    const bool claims = 2 * i <= d && (flag_pl || missing_at_most(c, d - 2 * i + 1));
    run.dims()["dimension_claims_checked"] = claims;
    if (claims) {
        const FHGVectors fv = fhg(rest, d);
        const int first = std::max<int>(1, static_cast<int>(tau.size()));
        for (int j = first; j <= i; ++j) {
            const auto dim = affine(rest, p, j).dim();
            const long g = g_at(fv, j);
            run.dims()[key("antistar_affine", j)] = dim;
            run.dims()[key("antistar_g", j)] = g;
            run.expect("antistar affine " + std::to_string(j) + "-stresses have dimension g", static_cast<long>(dim) == g);
        }
    }
    return run.verdict();
}

VerificationReport verify_star_surjection(const Instance& inst, int i, const LabelFace& tau) {
    Run run("star-surjection", inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    run.dims()["i"] = i;
    run.dims()["tau"] = tau;
    if (!run.require("d >= 4", d >= 4)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    auto t = face_if_valid(c, tau);
    if (!run.require("tau is a nonempty face", t && !t->empty() && c.contains(*t))) return run.unmet();
    const int size = static_cast<int>(t->size());
    if (!run.require("|tau| <= i <= d/2", size <= i && 2 * i <= d)) return run.unmet();
    if (!run.require("polytope with missing faces of dim <= d-2i+1, or flag PL sphere with generic embedding",
                     higher_scope(inst, is_polytopal(inst), i))) {
        return run.unmet();
    }

    const auto& p = inst.coords();
    Subspace whole = affine(c, p, i);
    Subspace image = image_under(whole, *t);
    Subspace target = affine(star(c, *t), p, i - size);
    const long g = g_at(fhg(c, d), i);
    const long g_link = g_at(fhg(link(c, *t), d - size), i - size);
    run.dims()[key("affine", i)] = whole.dim();
    run.dims()["image"] = image.dim();
    run.dims()[key("star_affine", i - size)] = target.dim();
    run.dims()[key("g", i)] = g;
    run.dims()[key("link_g", i - size)] = g_link;
    run.expect("derivative by x_tau maps onto the star's stresses", equals(image, target));
    run.expect("g_i >= g_{i-|tau|} of the link", g >= g_link);
    return run.verdict();
}

VerificationReport verify_reconstruction(const Instance& inst, int i, int j) {
    Run run("reconstruction", inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    run.dims()["i"] = i;
    run.dims()["j"] = j;
    if (!run.require("d >= 4", d >= 4)) return run.unmet();
    if (!run.require("1 <= j < i <= d/2", 1 <= j && j < i && 2 * i <= d)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    const bool polytopal = is_polytopal(inst);
    const bool scope = (i == 2 && rigidity_scope(inst, polytopal)) || higher_scope(inst, polytopal, i);
    if (!run.require(i == 2 ? "polytope or closed normal pseudomanifold with generic embedding, missing faces of dim <= d-3;"
                              " or polytope with missing faces of dim <= d-2i+1, or flag PL sphere with generic embedding"
                            : "polytope with missing faces of dim <= d-2i+1, or flag PL sphere with generic embedding",
                     scope)) {
        return run.unmet();
    }

    const auto& p = inst.coords();
    Subspace top = affine(c, p, i);
    Subspace target = affine(c, p, j);
    Subspace spanned = derivative_span(top, i - j, DerivativeMode::all_monomials);
    run.dims()[key("affine", i)] = top.dim();
    run.dims()[key("affine", j)] = target.dim();
    run.dims()["derivative_span"] = spanned.dim();
    run.dims()["face_mode_agrees"] = equals(spanned, derivative_span(top, i - j, DerivativeMode::face_monomials));
    run.expect("derivative span equals the lower stress space", equals(spanned, target));
    if (j == 1) {
        try {
            Embedding q = recover_affine_type(spanned);
            run.expect("recovered embedding has the same affine dependencies", equals(affine(c, q, 1), target));
            run.expect("recovered embedding is the canonical form of the original", q == canonical(p.restricted_to(c)));
            run.witness()["recovered_embedding"] = io::embedding_to_json(q);
        } catch (const StressLabError& e) {
            run.expect("affine type recovered", false);
            run.witness()["error"] = e.what();
        }
    }
    return run.verdict();
}

VerificationReport verify_support(const Instance& inst, int i) {
    Run run("support", inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    run.dims()["i"] = i;
    if (!run.require("2 <= i <= d/2", 2 <= i && 2 * i <= d)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    const bool polytopal = is_polytopal(inst);
    const bool scope = (i == 2 && d >= 4 && rigidity_scope(inst, polytopal)) || higher_scope(inst, polytopal, i);
    if (!run.require("polytope with missing faces of dim <= d-2i+1 (d-3 when i = 2), or flag PL sphere with generic"
                     " embedding (closed normal pseudomanifold when i = 2)",
                     scope)) {
        return run.unmet();
    }

    Subspace s = affine(c, inst.coords(), i);
    auto supported = support_faces(s);
    auto all = face_labels(c, c.faces_of_dim(i - 1));
    run.dims()[key("affine", i)] = s.dim();
    run.dims()["faces"] = all.size();
    run.dims()["supported_faces"] = supported.size();
    const bool ok = same_faces(supported, all);
    if (!ok) {
        std::sort(supported.begin(), supported.end());
        std::vector<LabelFace> missing;
        for (const auto& f : all) {
            if (!std::binary_search(supported.begin(), supported.end(), f)) missing.push_back(f);
        }
        run.witness()["unsupported"] = missing;
    }
    run.expect("every (i-1)-face participates in some affine i-stress", ok);
    return run.verdict();
}

VerificationReport verify_flag_g_bound(const Instance& inst) {
    Run run("flag-g-bound", inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    if (!run.require("flag", is_flag(c))) return run.unmet();
    if (!run.require("GF2 homology sphere", is_homology_sphere(c, Field::GF2))) return run.unmet();
    if (!run.require("PL certificate replays", is_pl_certified(inst))) return run.unmet();

    const FHGVectors fv = fhg(c, d);
    std::vector<int> equality_at, violated_at;
    json bounds = json::array();
    for (int i = 1; 2 * i <= d; ++i) {
        const long bound = binomial_long(d, i) - binomial_long(d, i - 1);
        const long g = g_at(fv, i);
        bounds.push_back(bound);
        if (g < bound) violated_at.push_back(i);
        if (g == bound) equality_at.push_back(i);
    }
    const bool oct = is_octahedral(c, d);
    run.dims()["g"] = fv.g;
    run.dims()["bound"] = bounds;
    run.expect("g_i >= C(d,i) - C(d,i-1)", violated_at.empty());
    run.expect("equality only on the octahedral sphere", equality_at.empty() || oct);
    run.expect("octahedral sphere attains equality throughout", !oct || static_cast<int>(equality_at.size()) == d / 2);
    run.witness()["equality_at"] = equality_at;
    run.witness()["octahedral"] = oct;
    if (!violated_at.empty()) run.witness()["violated_at"] = violated_at;
    return run.verdict();
}

SignStressResult positive_stress_on_missing_face(const Instance& inst, const LabelFace& missing, const LabelFace& face,
                                                 int i) {
    Run run("sign-stress", inst);
    SignStressResult out;
    const int d = inst.d();
    const auto& c = inst.complex;
    run.dims()["i"] = i;
    run.dims()["missing_face"] = missing;
    run.dims()["face"] = face;
    auto stop = [&](VerificationReport r) {
        out.report = std::move(r);
        return out;
    };
    if (!run.require("i >= 1", i >= 1)) return stop(run.unmet());
    if (!run.require("d >= 2i", d >= 2 * i)) return stop(run.unmet());
    if (!embedded(run, inst)) return stop(run.unmet());
    if (!run.require("polytope", is_polytopal(inst))) return stop(run.unmet());
    auto m = face_if_valid(c, missing);
    if (!run.require("M is a missing face", m && !m->empty() && [&] {
            auto all = missing_faces(c);
            return std::find(all.begin(), all.end(), *m) != all.end();
        }())) {
        return stop(run.unmet());
    }
    if (!run.require("|M| >= i+1", static_cast<int>(m->size()) >= i + 1)) return stop(run.unmet());
    auto f = face_if_valid(c, face);
    if (!run.require("F is a subset of M with |F| = i-1", f && static_cast<int>(f->size()) == i - 1 &&
                                                              std::includes(m->begin(), m->end(), f->begin(), f->end()))) {
        return stop(run.unmet());
    }
    if (!run.require("no missing face of dimension > d-2i+1", missing_at_most(c, d - 2 * i + 1))) {
        return stop(run.unmet());
    }

    const auto& p = inst.coords();
    const std::set<std::string> in_m(missing.begin(), missing.end());
    try {
        // Quotients by the prefixes of F; entry t is the link of the first t vertices.
        std::vector<QuotientEmbedding> chain;
        for (std::size_t t = 0; t <= f->size(); ++t) {
            chain.push_back(quotient_embedding(c, p, Face(f->begin(), f->begin() + static_cast<long>(t))));
        }
        const QuotientEmbedding& last = chain.back();
        Subspace base = affine(last.link, last.embedding, 1);
        run.dims()["quotient_affine_1"] = base.dim();

        // lambda'_v >= 1 on M \ F, lambda'_v <= 0 off M.
        linalg::DenseMatrix rows;
        RowVector rhs;
        for (std::size_t v = 0; v < base.basis->labels().size(); ++v) {
            auto col = base.basis->index_of(Monomial{static_cast<VertexId>(v)});
            RowVector coeff(base.dim());
            for (std::size_t t = 0; t < base.dim(); ++t) coeff[t] = base.rows[t][*col];
            if (in_m.count(base.basis->labels()[v])) {
                for (auto& x : coeff) x = -x;
                rows.push_back(std::move(coeff));
                rhs.push_back(-1);
            } else {
                rows.push_back(std::move(coeff));
                rhs.push_back(0);
            }
        }
        auto y = lp::feasible_point(rows, rhs, base.dim());
        run.expect("sign pattern feasible on the quotient", y.has_value());
        if (!y) return stop(run.verdict());
        StressPoly cur{base.basis, combine(base.rows, *y, base.basis->size())};

        // Lift through the cones over the iterated links, innermost first.
        SimplicialComplex support = last.link;
        for (std::size_t t = f->size(); t >= 1; --t) {
            const VertexFigureStep& step = last.steps[t - 1];
            SimplicialComplex coned = cone(support, step.apex);
            Embedding form = cone_form(chain[t - 1].embedding, step, coned);
            cur = cone_lift(cur, chain[t].embedding, coned, step.apex, form);
            support = std::move(coned);
        }

        Subspace top = affine(c, p, i);
        RowVector lambda;
        if (f->empty()) {
            lambda = reembed_vector(cur, top.basis);
        } else {
            BasisPtr lower = top.basis->divisors(static_cast<int>(f->size()));
            const RowVector goal = reembed_vector(cur, lower);
            std::vector<RowVector> images;
            for (std::size_t t = 0; t < top.dim(); ++t) images.push_back(derivative(top.vector(t), *f).coeffs);
            linalg::SparseMatrix system;
            for (std::size_t r = 0; r < lower->size(); ++r) {
                linalg::SparseRow row;
                for (std::size_t t = 0; t < images.size(); ++t) {
                    if (images[t][r].sign() != 0) row.entries.emplace_back(static_cast<std::uint32_t>(t), images[t][r]);
                }
                system.push_back(std::move(row));
            }
            auto x = linalg::solve(system, goal, top.dim());
            run.expect("lifted stress has a preimage under the derivative by x_F", x.has_value());
            if (!x) return stop(run.verdict());
            lambda = combine(top.rows, *x, top.basis->size());
        }
        StressPoly result{top.basis, lambda};
        run.expect("result is an affine stress", is_stress(result, c, p, StressKind::affine));

        json weights = json::array();
        bool signs_ok = true;
        for (VertexId v = 0; v < c.num_vertices(); ++v) {
            if (std::binary_search(f->begin(), f->end(), v)) continue;
            Monomial g = *f;
            g.insert(std::upper_bound(g.begin(), g.end(), v), v);
            if (!c.contains(g)) continue;
            const Rational w = lambda[*top.basis->index_of(g)];
            const bool positive_side = in_m.count(c.label(v)) > 0;
            signs_ok = signs_ok && (positive_side ? w.sign() > 0 : w.sign() <= 0);
            weights.push_back(json::array({c.labels_of(g), format_rational(w)}));
        }
        run.expect("weights positive on F+v for v in M\\F and nonpositive for v outside M", signs_ok);
        run.witness()["weights"] = std::move(weights);
        run.witness()["stress"] = io::poly_to_json(result, StressKind::affine, inst.name);
        out.stress = std::move(result);
    } catch (const StressLabError& e) {
        run.expect("construction completed", false);
        run.witness()["error"] = e.what();
    }
    return stop(run.verdict());
}

VerificationReport verify_kstacked(const Instance& inst, int k, int i) {
    Run run("kstacked", inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    run.dims()["k"] = k;
    run.dims()["i"] = i;
    if (!run.require("1 <= i <= k", 1 <= i && i <= k)) return run.unmet();
    if (!run.require("k <= d/2 - 1", 2 * k + 2 <= d)) return run.unmet();
    if (!embedded(run, inst)) return run.unmet();
    if (!run.require("Q homology sphere", is_homology_sphere(c, Field::Q))) return run.unmet();
    if (!run.require("no missing face of dimension >= d-i+1", missing_at_most(c, d - i))) return run.unmet();
    SimplicialComplex ball = murai_nevo_ball(c, k);
    const bool certified = ball.dim() == d && is_homology_ball(ball, Field::Q) && [&] {
        auto s = classify(ball);
        return s.boundary && *s.boundary == c;
    }();
    if (!run.require("k-stacked: the candidate ball is a homology d-ball bounded by the sphere", certified)) {
        return run.unmet();
    }
    const auto& p = inst.coords();
    const bool independent = std::all_of(ball.facets().begin(), ball.facets().end(), [&](const Face& facet) {
        linalg::DenseMatrix pts;
        for (const auto& l : ball.labels_of(facet)) pts.push_back(p.at(l));
        return affine_rank(pts) == static_cast<std::size_t>(d + 1);
    });
    if (!run.require("ball facets affinely independent", independent)) return run.unmet();

    Embedding lifted;
    lifted.dim = d + 1;
    for (const auto& l : c.labels()) {
        RowVector x = p.at(l);
        x.push_back(1);
        lifted.coords[l] = std::move(x);
    }
    run.dims()["ball_facets"] = ball.facets().size();
    run.dims()["g"] = g_vector(c, d);
    std::set<int> degrees{1, i};
    for (int j : degrees) {
        if (2 * j > d) continue;
        Subspace a = affine(c, p, j);
        run.dims()[key("affine", j)] = a.dim();
        run.expect("affine " + std::to_string(j) + "-stresses equal linear stresses of the ball",
                   equals(a, linear(ball, lifted, j)));
    }
    Subspace top = affine(c, p, i);
    run.expect("derivative span recovers the affine 1-stresses",
               equals(derivative_span(top, i - 1, DerivativeMode::all_monomials), affine(c, p, 1)));
    run.expect("g_{k+1} = 0", g_at(fhg(c, d), k + 1) == 0);
    run.expect("ball and sphere share the (d-k-1)-skeleton", skeleton(ball, d - k - 1) == skeleton(c, d - k - 1));
    return run.verdict();
}

VerificationReport verify_flip_bookkeeping(const SimplicialComplex& before, const SimplicialComplex& after,
                                           const FlipStep& step, const Embedding& p, int max_degree) {
    json summary;
    summary["a"] = step.a;
    summary["b"] = step.b;
    summary["j"] = step.j;
    summary["vertices_before"] = before.num_vertices();
    summary["vertices_after"] = after.num_vertices();
    Run run("flip-bookkeeping", summary);
    const int d = before.dim() + 1;
    const int j = step.j;
    if (!run.require("both complexes have dimension d-1", after.dim() + 1 == d)) return run.unmet();
    if (!run.require("j = |A| and |A| + |B| = d+1", j == static_cast<int>(step.a.size()) &&
                                                        static_cast<int>(step.a.size() + step.b.size()) == d + 1)) {
        return run.unmet();
    }
    LabelFace joint = step.a;
    joint.insert(joint.end(), step.b.begin(), step.b.end());
    std::sort(joint.begin(), joint.end());
    const SimplicialComplex exchanged = simplex_boundary_on(joint);
    auto covers = [&](const SimplicialComplex& x) {
        return std::all_of(x.labels().begin(), x.labels().end(), [&](const std::string& l) { return p.coords.count(l) > 0; });
    };
    if (!run.require("embedding covers both complexes in R^d",
                     p.dim == d && covers(before) && covers(after) && covers(exchanged))) {
        return run.unmet();
    }
    if (!run.require("generic certificate on both complexes and the flipped sphere",
                     certify(before, p).passes() && certify(after, p).passes() && certify(exchanged, p).passes())) {
        return run.unmet();
    }

    std::vector<LabelFace> facets = before.facet_labels();
    for (const auto& f : after.facet_labels()) facets.push_back(f);
    // The exchanged sphere may name vertices absent from both sides when the step is misreported.
    for (const auto& f : exchanged.facet_labels()) facets.push_back(f);
    const SimplicialComplex both = SimplicialComplex::from_facets(facets);
    json linear_dims = json::array();
    json affine_dims = json::array();
    for (int k = 1; k <= max_degree && k <= d; ++k) {
        BasisPtr ambient = monomial_basis(both, k);
        Subspace l0 = reembed(linear(before, p, k), ambient);
        Subspace l1 = reembed(linear(after, p, k), ambient);
        Subspace lx = reembed(linear(exchanged, p, k), ambient);
        const std::string at = " at degree " + std::to_string(k);
        int change = 0;
        if (j < d - j + 1 && j <= k && k <= d - j) {
            change = -1;
            run.expect("linear stresses lose a direct summand" + at,
                       equals(sum(l1, lx), l0) && l1.dim() + lx.dim() == l0.dim());
        } else if (j > d - j + 1 && d - j + 1 <= k && k <= j - 1) {
            change = 1;
            run.expect("linear stresses gain a direct summand" + at,
                       equals(sum(l0, lx), l1) && l0.dim() + lx.dim() == l1.dim());
        } else {
            run.expect("linear stresses unchanged" + at, equals(l0, l1));
        }
        linear_dims.push_back(json{{"k", k}, {"before", l0.dim()}, {"after", l1.dim()}, {"expected_change", change}});
        if (2 * k > d) continue;
        Subspace a0 = reembed(affine(before, p, k), ambient);
        Subspace a1 = reembed(affine(after, p, k), ambient);
        int affine_change = 0;
        if (k == j) {
            affine_change = -1;
            run.expect("affine stresses drop one dimension" + at, contains(a0, a1) && a0.dim() == a1.dim() + 1);
        } else if (k == d - j + 1) {
            affine_change = 1;
            run.expect("affine stresses gain one dimension" + at, contains(a1, a0) && a1.dim() == a0.dim() + 1);
        } else {
            run.expect("affine stresses unchanged" + at, equals(a0, a1));
        }
        affine_dims.push_back(json{{"k", k}, {"before", a0.dim()}, {"after", a1.dim()}, {"expected_change", affine_change}});
    }
    run.dims()["linear"] = std::move(linear_dims);
    run.dims()["affine"] = std::move(affine_dims);
    return run.verdict();
}

std::vector<VerificationReport> verify_trace_bookkeeping(const FlipTrace& trace, int max_degree, std::uint64_t seed) {
    std::vector<SimplicialComplex> states{trace.start};
    for (const auto& s : trace.steps) states.push_back(bistellar_flip(states.back(), s.a, s.b));
    std::set<std::string> labels;
    for (const auto& s : states) labels.insert(s.labels().begin(), s.labels().end());
    const std::vector<std::string> all(labels.begin(), labels.end());
    const int d = trace.start.dim() + 1;

    std::mt19937_64 rng(seed);
    Embedding p;
    int attempts = 0;
    for (; attempts < 16; ++attempts) {
        p = random_integer_embedding(all, d, rng, 1'000'000);
        bool ok = true;
        for (std::size_t t = 0; ok && t < states.size(); ++t) ok = certify(states[t], p).passes();
        for (std::size_t t = 0; ok && t < trace.steps.size(); ++t) {
            LabelFace joint = trace.steps[t].a;
            joint.insert(joint.end(), trace.steps[t].b.begin(), trace.steps[t].b.end());
            std::sort(joint.begin(), joint.end());
            ok = certify(simplex_boundary_on(joint), p).passes();
        }
        if (ok) break;
    }
    std::vector<VerificationReport> out;
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        auto r = verify_flip_bookkeeping(states[t], states[t + 1], trace.steps[t], p, max_degree);
        r.instance["step"] = t;
        r.instance["embedding_seed"] = seed;
        r.instance["resample_count"] = attempts;
        out.push_back(std::move(r));
    }
    return out;
}

VerificationReport verify_rigidity(const Instance& inst) {
    Run run("rigidity", inst);
    if (!run.require("embedding present", inst.embedding.has_value())) return run.unmet();
    const auto& p = inst.coords();
    const int d = p.dim;
    const SimplicialComplex graph = skeleton(inst.complex, 1);
    if (!run.require("embedding affinely spans R^d", affine_rank(p.for_complex(graph)) == static_cast<std::size_t>(d + 1))) {
        return run.unmet();
    }
    const long f0 = static_cast<long>(graph.num_vertices());
    const long f1 = graph.dim() >= 1 ? static_cast<long>(graph.faces_of_dim(1).size()) : 0;
    const long g2 = f1 - d * f0 + binomial_long(d + 1, 2);
    const auto dim = affine(graph, p, 2).dim();
    const bool rigid = static_cast<long>(dim) == g2;
    const bool in_scope = d >= 3 && inst.d() == d &&
                          (is_polytopal(inst) || (is_generic_proxy(inst) && closed_normal_pseudomanifold(inst.complex)));
    run.dims()["affine_2"] = dim;
    run.dims()["g_2"] = g2;
    run.dims()["rigid"] = rigid;
    run.dims()["theorem_scope"] = in_scope;
    run.expect("infinitesimally rigid", rigid);
    return in_scope ? run.verdict() : run.probe();
}

namespace {

struct ProbeSetup {
    int i = 2;
    int j = 1;
};

VerificationReport probe_span(Run& run, const Instance& inst, const ProbeSetup& ps) {
    const auto& c = inst.complex;
    const auto& p = inst.coords();
    Subspace top = affine(c, p, ps.i);
    Subspace target = affine(c, p, ps.j);
    Subspace spanned = derivative_span(top, ps.i - ps.j, DerivativeMode::all_monomials);
    run.dims()[key("affine", ps.i)] = top.dim();
    run.dims()[key("affine", ps.j)] = target.dim();
    run.dims()["derivative_span"] = spanned.dim();
    const bool ok = equals(spanned, target);
    run.expect("derivative span equals the lower stress space", ok);
    if (!ok) run.witness()["derivative_span"] = io::stress_to_json({StressKind::affine, ps.j, spanned, inst.name, inst.name});
    return run.probe();
}

}  // namespace

VerificationReport probe_conjecture(const std::string& id, const Instance& inst, const CheckParams& params) {
    Run run(id, inst);
    const int d = inst.d();
    const auto& c = inst.complex;
    ProbeSetup ps;
    ps.i = params.i.value_or(2);
    ps.j = params.j.value_or(ps.i - 1);
    run.dims()["i"] = ps.i;

    if (id == "conj-1.1" || id == "conj-1.2") {
        if (!run.require("d >= 4", d >= 4)) return run.unmet();
        if (!run.require("2 <= i <= d/2", 2 <= ps.i && 2 * ps.i <= d)) return run.unmet();
        if (!embedded(run, inst)) return run.unmet();
        if (!run.require("polytope", is_polytopal(inst))) return run.unmet();
        if (id == "conj-1.2" && !run.require("no missing face of dimension > d-i", missing_at_most(c, d - ps.i))) {
            return run.unmet();
        }
        const auto& p = inst.coords();
        Subspace spanned = derivative_span(affine(c, p, ps.i), ps.i - 1, DerivativeMode::all_monomials);
        run.dims()["derivative_span"] = spanned.dim();
        std::optional<Embedding> q;
        try {
            q = recover_affine_type(spanned);
        } catch (const StressLabError& e) {
            run.witness()["error"] = e.what();
        }
        if (q) run.witness()["recovered_embedding"] = io::embedding_to_json(*q);
        if (id == "conj-1.1") {
            // Certificate: the recovered points are in convex position with the given facets.
            bool hull = false;
            if (q && q->dim == d) {
                try {
                    hull = check_polytopal(c, *q).ok;
                } catch (const StressLabError&) {
                    hull = false;
                }
            }
            run.expect("recovered point set has the complex as its boundary complex", hull);
        } else {
            run.expect("derivative span equals the affine 1-stresses", equals(spanned, affine(c, p, 1)));
            run.expect("recovered embedding is the canonical form of the original", q && *q == canonical(p.restricted_to(c)));
        }
        return run.probe();
    }
    if (id == "conj-1.3" || id == "conj-3.7") {
        run.dims()["j"] = ps.j;
        if (!run.require("1 <= j < i <= d/2", 1 <= ps.j && ps.j < ps.i && 2 * ps.i <= d)) return run.unmet();
        if (!embedded(run, inst)) return run.unmet();
        if (id == "conj-1.3") {
            if (!run.require("polytope", is_polytopal(inst))) return run.unmet();
            if (!run.require("no missing face of dimension > d-i", missing_at_most(c, d - ps.i))) return run.unmet();
        } else {
            const bool scope = is_polytopal(inst) || (is_generic_proxy(inst) && is_homology_sphere(c, Field::GF2));
            if (!run.require("polytope, or GF2 homology sphere with generic embedding", scope)) return run.unmet();
            Subspace top = affine(c, inst.coords(), ps.i);
            run.dims()["face_mode_agrees"] =
                equals(derivative_span(top, ps.i - ps.j, DerivativeMode::all_monomials),
                       derivative_span(top, ps.i - ps.j, DerivativeMode::face_monomials));
        }
        return probe_span(run, inst, ps);
    }
    if (id == "conj-3.3") {
        if (!run.require("2 <= i <= d/2", 2 <= ps.i && 2 * ps.i <= d)) return run.unmet();
        if (!embedded(run, inst)) return run.unmet();
        const bool scope = is_polytopal(inst) || (is_generic_proxy(inst) && closed_normal_pseudomanifold(c));
        if (!run.require("polytope, or closed normal pseudomanifold with generic embedding", scope)) return run.unmet();
        if (!run.require("no missing face of dimension > d-i", missing_at_most(c, d - ps.i))) return run.unmet();
        Subspace s = affine(c, inst.coords(), ps.i);
        auto supported = support_faces(s);
        auto all = face_labels(c, c.faces_of_dim(ps.i - 1));
        run.dims()[key("affine", ps.i)] = s.dim();
        run.dims()["faces"] = all.size();
        run.dims()["supported_faces"] = supported.size();
        const bool ok = same_faces(supported, all);
        if (!ok) run.witness()["supported"] = supported;
        run.expect("every (i-1)-face participates in some affine i-stress", ok);
        return run.probe();
    }
    if (id == "conj-4.4") {
        if (!run.require("2 <= i <= (d-1)/2", 2 <= ps.i && 2 * ps.i <= d - 1)) return run.unmet();
        if (!embedded(run, inst)) return run.unmet();
        const bool scope = is_polytopal(inst) || (is_generic_proxy(inst) && is_homology_sphere(c, Field::GF2));
        if (!run.require("polytope, or GF2 homology sphere with generic embedding", scope)) return run.unmet();
        const auto& p = inst.coords();
        Subspace whole = affine(c, p, ps.i);
        Subspace parts = star_sum(c, p, c.faces_of_dim(0), ps.i, StressKind::affine, whole.basis);
        run.dims()[key("affine", ps.i)] = whole.dim();
        run.dims()["vertex_star_sum"] = parts.dim();
        const bool ok = equals(whole, parts);
        if (!ok) run.witness()["vertex_star_sum"] = io::stress_to_json({StressKind::affine, ps.i, parts, inst.name, inst.name});
        run.expect("sum over vertex stars", ok);
        return run.probe();
    }
    throw UnknownCheck("unknown conjecture id '" + id + "'");
}

namespace {

LabelFace default_missing(const SimplicialComplex& c, int i) {
    for (const auto& m : missing_faces(c)) {
        if (static_cast<int>(m.size()) >= i + 1) return c.labels_of(m);
    }
    return {};
}

VerificationReport trace_check(const Instance& inst, const CheckParams& params) {
    Run run("flip-bookkeeping", inst);
    const int max_degree = params.i.value_or(2);
    run.dims()["max_degree"] = max_degree;
    if (!run.require("instance carries a flip trace", inst.trace.has_value() && !inst.trace->steps.empty())) {
        return run.unmet();
    }
    auto steps = verify_trace_bookkeeping(*inst.trace, max_degree, params.seed.value_or(1));
    json per_step = json::array();
    std::vector<std::size_t> failed;
    bool all_met = true;
    for (std::size_t t = 0; t < steps.size(); ++t) {
        const auto& r = steps[t];
        per_step.push_back(json{{"step", t}, {"conclusion", conclusion_name(r.conclusion)}, {"dims", r.dims}});
        if (r.conclusion == Conclusion::hypothesis_unmet) {
            all_met = false;
            run.witness()["unmet_step"] = t;
            run.witness()["unmet_hypothesis"] = *r.unmet();
            break;
        }
        if (r.conclusion == Conclusion::fail) {
            failed.push_back(t);
            run.witness()["step_" + std::to_string(t)] = r.witness;
        }
    }
    run.dims()["steps"] = steps.size();
    run.dims()["per_step"] = std::move(per_step);
    if (!run.require("every step certified under the shared embedding", all_met)) return run.unmet();
    if (!failed.empty()) run.witness()["failed_steps"] = failed;
    run.expect("every step matches the flip trichotomy", failed.empty());
    return run.verdict();
}

}  // namespace

VerificationReport run_check(const std::string& id, const Instance& inst, const CheckParams& params) {
    const auto& probes = probe_ids();
    if (std::find(probes.begin(), probes.end(), id) != probes.end()) return probe_conjecture(id, inst, params);
    const int i = params.i.value_or(2);
    const auto& c = inst.complex;
    const LabelFace tau = params.tau.value_or(LabelFace{c.labels().front()});
    if (id == "lefschetz") return verify_lefschetz(inst, i);
    if (id == "pou-affine1") return verify_pou_affine1(inst);
    if (id == "pou-linear") return verify_pou_linear(inst, i, params.k.value_or(1), params.j);
    if (id == "pou-affine-higher") return verify_pou_affine_higher(inst, i);
    if (id == "antistar") return verify_antistar(inst, tau, i);
    if (id == "star-surjection") return verify_star_surjection(inst, i, tau);
    if (id == "reconstruction") return verify_reconstruction(inst, i, params.j.value_or(i - 1));
    if (id == "support") return verify_support(inst, i);
    if (id == "flag-g-bound") return verify_flag_g_bound(inst);
    if (id == "sign-stress") {
        const LabelFace m = params.missing.value_or(default_missing(c, i));
        LabelFace f;
        if (params.face) {
            f = *params.face;
        } else {
            for (std::size_t t = 0; t + 1 < static_cast<std::size_t>(std::max(i, 1)) && t < m.size(); ++t) f.push_back(m[t]);
        }
        return positive_stress_on_missing_face(inst, m, f, i).report;
    }
    if (id == "kstacked") return verify_kstacked(inst, params.k.value_or(i), i);
    if (id == "flip-bookkeeping") return trace_check(inst, params);
    if (id == "rigidity") return verify_rigidity(inst);
    throw UnknownCheck("unknown check id '" + id + "'");
}

const std::vector<std::string>& check_ids() {
    static const std::vector<std::string> ids{"lefschetz", "pou-affine1", "pou-linear", "pou-affine-higher",
                                              "antistar", "star-surjection", "reconstruction", "support",
                                              "flag-g-bound", "sign-stress", "kstacked", "flip-bookkeeping",
                                              "rigidity"};
    return ids;
}

const std::vector<std::string>& probe_ids() {
    static const std::vector<std::string> ids{"conj-1.1", "conj-1.2", "conj-1.3", "conj-3.3", "conj-3.7", "conj-4.4"};
    return ids;
}

}  // namespace stresslab
