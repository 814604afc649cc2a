#include "stresslab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace stresslab::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

void expect_format(const json& j, const char* fmt) {
    const json& f = field(j, "format");
    if (!f.is_string() || f.get<std::string>() != fmt) {
        throw FormatError(std::string("expected format ") + fmt);
    }
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
    }
}

json opt_u64(const std::optional<std::uint64_t>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<std::uint64_t> read_opt_u64(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get_as<std::uint64_t>(j, key);
}

Rational rational_from(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    throw FormatError("rational must be a string or an integer");
}

const char* embedding_kind_name(EmbeddingKind k) {
    switch (k) {
        case EmbeddingKind::natural: return "natural";
        case EmbeddingKind::generic: return "generic";
        case EmbeddingKind::none: break;
    }
    return "none";
}

EmbeddingKind parse_embedding_kind(const std::string& s) {
    if (s == "natural") return EmbeddingKind::natural;
    if (s == "generic") return EmbeddingKind::generic;
    if (s == "none") return EmbeddingKind::none;
    throw FormatError("unknown embedding kind '" + s + "'");
}

}  // namespace

json complex_to_json(const SimplicialComplex& c, const std::string& name) {
    json j;
    j["format"] = "scx/1";
    j["name"] = name;
    j["vertices"] = c.labels();
    j["facets"] = c.facet_labels();
    return j;
}

SimplicialComplex complex_from_json(const json& j) {
    expect_format(j, "scx/1");
    auto vertices = get_as<std::vector<std::string>>(j, "vertices");
    auto facets = get_as<std::vector<LabelFace>>(j, "facets");
    return SimplicialComplex::from_facets(facets, vertices);
}

json embedding_to_json(const Embedding& p) {
    json j;
    j["format"] = "emb/1";
    j["dim"] = p.dim;
    json coords = json::object();
    for (const auto& [label, x] : p.coords) {
        json row = json::array();
        for (const auto& q : x) row.push_back(format_rational(q));
        coords[label] = std::move(row);
    }
    j["coords"] = std::move(coords);
    return j;
}

Embedding embedding_from_json(const json& j) {
    expect_format(j, "emb/1");
    Embedding p;
    p.dim = get_as<int>(j, "dim");
    const json& coords = field(j, "coords");
    if (!coords.is_object()) throw FormatError("coords must be an object");
    for (const auto& [label, row] : coords.items()) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(p.dim)) {
            throw FormatError("vertex '" + label + "' needs " + std::to_string(p.dim) + " coordinates");
        }
        RowVector x;
        for (const auto& v : row) x.push_back(rational_from(v));
        p.coords[label] = std::move(x);
    }
    return p;
}

json trace_to_json(const FlipTrace& t) {
    json j;
    j["start"] = complex_to_json(t.start, "start");
    j["seed"] = t.seed;
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(json{{"a", s.a}, {"b", s.b}, {"j", s.j}});
    j["steps"] = std::move(steps);
    return j;
}

FlipTrace trace_from_json(const json& j) {
    FlipTrace t;
    t.start = complex_from_json(field(j, "start"));
    t.seed = get_as<std::uint64_t>(j, "seed");
    for (const auto& s : field(j, "steps")) {
        t.steps.push_back(FlipStep{get_as<LabelFace>(s, "a"), get_as<LabelFace>(s, "b"), get_as<int>(s, "j")});
    }
    return t;
}

json instance_to_json(const Instance& inst) {
    json j;
    j["format"] = "inst/1";
    j["name"] = inst.name;
    j["complex"] = complex_to_json(inst.complex, inst.name);
    j["embedding"] = inst.embedding ? embedding_to_json(*inst.embedding) : json(nullptr);
    j["embedding_kind"] = embedding_kind_name(inst.embedding_kind);
    if (inst.certificate) {
        const auto& c = *inst.certificate;
        j["certificate"] = json{{"facet_independent", c.facet_independent},
                                {"adjacent_pairs_affinely_independent", c.adjacent_pairs_affinely_independent},
                                {"seed", c.seed},
                                {"resample_count", c.resample_count}};
    } else {
        j["certificate"] = nullptr;
    }
    j["embedding_seed"] = opt_u64(inst.embedding_seed);
    j["embedding_bound"] = inst.embedding_bound;
    j["provenance"] = json{{"constructor", inst.provenance.constructor},
                           {"params", inst.provenance.params},
                           {"seed", opt_u64(inst.provenance.seed)}};
    j["trace"] = inst.trace ? trace_to_json(*inst.trace) : json(nullptr);
    return j;
}

Instance instance_from_json(const json& j) {
    expect_format(j, "inst/1");
    Instance inst;
    inst.name = get_as<std::string>(j, "name");
    inst.complex = complex_from_json(field(j, "complex"));
    if (!field(j, "embedding").is_null()) {
        inst.embedding = embedding_from_json(j.at("embedding"));
        for (const auto& l : inst.complex.labels()) {
            if (!inst.embedding->coords.count(l)) throw FormatError("embedding misses vertex '" + l + "'");
        }
    }
    inst.embedding_kind = parse_embedding_kind(get_as<std::string>(j, "embedding_kind"));
    if (j.contains("certificate") && !j.at("certificate").is_null()) {
        const json& c = j.at("certificate");
        GenericityCertificate cert;
        cert.facet_independent = get_as<bool>(c, "facet_independent");
        cert.adjacent_pairs_affinely_independent = get_as<bool>(c, "adjacent_pairs_affinely_independent");
        cert.seed = get_as<std::uint64_t>(c, "seed");
        cert.resample_count = get_as<int>(c, "resample_count");
        inst.certificate = cert;
    }
    inst.embedding_seed = read_opt_u64(j, "embedding_seed");
    inst.embedding_bound = j.contains("embedding_bound") ? get_as<std::uint64_t>(j, "embedding_bound") : 0;
    const json& prov = field(j, "provenance");
    inst.provenance.constructor = get_as<std::string>(prov, "constructor");
    inst.provenance.params = field(prov, "params");
    inst.provenance.seed = read_opt_u64(prov, "seed");
    if (j.contains("trace") && !j.at("trace").is_null()) inst.trace = trace_from_json(j.at("trace"));
    return inst;
}

json stress_to_json(const StressSpace& s) {
    json j;
    j["format"] = "stress/1";
    j["kind"] = kind_name(s.kind);
    j["degree"] = s.degree;
    j["complex"] = s.complex_name;
    j["embedding"] = s.embedding_name;
    const MonomialBasis& b = *s.space.basis;
    json monomials = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        json m = json::array();
        for (const auto& [label, e] : b.labelled(i)) m.push_back(json::array({label, e}));
        monomials.push_back(std::move(m));
    }
    j["monomials"] = std::move(monomials);
    json basis = json::array();
    for (const auto& row : s.space.rows) {
        json r = json::array();
        for (const auto& q : row) r.push_back(format_rational(q));
        basis.push_back(std::move(r));
    }
    j["basis"] = std::move(basis);
    return j;
}

StressSpace stress_from_json(const json& j) {
    expect_format(j, "stress/1");
    StressSpace s;
    s.kind = parse_kind(get_as<std::string>(j, "kind"));
    s.degree = get_as<int>(j, "degree");
    s.complex_name = get_as<std::string>(j, "complex");
    s.embedding_name = get_as<std::string>(j, "embedding");
    std::vector<std::vector<std::pair<std::string, int>>> raw;
    std::set<std::string> labels;
    for (const auto& m : field(j, "monomials")) {
        std::vector<std::pair<std::string, int>> mon;
        int deg = 0;
        for (const auto& term : m) {
            if (!term.is_array() || term.size() != 2) throw FormatError("monomial terms are [vertex, exponent]");
            auto label = term.at(0).get<std::string>();
            int e = term.at(1).get<int>();
            if (e < 1) throw FormatError("exponents must be positive");
            labels.insert(label);
            mon.emplace_back(label, e);
            deg += e;
        }
        if (deg != s.degree) throw FormatError("monomial degree differs from the declared degree");
        raw.push_back(std::move(mon));
    }
    std::vector<std::string> label_list(labels.begin(), labels.end());
    std::vector<Monomial> monomials;
    for (const auto& mon : raw) {
        Monomial m;
        for (const auto& [label, e] : mon) {
            auto v = static_cast<VertexId>(std::lower_bound(label_list.begin(), label_list.end(), label) - label_list.begin());
            for (int t = 0; t < e; ++t) m.push_back(v);
        }
        std::sort(m.begin(), m.end());
        monomials.push_back(std::move(m));
    }
    std::vector<Monomial> listed = monomials;
    BasisPtr basis = MonomialBasis::from_list(label_list, s.degree, monomials);
    if (basis->size() != listed.size() || basis->monomials() != listed) {
        throw FormatError("monomials must be distinct and in canonical order");
    }
    linalg::DenseMatrix rows;
    for (const auto& r : field(j, "basis")) {
        if (!r.is_array() || r.size() != basis->size()) throw FormatError("basis row length differs from the monomial count");
        RowVector row;
        for (const auto& q : r) row.push_back(rational_from(q));
        rows.push_back(std::move(row));
    }
    s.space = Subspace{basis, rows};
    if (linalg::rref(rows, basis->size()) != rows) throw FormatError("basis is not in reduced row echelon form");
    return s;
}

json poly_to_json(const StressPoly& p, StressKind kind, const std::string& complex_name) {
    StressSpace s;
    s.kind = kind;
    s.degree = p.degree();
    s.space = span(p.basis, {p.coeffs});
    s.complex_name = complex_name;
    return stress_to_json(s);
}

json report_to_json(const VerificationReport& r, bool with_timing) {
    json j;
    j["format"] = "vr/1";
    j["check_id"] = r.check_id;
    j["instance"] = r.instance;
    json hyps = json::array();
    for (const auto& h : r.hypotheses) hyps.push_back(json{{"name", h.name}, {"holds", h.holds}});
    j["hypotheses_checked"] = std::move(hyps);
    j["conclusion"] = conclusion_name(r.conclusion);
    j["dims"] = r.dims;
    j["witness"] = r.witness;
    j["elapsed_ms"] = (with_timing && r.elapsed_ms) ? json(*r.elapsed_ms) : json(nullptr);
    return j;
}

VerificationReport report_from_json(const json& j) {
    expect_format(j, "vr/1");
    VerificationReport r;
    r.check_id = get_as<std::string>(j, "check_id");
    r.instance = field(j, "instance");
    for (const auto& h : field(j, "hypotheses_checked")) {
        r.hypotheses.push_back({get_as<std::string>(h, "name"), get_as<bool>(h, "holds")});
    }
    try {
        r.conclusion = parse_conclusion(get_as<std::string>(j, "conclusion"));
    } catch (const StressLabError& e) {
        throw FormatError(e.what());
    }
    r.dims = field(j, "dims");
    r.witness = field(j, "witness");
    const json& t = field(j, "elapsed_ms");
    if (!t.is_null()) r.elapsed_ms = t.get<double>();
    return r;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + path.string() + "'");
        out << text;
        if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

void write_json_atomic(const std::filesystem::path& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

Instance load_instance(const std::string& spec) {
    std::error_code ec;
    // Expressions never contain a slash or a .json suffix, so such specs are paths.
    const bool path_like = spec.find('/') != std::string::npos ||
                           (spec.size() > 5 && spec.compare(spec.size() - 5, 5, ".json") == 0);
    if (!path_like && !std::filesystem::is_regular_file(spec, ec)) return instance_from_expression(spec);
    json j = read_json(spec);
    if (!j.is_object() || !j.contains("format")) throw FormatError("'" + spec + "' has no format field");
    const std::string fmt = j.at("format").get<std::string>();
    if (fmt == "inst/1") return instance_from_json(j);
    if (fmt == "scx/1") {
        Instance inst;
        inst.complex = complex_from_json(j);
        inst.name = j.contains("name") ? j.at("name").get<std::string>() : spec;
        inst.provenance.constructor = "file";
        inst.provenance.params = json{{"path", spec}};
        return inst;
    }
    throw FormatError("'" + spec + "' is neither inst/1 nor scx/1");
}

}  // namespace stresslab::io
