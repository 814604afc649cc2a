// stresslab: generate instances, compute stress spaces, run checks and probes.
//
// Exit codes: 0 pass / probe-holds, 1 fail / probe-fails, 2 hypothesis-unmet
// or bad input, 3 I/O failure.

#include "stresslab/homology.hpp"
#include "stresslab/io.hpp"
#include "stresslab/verify.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace stresslab;
using io::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

int exit_code(Conclusion c) {
    switch (c) {
        case Conclusion::pass:
        case Conclusion::probe_holds: return 0;
        case Conclusion::fail:
        case Conclusion::probe_fails: return kExitFail;
        case Conclusion::hypothesis_unmet: return kExitInput;
    }
    return kExitInput;
}

LabelFace split_face(const std::string& s) {
    LabelFace out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

void emit(const json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        io::write_json_atomic(out, j);
    }
}

std::string summary_line(const VerificationReport& r) {
    std::string line = r.check_id + " " + r.instance.value("name", std::string("?")) + ": " + conclusion_name(r.conclusion);
    if (auto h = r.unmet(); h && r.conclusion == Conclusion::hypothesis_unmet) line += " (unmet: " + *h + ")";
    if (r.witness.is_object() && r.witness.contains("failed")) {
        line += " (failed:";
        for (const auto& f : r.witness["failed"]) line += " [" + f.get<std::string>() + "]";
        line += ")";
    }
    return line;
}

CheckParams params_from_json(const json& j) {
    CheckParams p;
    if (j.contains("i")) p.i = j.at("i").get<int>();
    if (j.contains("j")) p.j = j.at("j").get<int>();
    if (j.contains("k")) p.k = j.at("k").get<int>();
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    auto face = [&](const char* key) -> std::optional<LabelFace> {
        if (!j.contains(key)) return std::nullopt;
        const auto& v = j.at(key);
        return v.is_string() ? split_face(v.get<std::string>()) : v.get<LabelFace>();
    };
    p.tau = face("tau");
    p.missing = face("M");
    p.face = face("F");
    return p;
}

struct CheckFlags {
    std::optional<int> i, j, k;
    std::optional<std::string> tau, missing, face;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool timings = false;

    CheckParams params() const {
        CheckParams p{i, j, k, std::nullopt, std::nullopt, std::nullopt, seed};
        if (tau) p.tau = split_face(*tau);
        if (missing) p.missing = split_face(*missing);
        if (face) p.face = split_face(*face);
        return p;
    }
};

void add_check_flags(CLI::App* cmd, CheckFlags& f) {
    cmd->add_option("--i", f.i, "stress degree");
    cmd->add_option("--j", f.j, "target degree");
    cmd->add_option("--k", f.k, "face size or stackedness");
    cmd->add_option("--tau", f.tau, "face, comma-separated labels");
    cmd->add_option("--M", f.missing, "missing face, comma-separated labels");
    cmd->add_option("--F", f.face, "face inside M, comma-separated labels");
    cmd->add_option("--seed", f.seed, "embedding seed");
    cmd->add_option("--out", f.out, "vr/1 report path");
    cmd->add_flag("--timings", f.timings, "record elapsed_ms");
}

int run_verify(const std::string& id, const std::string& instance, const CheckFlags& f, bool probe) {
    const auto& probes = probe_ids();
    const bool is_probe_id = std::find(probes.begin(), probes.end(), id) != probes.end();
    if (probe != is_probe_id) {
        throw UnknownCheck("'" + id + "' is not a " + std::string(probe ? "conjecture" : "check") + " id");
    }
    Instance inst = io::load_instance(instance);
    VerificationReport r = run_check(id, inst, f.params());
    if (!f.out.empty()) io::write_json_atomic(f.out, io::report_to_json(r, f.timings));
    std::cout << summary_line(r) << "\n";
    return exit_code(r.conclusion);
}

struct GenFlags {
    std::string constructor;
    std::optional<int> dim, k, n, steps;
    std::optional<std::uint64_t> seed;
    std::vector<int> sizes;
    std::vector<std::string> parts;
    std::optional<std::string> expr;
    bool keep_flag = false;
    std::optional<int> forbid_missing_dim_from;
    bool generic = false;
    std::optional<std::uint64_t> embedding_seed;
    std::uint64_t bound = 1'000'000;
    std::string out;
};

int run_gen(const GenFlags& g) {
    Instance inst;
    if (g.expr) {
        inst = instance_from_expression(*g.expr);
    } else {
        if (g.constructor.empty()) throw StressLabError("gen needs a constructor or --expr");
        json params = json::object();
        if (g.dim) params["d"] = *g.dim;
        if (g.k) params["k"] = *g.k;
        if (g.n) params["n"] = *g.n;
        if (g.steps) params["steps"] = *g.steps;
        if (g.seed) params["seed"] = *g.seed;
        if (!g.sizes.empty()) params["sizes"] = g.sizes;
        if (!g.parts.empty()) params["parts"] = g.parts;
        if (g.keep_flag) params["keep_flag"] = true;
        if (g.forbid_missing_dim_from) params["forbid_missing_dim_from"] = *g.forbid_missing_dim_from;
        inst = make_instance(g.constructor, params);
    }
    if (g.generic) inst = with_generic_embedding(std::move(inst), g.embedding_seed.value_or(g.seed.value_or(1)), g.bound);
    emit(io::instance_to_json(inst), g.out);
    std::cerr << "generated " << inst.name << " via " << inst.provenance.constructor << " " << inst.provenance.params.dump()
              << (inst.provenance.seed ? " seed " + std::to_string(*inst.provenance.seed) : std::string())
              << (inst.embedding_seed ? " embedding-seed " + std::to_string(*inst.embedding_seed) : std::string())
              << "\n";
    return 0;
}

std::string join_numbers(const std::vector<long>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

int run_inspect(const std::string& spec) {
    Instance inst = io::load_instance(spec);
    const auto& c = inst.complex;
    const int d = inst.d();
    std::cout << "name      " << inst.name << "\n";
    std::cout << "vertices  " << c.num_vertices() << "\n";
    std::cout << "facets    " << c.facets().size() << "\n";
    std::cout << "d         " << d << "\n";
    if (c.is_pure() && d >= 1) {
        const FHGVectors v = fhg(c, d);
        std::cout << "f         " << join_numbers(v.f) << "\n";
        std::cout << "h         " << join_numbers(v.h) << "\n";
        std::cout << "g         " << join_numbers(v.g) << "\n";
    }
    const auto missing = missing_faces(c);
    const auto top = max_missing_dim(c);
    std::cout << "missing   " << missing.size() << (top ? " (max dim " + std::to_string(*top) + ")" : std::string()) << "\n";
    std::cout << "flag      " << (is_flag(c) ? "yes" : "no") << "\n";
    const StructureReport s = classify(c);
    const char* pm = s.pseudomanifold == Pseudomanifold::without_boundary ? "closed"
                     : s.pseudomanifold == Pseudomanifold::with_boundary  ? "with boundary"
                                                                          : "no";
    std::cout << "pseudomanifold " << pm << (s.normal ? ", normal" : "") << "\n";
    for (Field f : {Field::Q, Field::GF2}) {
        const auto ranks = homology_ranks(c, f);
        std::cout << (f == Field::Q ? "H(Q)      " : "H(GF2)    ") << join_numbers({ranks.begin(), ranks.end()}) << "\n";
    }
    std::cout << "sphere    " << (is_homology_sphere(c, Field::GF2) ? "GF2 homology sphere" : "no") << "\n";
    std::cout << "embedding " << (inst.embedding ? (inst.embedding_kind == EmbeddingKind::generic ? "generic" : "natural") : "none")
              << (inst.embedding && is_polytopal(inst) ? ", polytopal" : "") << "\n";
    return 0;
}

int run_stress(const std::string& spec, int degree, const std::string& kind, const std::string& out) {
    Instance inst = io::load_instance(spec);
    if (!inst.embedding) throw StressLabError("instance '" + inst.name + "' has no embedding");
    StressSpace s = stress_space(inst.complex, *inst.embedding, degree, parse_kind(kind));
    s.complex_name = inst.name;
    s.embedding_name = inst.name;
    if (!out.empty()) io::write_json_atomic(out, io::stress_to_json(s));
    std::cout << "dim " << s.dim() << "\n";
    return 0;
}

int run_reconstruct(const std::string& path, std::optional<int> j, bool affine_type, const std::string& out) {
    StressSpace s = io::stress_from_json(io::read_json(path));
    if (s.kind != StressKind::affine) throw StressLabError("reconstruct needs an affine stress space");
    const int target = j.value_or(1);
    if (target < 0 || target >= s.degree) {
        throw StressLabError("target degree " + std::to_string(target) + " must lie below the input degree " +
                             std::to_string(s.degree));
    }
    if (affine_type && target != 1) throw StressLabError("--affine-type needs --j 1");
    if (s.dim() == 0) std::cerr << "warning: input stress space is zero; the derivative span is zero\n";
    Subspace spanned = derivative_span(s.space, s.degree - target, DerivativeMode::all_monomials);
    if (affine_type) {
        Embedding q = recover_affine_type(spanned);
        emit(io::embedding_to_json(q), out);
        std::cerr << "recovered affine type in dimension " << q.dim << "\n";
        return 0;
    }
    StressSpace result{StressKind::affine, target, spanned, s.complex_name, s.embedding_name};
    if (!out.empty()) io::write_json_atomic(out, io::stress_to_json(result));
    std::cout << "dim " << result.dim() << "\n";
    return 0;
}

struct Job {
    std::string instance_key;
    std::function<Instance()> make;
    std::string check;
    json params;
};

// Corpus spec: {"entries": [{"instance": expr} or {"constructor", "params",
// "seeds", "generic"}, "checks": [{"id", "params"}]}]}.
std::vector<Job> corpus_jobs(const json& spec) {
    std::vector<Job> jobs;
    if (!spec.is_object()) throw io::FormatError("corpus spec must be an object");
    if (!spec.contains("entries")) return jobs;
    for (const auto& e : spec.at("entries")) {
        std::vector<std::pair<std::string, std::function<Instance()>>> instances;
        if (e.contains("instance")) {
            const std::string expr = e.at("instance").get<std::string>();
            instances.emplace_back(expr, [expr] { return io::load_instance(expr); });
        } else {
            const std::string ctor = e.at("constructor").get<std::string>();
            const json params = e.value("params", json::object());
            const bool generic = e.value("generic", false);
            std::vector<std::optional<std::uint64_t>> seeds;
            if (e.contains("seeds")) {
                for (const auto& s : e.at("seeds")) seeds.emplace_back(s.get<std::uint64_t>());
            } else {
                seeds.emplace_back(std::nullopt);
            }
            for (auto seed : seeds) {
                json p = params;
                if (seed && ctor == "random-pl-sphere") p["seed"] = *seed;
                const std::string name = ctor + p.dump() + (generic ? "@generic" : "");
                instances.emplace_back(name, [ctor, p, generic, seed] {
                    Instance inst = make_instance(ctor, p);
                    if (generic) inst = with_generic_embedding(std::move(inst), seed.value_or(1));
                    return inst;
                });
            }
        }
        for (const auto& [key, make] : instances) {
            for (const auto& c : e.at("checks")) {
                jobs.push_back({key, make, c.at("id").get<std::string>(), c.value("params", json::object())});
            }
        }
    }
    return jobs;
}

struct JobResult {
    std::string check, instance, conclusion, file, error;
    bool probe = false;
};

std::string table(const std::vector<JobResult>& results) {
    std::size_t wc = 5, wi = 8;
    for (const auto& r : results) {
        wc = std::max(wc, r.check.size());
        wi = std::max(wi, r.instance.size());
    }
    std::ostringstream t;
    t << std::left << std::setw(static_cast<int>(wc + 2)) << "check" << std::setw(static_cast<int>(wi + 2)) << "instance"
      << "conclusion\n";
    std::map<std::string, int> counts;
    for (const auto& r : results) {
        t << std::setw(static_cast<int>(wc + 2)) << r.check << std::setw(static_cast<int>(wi + 2)) << r.instance << r.conclusion
          << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
        ++counts[r.conclusion];
    }
    t << "\n";
    for (const auto& [k, v] : counts) t << k << ": " << v << "\n";
    return t.str();
}

int run_corpus(const std::string& spec_path, const std::string& out_dir) {
    const json spec = io::read_json(spec_path);
    std::vector<Job> jobs = corpus_jobs(spec);
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io::IoError("cannot create '" + out_dir + "': " + ec.message());

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STRESSLAB_WORKERS")) workers = std::max(1, std::atoi(env));
    workers = std::min<unsigned>(workers, std::max<std::size_t>(1, jobs.size()));

    std::vector<JobResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex io_error_mutex;
    std::optional<std::string> io_error;
    auto work = [&] {
        for (std::size_t t; (t = next++) < jobs.size();) {
            const Job& job = jobs[t];
            JobResult& res = results[t];
            res.check = job.check;
            res.instance = job.instance_key;
            try {
                Instance inst = job.make();
                VerificationReport r = run_check(job.check, inst, params_from_json(job.params));
                const json payload = io::report_to_json(r, false);
                const std::string name = job.check + "-" + sha256_hex(payload.dump()).substr(0, 16) + ".json";
                io::write_json_atomic(dir / name, payload);
                res.conclusion = conclusion_name(r.conclusion);
                res.probe = r.is_probe();
                res.file = name;
            } catch (const io::IoError& e) {
                std::lock_guard lock(io_error_mutex);
                io_error = e.what();
                res.conclusion = "error";
                res.error = e.what();
            } catch (const std::exception& e) {
                res.conclusion = "error";
                res.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    json summary = json::object();
    summary["jobs"] = json::array();
    std::map<std::string, int> counts;
    bool proven_failure = false;
    for (const auto& r : results) {
        summary["jobs"].push_back(
            json{{"check", r.check}, {"instance", r.instance}, {"conclusion", r.conclusion}, {"report", r.file}, {"error", r.error}});
        ++counts[r.conclusion];
        proven_failure = proven_failure || (r.conclusion == "fail" && !r.probe);
    }
    summary["counts"] = counts;
    io::write_json_atomic(dir / "summary.json", summary);
    const std::string text = table(results);
    io::write_text_atomic(dir / "summary.txt", text);
    std::cout << text;
    if (io_error) throw io::IoError(*io_error);
    return proven_failure ? kExitFail : 0;
}

int run_report(const std::vector<std::string>& files) {
    std::vector<JobResult> rows;
    int worst = 0;
    for (const auto& f : files) {
        VerificationReport r = io::report_from_json(io::read_json(f));
        rows.push_back({r.check_id, r.instance.value("name", std::string("?")), conclusion_name(r.conclusion), f, {}, r.is_probe()});
        if (r.conclusion == Conclusion::fail) worst = kExitFail;
        std::cerr << summary_line(r) << "\n";
    }
    std::cout << table(rows);
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stress spaces of simplicial spheres"};
    app.require_subcommand(1);

    GenFlags gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance bundle (inst/1)");
    gen_cmd->add_option("constructor", gen.constructor,
                        "simplex-boundary, cross-polytope, cyclic-polytope, stacked-sphere, stacked-join, polygon-join,"
                        " free-join, random-pl-sphere");
    gen_cmd->add_option("--dim,--d", gen.dim, "dimension d");
    gen_cmd->add_option("--k", gen.k, "stackedness");
    gen_cmd->add_option("--n", gen.n, "vertex count");
    gen_cmd->add_option("--steps", gen.steps, "flip count");
    gen_cmd->add_option("--seed", gen.seed, "walk seed");
    gen_cmd->add_option("--sizes", gen.sizes, "polygon sizes")->delimiter(',');
    gen_cmd->add_option("--parts", gen.parts, "free-join part expressions");
    gen_cmd->add_option("--expr", gen.expr, "instance expression, e.g. Oct_4@generic:3");
    gen_cmd->add_flag("--keep-flag", gen.keep_flag, "only flips that keep the complex flag");
    gen_cmd->add_option("--forbid-missing-dim-from", gen.forbid_missing_dim_from, "reject missing faces of this dim or more");
    gen_cmd->add_flag("--generic", gen.generic, "attach a certified generic embedding");
    gen_cmd->add_option("--embedding-seed", gen.embedding_seed, "seed of the generic embedding (default: --seed)");
    gen_cmd->add_option("--bound", gen.bound, "coordinate bound of the generic embedding");
    gen_cmd->add_option("--out", gen.out, "output path (default: stdout)");

    std::string inspect_spec;
    auto* inspect_cmd = app.add_subcommand("inspect", "Print f/h/g-vectors, missing faces, structure and homology");
    inspect_cmd->add_option("instance", inspect_spec)->required();

    std::string stress_spec, stress_kind = "affine", stress_out;
    int stress_degree = 1;
    auto* stress_cmd = app.add_subcommand("stress", "Compute a stress space (stress/1)");
    stress_cmd->add_option("instance", stress_spec)->required();
    stress_cmd->add_option("--degree", stress_degree)->required();
    stress_cmd->add_option("--kind", stress_kind)->check(CLI::IsMember({"affine", "linear"}));
    stress_cmd->add_option("--out", stress_out);

    std::string check_id, check_instance;
    CheckFlags check_flags;
    auto* verify_cmd = app.add_subcommand("verify", "Run a theorem check");
    verify_cmd->add_option("check", check_id)->required();
    verify_cmd->add_option("instance", check_instance)->required();
    add_check_flags(verify_cmd, check_flags);
    auto* probe_cmd = app.add_subcommand("probe", "Run a conjecture probe");
    probe_cmd->add_option("conjecture", check_id)->required();
    probe_cmd->add_option("instance", check_instance)->required();
    add_check_flags(probe_cmd, check_flags);

    std::string recon_path, recon_out;
    std::optional<int> recon_j;
    bool recon_affine_type = false;
    auto* recon_cmd = app.add_subcommand("reconstruct", "Derivative-span reconstruction from an affine stress file");
    recon_cmd->add_option("stress", recon_path)->required();
    recon_cmd->add_option("--j", recon_j, "target degree (default 1)");
    recon_cmd->add_flag("--affine-type", recon_affine_type, "emit the canonical embedding (needs --j 1)");
    recon_cmd->add_option("--out", recon_out);

    std::string corpus_spec, corpus_out = "corpus-out";
    auto* corpus_cmd = app.add_subcommand("corpus", "Run a batch of checks");
    corpus_cmd->add_option("spec", corpus_spec)->required();
    corpus_cmd->add_option("--out", corpus_out, "report directory");

    std::vector<std::string> report_files;
    auto* report_cmd = app.add_subcommand("report", "Summarize vr/1 files");
    report_cmd->add_option("files", report_files)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*inspect_cmd) return run_inspect(inspect_spec);
        if (*stress_cmd) return run_stress(stress_spec, stress_degree, stress_kind, stress_out);
        if (*verify_cmd) return run_verify(check_id, check_instance, check_flags, false);
        if (*probe_cmd) return run_verify(check_id, check_instance, check_flags, true);
        if (*recon_cmd) return run_reconstruct(recon_path, recon_j, recon_affine_type, recon_out);
        if (*corpus_cmd) return run_corpus(corpus_spec, corpus_out);
        if (*report_cmd) return run_report(report_files);
    } catch (const io::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
