#include "stresslab/io.hpp"
#include "stresslab/verify.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace stresslab;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class Sandbox {
public:
    Sandbox() : dir_(fs::temp_directory_path() / ("stresslab-cli-" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    Sandbox(const Sandbox&) = delete;
    Sandbox& operator=(const Sandbox&) = delete;

    fs::path path(const std::string& name) const { return dir_ / name; }

    // Arguments are single-quoted, so instance expressions pass through untouched.
    Outcome run(const std::vector<std::string>& args) const {
        std::string cmd = "'" STRESSLAB_BIN "'";
        for (const auto& a : args) cmd += " '" + a + "'";
        const auto out = path("stdout.txt");
        const auto err = path("stderr.txt");
        cmd += " > '" + out.string() + "' 2> '" + err.string() + "'";
        const int status = std::system(cmd.c_str());
        REQUIRE(WIFEXITED(status));
        return {WEXITSTATUS(status), slurp(out), slurp(err)};
    }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
    }

private:
    fs::path dir_;
};

Sandbox& sandbox() {
    static Sandbox box;
    return box;
}

Outcome run(const std::vector<std::string>& args) {
    return sandbox().run(args);
}

std::string p(const std::string& name) {
    return sandbox().path(name).string();
}

}  // namespace

TEST_CASE("gen writes instance bundles") {
    auto r = run({"gen", "cross-polytope", "--dim", "4", "--out", p("oct4.json")});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("generated") != std::string::npos);
    const auto oct = io::load_instance(p("oct4.json"));
    CHECK(oct.complex.num_vertices() == 8);
    CHECK(oct.complex.facets().size() == 16);

    r = run({"gen", "random-pl-sphere", "--dim", "5", "--steps", "20", "--seed", "7", "--out", p("walk.json")});
    REQUIRE(r.code == 0);
    const auto walk = io::load_instance(p("walk.json"));
    REQUIRE(walk.trace);
    CHECK(replay(*walk.trace) == walk.complex);
    CHECK(provenance_replays(walk));

    r = run({"gen", "stacked-join", "--d", "6", "--k", "2", "--out", p("sj.json")});
    REQUIRE(r.code == 0);
    r = run({"inspect", p("sj.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("g         (1,1,1,0)") != std::string::npos);

    CHECK(run({"gen", "cross-polytope", "--dim", "0"}).code == 2);
    CHECK(run({"gen", "no-such-constructor"}).code == 2);
    CHECK(run({"gen", "cross-polytope", "--dim", "4", "--out", "/proc/stresslab/nope.json"}).code == 3);
}

TEST_CASE("stress prints the dimension") {
    for (const auto& [inst, degree, dim] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"Oct_4", "2", "dim 2"}, {"SB_5", "1", "dim 0"}, {"polygon_join(5,5)", "2", "dim 5"}}) {
        const auto r = run({"stress", inst, "--degree", degree, "--kind", "affine"});
        CAPTURE(inst);
        CHECK(r.code == 0);
        CHECK(r.out == dim + "\n");
    }
    CHECK(run({"stress", "Oct_4", "--degree", "2", "--kind", "linear"}).out == "dim 6\n");
    CHECK(run({"stress", "Oct_4", "--degree", "2", "--kind", "projective"}).code == 2);
    CHECK(run({"stress", p("absent.json"), "--degree", "2"}).code == 3);
    sandbox().write("garbage.json", "{ nope");
    CHECK(run({"stress", p("garbage.json"), "--degree", "2"}).code == 2);
}

TEST_CASE("verify and probe exit codes") {
    auto r = run({"verify", "pou-affine1", "Oct_4", "--out", p("pou.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    const auto report = io::report_from_json(io::read_json(p("pou.json")));
    CHECK(report.conclusion == Conclusion::pass);
    CHECK(io::read_json(p("pou.json"))["elapsed_ms"].is_null());

    r = run({"verify", "flag-g-bound", "polygon_join(5,5)", "--out", p("flag.json")});
    CHECK(r.code == 0);
    const json flag = io::read_json(p("flag.json"));
    CHECK(flag["witness"]["equality_at"].empty());
    CHECK(flag["dims"]["g"][2] == 5);

    CHECK(run({"verify", "flag-g-bound", "SB_4"}).code == 2);
    CHECK(run({"verify", "no-such-check", "Oct_4"}).code == 2);
    CHECK(run({"verify", "conj-3.3", "Oct_4"}).code == 2);
    CHECK(run({"probe", "lefschetz", "Oct_4"}).code == 2);
    CHECK(run({"verify", "support", "Oct_4", "--timings", "--out", p("timed.json")}).code == 0);
    CHECK(io::read_json(p("timed.json"))["elapsed_ms"].is_number());

    r = run({"probe", "conj-3.7", "join(C_6,SB_3)", "--i", "3", "--j", "1", "--out", p("gap.json")});
    CHECK((r.code == 0 || r.code == 1 || r.code == 2));
    REQUIRE(fs::exists(p("gap.json")));
    const auto gap = io::report_from_json(io::read_json(p("gap.json")));
    CHECK(gap.check_id == "conj-3.7");
    CHECK(run({"probe", "conj-3.3", "Oct_4", "--i", "2"}).code == 0);

    CHECK(run({"verify", "pou-affine1", "Oct_4", "--out", "/proc/stresslab/r.json"}).code == 3);
    CHECK(run({"verify"}).code == 2);
}

TEST_CASE("reconstruct from an affine stress file") {
    REQUIRE(run({"stress", "Oct_4", "--degree", "2", "--kind", "affine", "--out", p("a2.json")}).code == 0);
    auto r = run({"reconstruct", p("a2.json"), "--out", p("a1.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "dim 3\n");
    const auto oct = io::load_instance("Oct_4");
    const auto a1 = io::stress_from_json(io::read_json(p("a1.json")));
    CHECK(equals(a1.space, stress_space(oct.complex, *oct.embedding, 1, StressKind::affine).space));

    r = run({"reconstruct", p("a2.json"), "--affine-type", "--out", p("type.json")});
    CHECK(r.code == 0);
    const auto recovered = io::embedding_from_json(io::read_json(p("type.json")));
    CHECK(recovered == canonical(*oct.embedding));

    CHECK(run({"reconstruct", p("a2.json"), "--j", "2"}).code == 2);
    CHECK(run({"reconstruct", p("a2.json"), "--j", "0", "--affine-type"}).code == 2);
    REQUIRE(run({"stress", "Oct_4", "--degree", "2", "--kind", "linear", "--out", p("l2.json")}).code == 0);
    CHECK(run({"reconstruct", p("l2.json")}).code == 2);

    REQUIRE(run({"stress", "SB_5", "--degree", "2", "--kind", "affine", "--out", p("zero.json")}).code == 0);
    r = run({"reconstruct", p("zero.json"), "--out", p("zero1.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "dim 0\n");
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(io::stress_from_json(io::read_json(p("zero1.json"))).dim() == 0);
}

TEST_CASE("corpus runs batches and writes summaries") {
    sandbox().write("empty.json", "{}");
    auto r = run({"corpus", p("empty.json"), "--out", p("empty-out")});
    CHECK(r.code == 0);
    const json empty = io::read_json(p("empty-out/summary.json"));
    CHECK(empty["jobs"].empty());
    CHECK(fs::exists(p("empty-out/summary.txt")));

    sandbox().write("batch.json", R"SPEC({"entries": [
        {"instance": "Oct_4", "checks": [{"id": "pou-affine1"}, {"id": "support", "params": {"i": 2}}]},
        {"instance": "SB_4", "checks": [{"id": "flag-g-bound"}]},
        {"constructor": "random-pl-sphere", "params": {"d": 5, "steps": 15}, "seeds": [1, 2, 3], "generic": true,
         "checks": [{"id": "pou-affine-higher", "params": {"i": 2}}]},
        {"instance": "join(C_6,SB_3)", "checks": [{"id": "conj-3.7", "params": {"i": 2, "j": 1}}]}
    ]})SPEC");
    r = run({"corpus", p("batch.json"), "--out", p("batch-out")});
    CHECK(r.code == 0);
    const json summary = io::read_json(p("batch-out/summary.json"));
    REQUIRE(summary["jobs"].size() == 7);
    CHECK(summary["counts"]["pass"] == 5);
    CHECK(summary["counts"]["hypothesis-unmet"] == 1);
    for (const auto& job : summary["jobs"]) {
        CAPTURE(job.dump());
        CHECK(job["error"] == "");
        const auto rep = io::report_from_json(io::read_json(p("batch-out/" + job["report"].get<std::string>())));
        CHECK(conclusion_name(rep.conclusion) == job["conclusion"].get<std::string>());
    }
    const std::string table = slurp(p("batch-out/summary.txt"));
    CHECK(table.find("pass: 5") != std::string::npos);
    CHECK(r.out == table);

    // One worker gives the same files as many.
    std::string cmd = "STRESSLAB_WORKERS=1 '" STRESSLAB_BIN "' corpus '" + p("batch.json") + "' --out '" + p("serial-out") +
                      "' > /dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(p("serial-out/summary.json")) == slurp(p("batch-out/summary.json")));

    r = run({"report", p("batch-out/" + summary["jobs"][0]["report"].get<std::string>())});
    CHECK(r.code == 0);
    CHECK(r.out.find("pass: 1") != std::string::npos);

    CHECK(run({"corpus", p("missing-spec.json"), "--out", p("x")}).code == 3);
    sandbox().write("blocker", "");
    CHECK(run({"corpus", p("empty.json"), "--out", p("blocker/sub")}).code == 3);
    sandbox().write("nonobject.json", "[]");
    CHECK(run({"corpus", p("nonobject.json"), "--out", p("y")}).code == 2);
}

TEST_CASE("outputs are bit-identical across runs") {
    REQUIRE(run({"gen", "random-pl-sphere", "--dim", "4", "--steps", "12", "--seed", "5", "--generic", "--out", p("w1.json")}).code == 0);
    REQUIRE(run({"gen", "random-pl-sphere", "--dim", "4", "--steps", "12", "--seed", "5", "--generic", "--out", p("w2.json")}).code == 0);
    CHECK(slurp(p("w1.json")) == slurp(p("w2.json")));
    REQUIRE(run({"stress", p("w1.json"), "--degree", "2", "--kind", "affine", "--out", p("s1.json")}).code == 0);
    REQUIRE(run({"stress", p("w2.json"), "--degree", "2", "--kind", "affine", "--out", p("s2.json")}).code == 0);
    CHECK(slurp(p("s1.json")) == slurp(p("s2.json")));
    for (const auto& out : {"v1.json", "v2.json"})
        REQUIRE(run({"verify", "flip-bookkeeping", p("w1.json"), "--out", p(out)}).code == 0);
    CHECK(slurp(p("v1.json")) == slurp(p("v2.json")));
    const json rep = io::read_json(p("v1.json"));
    CHECK(io::report_to_json(io::report_from_json(rep), false) == rep);
}
