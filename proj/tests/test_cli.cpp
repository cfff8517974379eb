#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stonevn/cli.hpp"

using namespace stonevn;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return RunResult{code, out.str(), err.str()};
}

// Writes fixtures once per process into a scratch directory next to the
// test binary's working directory.
class Fixtures {
  public:
    Fixtures() {
        dir_ = std::filesystem::temp_directory_path() / "stonevn_cli_fixtures";
        std::filesystem::create_directories(dir_);
        write("ring3.json", R"({"field":"Q","points":["s1","s2","s3"]})");
        write("a.json", R"({"coords":{"s1":"2","s2":"0","s3":"-3"}})");
        write("e.json", R"({"coords":{"s1":"1","s2":"0","s3":"1"}})");
        write("bad_e.json", R"({"coords":{"s1":"2","s2":"0","s3":"1"}})");
        write("algebra.json", R"({"atoms":["a","b","c"]})");
        write("x.json", R"({"subset":["a","c"]})");
        write("y.json", R"({"subset":["b","c"]})");
        write("space.json", R"({"points":["p","q","r"]})");
        write("ring_r.json", R"({"field":"R","points":["s1","s2"]})");
        write("malformed.json", R"({"points":)");
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

  private:
    void write(const std::string& name, const std::string& text) {
        std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
        f << text << "\n";
    }

    std::filesystem::path dir_;
};

const Fixtures& fixtures() {
    static const Fixtures fx;
    return fx;
}

} // namespace

TEST_CASE("quasi-inverse command emits the componentwise inverse") {
    const auto& fx = fixtures();
    const auto r = run({"quasi-inverse", "--ring", fx.path("ring3.json"), "--element",
                        fx.path("a.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "{\n  \"coords\": {\n    \"s1\": \"1/2\",\n    \"s2\": \"0\",\n    \"s3\": "
                   "\"-1/3\"\n  }\n}\n");
    CHECK(r.err.empty());
}

TEST_CASE("command output is byte-identical across runs") {
    const auto& fx = fixtures();
    const std::vector<std::vector<std::string>> invocations = {
        {"idempotent-of", "--ring", fx.path("ring3.json"), "--element", fx.path("a.json")},
        {"idempotents", "--ring", fx.path("ring3.json")},
        {"spec", "--ring", fx.path("ring3.json")},
        {"d-inf", "--ring", fx.path("ring3.json"), "--element", fx.path("a.json")},
        {"ba-ops", "--algebra", fx.path("algebra.json"), "--x", fx.path("x.json"), "--y",
         fx.path("y.json")},
        {"stone", "--algebra", fx.path("algebra.json")},
        {"clopen", "--space", fx.path("space.json")},
        {"delta", "--space", fx.path("space.json"), "--seed", "5"},
        {"residue-check", "--ring", fx.path("ring3.json"), "--point", "s2", "--seed", "9"},
    };
    for (const auto& args : invocations) {
        const auto first = run(args);
        const auto second = run(args);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
        CHECK(!first.out.empty());
    }
}

TEST_CASE("format pretty renders without JSON punctuation") {
    const auto& fx = fixtures();
    const auto r = run({"spec", "--ring", fx.path("ring3.json"), "--format", "pretty"});
    CHECK(r.code == 0);
    CHECK(r.out == "points: [s1, s2, s3]\n");
}

TEST_CASE("usage errors exit 2") {
    const auto& fx = fixtures();
    CHECK(run({}).code == 2);                                             // no verb
    CHECK(run({"frobnicate"}).code == 2);                                 // unknown verb
    CHECK(run({"quasi-inverse", "--ring", fx.path("ring3.json")}).code == 2); // missing option
    CHECK(run({"spec", "--ring", fx.path("ring3.json"), "--format", "yaml"}).code == 2);
}

TEST_CASE("input errors exit 2 with a diagnostic") {
    const auto& fx = fixtures();
    const auto missing = run({"spec", "--ring", fx.path("does_not_exist.json")});
    CHECK(missing.code == 2);
    CHECK(!missing.err.empty());

    const auto malformed = run({"clopen", "--space", fx.path("malformed.json")});
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("input error") != std::string::npos);

    // j demands an idempotent.
    const auto not_idempotent =
        run({"j", "--ring", fx.path("ring3.json"), "--element", fx.path("bad_e.json")});
    CHECK(not_idempotent.code == 2);

    // spec insists on the exact backend.
    const auto real_backed = run({"spec", "--ring", fx.path("ring_r.json")});
    CHECK(real_backed.code == 2);
    CHECK(real_backed.err.find("\"Q\"") != std::string::npos);
}

TEST_CASE("j agrees with d-inf on idempotents") {
    const auto& fx = fixtures();
    const auto via_j = run({"j", "--ring", fx.path("ring3.json"), "--element", fx.path("e.json")});
    const auto via_d =
        run({"d-inf", "--ring", fx.path("ring3.json"), "--element", fx.path("e.json")});
    CHECK(via_j.code == 0);
    CHECK(via_j.out == via_d.out);
}

TEST_CASE("help is available and exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("quasi-inverse") != std::string::npos);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("epsilon and theta report passing components") {
    const auto& fx = fixtures();
    const auto eps = run({"epsilon", "--space", fx.path("space.json")});
    CHECK(eps.code == 0);
    CHECK(eps.out.find("\"bijective\": true") != std::string::npos);

    const auto th = run({"theta", "--algebra", fx.path("algebra.json")});
    CHECK(th.code == 0);
    CHECK(th.out.find("\"passed\": true") != std::string::npos);
}
