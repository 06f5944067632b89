#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cechctx/cli.hpp"
#include "cechctx/corpus.hpp"
#include "cechctx/document.hpp"
#include "cechctx/errors.hpp"
#include "cechctx/report.hpp"
#include "support.hpp"

using namespace cechctx;
using cechctx::testing::corpus_model;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::vector<std::string> problems_of(std::string_view text) {
    try {
        load_model(parse_scenario(text));
    } catch (const ValidationError& e) {
        return e.problems();
    }
    return {};
}

}  // namespace

TEST_CASE("parse bundled corpus") {
    for (auto name : corpus_names()) {
        CAPTURE(name);
        CHECK_NOTHROW(load_model(parse_scenario(*corpus_text(name))));
    }
    auto pr = corpus_model("prbox");
    std::vector<std::vector<std::string>> expected{{"0,0", "1,1"}, {"0,0", "1,1"}, {"0,0", "1,1"}, {"0,1", "1,0"}};
    for (ContextIndex i = 0; i < 4; ++i) {
        std::vector<std::string> got;
        for (const auto& s : pr.support.support(i)) got.push_back(pr.tuple_of(i, s));
        CHECK(got == expected[i]);
    }
}

TEST_CASE("scenario document errors") {
    SUBCASE("cover") {
        auto p = problems_of(R"({"measurements":["A","B","C"],"outcomes":[0,1],"contexts":[["A","B"],["B","A"]],
                                 "model":{"support":[["0,0"],["0,0"]]}})");
        bool cover = false;
        for (const auto& x : p) cover = cover || contains(x, "'C'");
        CHECK(cover);
    }
    SUBCASE("sum") {
        auto p = problems_of(R"({"measurements":["A"],"outcomes":[0,1],"contexts":[["A"],["A","B"]],
                                 "model":{"distribution":[{"0":"1/2"}]}})");
        CHECK_FALSE(p.empty());
        auto q = problems_of(R"({"measurements":["A"],"outcomes":[0,1],"contexts":[["A"]],
                                 "model":{"distribution":[{"0":"1/2","1":"49/100"}]}})");
        REQUIRE(q.size() == 1);
        CHECK(contains(q[0], "context 0"));
    }
    SUBCASE("schema") {
        auto p = problems_of(R"({"measurements":["A"],"outcomes":[0,1],"contexts":[["A"]],"extra":1,
                                 "model":{"support":[["0"]],"distribution":[]}})");
        CHECK(p.size() == 2);
        CHECK(problems_of("{not json").size() == 1);
        auto arity = problems_of(R"({"measurements":["A"],"outcomes":[0,1],"contexts":[["A"]],"model":{"support":[["0,1"]]}})");
        REQUIRE(arity.size() == 1);
        CHECK(contains(arity[0], "$.model.support[0][0]"));
        auto rational = problems_of(R"({"measurements":["A"],"outcomes":[0,1],"contexts":[["A"]],
                                        "model":{"distribution":[{"0":"0.5","1":"1/0"}]}})");
        CHECK(rational.size() == 2);
    }
    SUBCASE("signalling") {
        auto p = problems_of(R"({"measurements":["a","b","c"],"outcomes":[0,1],"contexts":[["a","b"],["a","c"]],
            "model":{"distribution":[{"0,0":"1"},{"1,0":"1"}]}})");
        CHECK(p.size() == 2);
    }
    SUBCASE("array tuples and declared order") {
        auto m = load_model(parse_scenario(R"({"measurements":["A","B"],"outcomes":["x","y"],"contexts":[["B","A"]],
                                               "model":{"support":[[["x","y"]]]}})"));
        const auto& s = m.support.support(0).front();
        CHECK(s.at(m.scenario.measurement_id("B")) == m.scenario.outcome_id("x"));
        CHECK(m.tuple_of(0, s) == "x,y");
        CHECK(m.context_label(0) == "(B,A)");
    }
}

TEST_CASE("report round trip and determinism") {
    for (auto name : corpus_names()) {
        CAPTURE(name);
        auto m = corpus_model(name);
        auto r = build_report(m, ReportOptions{{Ring::mod2, Ring::integers}, true});
        auto text = emit_report(r, true);
        CHECK(nlohmann::json::parse(text).get<Report>() == r);
        CHECK(emit_report(build_report(m, ReportOptions{{Ring::mod2, Ring::integers}, true}), true) == text);
    }
}

TEST_CASE("human reports") {
    auto hardy = emit_report(build_report(corpus_model("hardy")), false);
    CHECK(contains(hardy, "False positives over Z: 1  (a,b) 0,0"));
    CHECK(contains(hardy, "00 01 10 11"));

    auto pm = build_report(corpus_model("peres-mermin"));
    CHECK(pm.verdict == "strongly_contextual");
    CHECK(pm.gcd == 2);
    CHECK(pm.gcd_holds);
    auto text = emit_report(pm, false);
    CHECK(contains(text, "Obstructions over Z/2: 24/24 support sections non-vanishing"));
}

TEST_CASE("run_command") {
    SUBCASE("examples run ghz") {
        auto r = run({"examples", "run", "ghz", "--ring", "z2"});
        CHECK(r.code == exit_ok);
        CHECK(contains(r.out, "16/16 support sections non-vanishing"));
        CHECK_FALSE(contains(r.out, "over Z:"));
    }
    SUBCASE("hardy witness") {
        auto r = run({"obstruction", "hardy.json", "--context", "0", "--section", "0,0", "--ring", "z", "--witness"});
        CHECK(r.code == exit_ok);
        CHECK(contains(r.out, "vanishes"));
        CHECK(contains(r.out, " - 1*("));
    }
    SUBCASE("classify prbox") {
        auto r = run({"classify", "prbox.json"});
        CHECK(r.code == exit_ok);
        CHECK(r.out.rfind("strongly contextual; 0 global sections\n", 0) == 0);
    }
    SUBCASE("usage errors") {
        CHECK(run({}).code == exit_usage);
        CHECK(run({"report"}).code == exit_usage);
        CHECK(run({"report", "nowhere.json"}).code == exit_usage);
        CHECK(run({"obstruction", "hardy.json", "--ring", "q"}).code == exit_usage);
        CHECK(run({"obstruction", "hardy.json", "--context", "0"}).code == exit_usage);
        CHECK(run({"obstruction", "hardy.json", "--context", "1", "--section", "0,0"}).code == exit_usage);
        CHECK(run({"obstruction", "hardy.json", "--context", "0", "--section", "0,0", "--all"}).code == exit_usage);
        CHECK(run({"examples", "show", "nope"}).code == exit_usage);
        CHECK(run({"--help"}).code == exit_ok);
    }
    SUBCASE("invalid and signalling models exit 2") {
        const auto dir = std::filesystem::temp_directory_path();
        const auto bad = (dir / "cechctx_test_bad_sum.json").string();
        std::ofstream(bad) << R"({"measurements":["A"],"outcomes":[0,1],"contexts":[["A"]],
                                 "model":{"distribution":[{"0":"1/2","1":"49/100"}]}})";
        auto r = run({"validate", bad});
        CHECK(r.code == exit_invalid_model);
        CHECK(contains(r.err, "context 0"));
        const auto sig = (dir / "cechctx_test_signalling.json").string();
        std::ofstream(sig) << R"({"measurements":["a","b","c"],"outcomes":[0,1],"contexts":[["a","b"],["a","c"]],
                                  "model":{"support":[["0,0"],["1,0"]]}})";
        CHECK(run({"report", sig}).code == exit_invalid_model);
        CHECK(run({"classify", sig}).code == exit_invalid_model);
        std::filesystem::remove(bad);
        std::filesystem::remove(sig);
        CHECK(run({"validate", "hardy.json"}).code == exit_ok);
    }
    SUBCASE("examples list and show") {
        auto r = run({"examples", "list"});
        CHECK(r.out == "hardy\nprbox\nghz\ntriangle\nks18\nperes-mermin\nks-false-positive\n");
        auto s = run({"examples", "show", "triangle"});
        CHECK(s.code == exit_ok);
        CHECK(contains(s.out, "\"contexts\""));
    }
    SUBCASE("json report is byte-stable") {
        auto a = run({"examples", "run", "ks-false-positive", "--json", "--witness"});
        auto b = run({"examples", "run", "ks-false-positive", "--json", "--witness"});
        CHECK(a.code == exit_ok);
        CHECK(a.out == b.out);
    }
}
