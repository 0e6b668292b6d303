#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "coprox/cli.hpp"

namespace fs = std::filesystem;
using coprox::io::json;

namespace {

struct Run
{
    int exit = 0;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    Run r;
    r.exit = coprox::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class TempDir
{
    public:
        TempDir()
        {
            std::random_device rd;
            path_ = fs::temp_directory_path() / ("coprox-test-" + std::to_string(rd()));
            fs::create_directories(path_);
        }
        ~TempDir() { fs::remove_all(path_); }

        fs::path write(const std::string& name, const json& j) const
        {
            auto p = path_ / name;
            std::ofstream(p) << j.dump(2);
            return p;
        }

        const fs::path& path() const { return path_; }

    private:
        fs::path path_;
};

std::vector<std::string> command(const json& fixture)
{
    std::vector<std::string> args;
    for (const auto& a : fixture["args"])
        args.push_back(a.get<std::string>());
    return args;
}

}   // namespace

TEST_SUITE("cli")
{
    TEST_CASE("every fixture is deterministic and matches its expectation")
    {
        TempDir dir;
        auto corpus = coprox::cli::fixture_corpus();
        CHECK(corpus.size() >= 30);
        for (const auto& [name, fixture] : corpus.items())
        {
            CAPTURE(name);
            auto query = dir.write(name + ".json", fixture["query"]);
            auto args = command(fixture);
            args.push_back("--query");
            args.push_back(query.string());
            auto first = run(args);
            auto second = run(args);
            CHECK(first.exit == fixture["expected"]["exit"].get<int>());
            CHECK(first.out == second.out);
            CHECK(first.err.find("finished in") != std::string::npos);
            auto report = first.report();
            if (fixture["expected"].contains("decision"))
                CHECK(report["decision"] == fixture["expected"]["decision"]);
            CHECK(report.contains("method"));
            CHECK(report.contains("certificate"));
            CHECK(report["input"].is_object());

            auto saved = dir.write(name + ".report.json", report);
            auto check = run({"verify-certificate", "--report", saved.string()});
            auto verdict = check.report()["result"]["verified"];
            CHECK(verdict != json(false));
            if (report["decision"] == json(true) && verdict == json(true))
                CHECK(check.exit == 0);
        }
    }

    TEST_CASE("certificates of true verdicts re-check")
    {
        TempDir dir;
        auto corpus = coprox::cli::fixture_corpus();
        for (const char* name : {"strong_anti_linf_flagship", "strong_anti_c0_6", "suborth_l1_e3",
                                 "coapprox_verify_l1", "find_direction_l1", "dominance_c0_6_r1",
                                 "dominance_trig_4_all", "lift_linf_flagship_2", "op_orth_diag_e12",
                                 "op_bs_diag_e12"})
        {
            CAPTURE(name);
            const auto& f = corpus[name];
            auto args = command(f);
            args.push_back("--query");
            args.push_back(f["query"].dump());
            auto r = run(args);
            REQUIRE(r.exit == 0);
            auto check = run({"verify-certificate", "--report", r.out});
            CHECK(check.exit == 0);
            CHECK(check.report()["result"]["verified"] == json(true));
        }
    }

    TEST_CASE("tampered certificates are rejected")
    {
        auto corpus = coprox::cli::fixture_corpus();
        const auto& f = corpus["strong_anti_linf_flagship"];
        auto args = command(f);
        args.push_back("--query");
        args.push_back(f["query"].dump());
        auto report = run(args).report();
        report["certificate"]["points"][0][0] = "17/5";
        auto check = run({"verify-certificate", "--report", report.dump()});
        CHECK(check.report()["result"]["verified"] == json(false));
        CHECK(check.exit == 0);
    }

    TEST_CASE("flags override the query document")
    {
        auto r = run({"norm", "--query", R"({"space": {"type": "linf", "n": 3}, "x": [1, 1, 1]})", "--x",
                      "[3, 0, 2]"});
        CHECK(r.exit == 0);
        CHECK(r.report()["result"]["norm"] == json("3"));
        auto e = run({"orth", "--space", R"({"type": "linf", "n": 2})", "--x", "[1, 0]", "--y", "[1, 0]", "--eps",
                      "1/2"});
        CHECK(e.exit == 0);
        CHECK(e.report()["decision"] == json(false));
        CHECK(e.report()["method"] == json("exact-lp"));
    }

    TEST_CASE("oracle reports refutations and inconclusive passes")
    {
        auto v = run({"orth", "--space", R"({"type": "linf", "n": 2})", "--x", "[1, 0]", "--y", "[1, 0]",
                      "--oracle"});
        CHECK(v.exit == 0);
        CHECK(v.report()["certificate"]["type"] == json("violating_lambda"));
        auto t = run({"oracle", "--space", R"({"type": "linf", "n": 2})", "--x", "[1, 1]", "--y", "[1, -1]"});
        CHECK(t.report()["conclusive"] == json(false));
    }

    TEST_CASE("input errors exit with 1 and a pointer")
    {
        auto bad = run({"norm", "--space", "{\"type\": ", "--x", "[1]"});
        CHECK(bad.exit == 1);
        CHECK(bad.report()["error"]["kind"].is_string());
        auto fl = run({"faces", "--space", R"({"type": "polyhedral", "vertices": [[1, 0], [-1, 0], [0, 1.5], [0, -1]]})"});
        CHECK(fl.exit == 1);
        CHECK(fl.report()["error"]["message"].get<std::string>().find("/space/vertices/2/1") != std::string::npos);
        auto dim = run({"norm", "--space", R"({"type": "linf", "n": 3})", "--x", "[1, 2]"});
        CHECK(dim.exit == 1);
        CHECK(dim.report()["command"] == json("norm"));
        CHECK(run({"no-such-command"}).exit == 1);
    }

    TEST_CASE("unsupported and capped questions exit with 2")
    {
        auto lp = run({"decide", "anti", "--space", R"({"type": "lp", "n": 3, "p": 3})", "--subspace",
                       R"({"basis": [[1, 0, 0]]})"});
        CHECK(lp.exit == 2);
        auto capped = run({"faces", "--space", R"({"type": "polyhedral", "dimension_cap": 2, "vertices": [[1,1,1],[-1,-1,-1],[1,-1,1],[-1,1,-1],[1,1,-1],[-1,-1,1],[1,-1,-1],[-1,1,1]]})"});
        CHECK(capped.exit == 2);
    }

    TEST_CASE("fixtures command writes the corpus")
    {
        TempDir dir;
        auto r = run({"fixtures", "--out", dir.path().string()});
        CHECK(r.exit == 0);
        std::ifstream in(dir.path() / "manifest.json");
        auto manifest = json::parse(in);
        CHECK(manifest.size() == coprox::cli::fixture_corpus().size());
        for (const auto& entry : manifest)
            CHECK(fs::exists(dir.path() / entry["query"].get<std::string>()));
    }
}
