#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "betacert/cli.hpp"

using namespace betacert;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("exit code matrix")
{
    struct Row {
        std::vector<std::string> args;
        int code;
    };
    const Row rows[] = {
        {{"certify", "--n", "4"}, 0},
        {{"certify", "--n", "2"}, 10},
        {{"certify", "--n", "3"}, 10},
        {{"certify", "--n", "4", "--max-steps", "20"}, 20},
        {{"certify", "--poly", "-1,-1,0,0,1"}, 64},
        {{"certify", "--poly", "-1,-1,0,0,1", "--assume-irreducible"}, 0},
        {{"certify", "--n", "4", "--poly", "-1,1"}, 64},
        {{"certify", "--n", "1"}, 64},
        {{"certify", "--n", "4", "--conjugate", "far"}, 64},
        {{"expand", "--n", "4", "--steps", "36", "--raw"}, 0},
        {{"expand", "--n", "4", "--raw", "--json"}, 64},
        {{"roots", "--n", "12"}, 0},
        {{"roots", "--poly", "1,2,1"}, 64},
        {{"verify-lemmas", "--lemma", "abs", "--range", "8:8"}, 0},
        {{"verify-lemmas", "--lemma", "abs", "--range", "7:8"}, 64},
        {{"verify-lemmas", "--lemma", "abs", "--range", "8-9"}, 64},
        {{"verify-lemmas", "--lemma", "abs"}, 64},
        {{"perron", "--g", "2,2,-1,1"}, 0},
        {{"perron", "--g", "2,1,3,-1"}, 1},
        {{"perron", "--g", "1,2,1"}, 1},
        {{"perron", "--g", "1,1", "--n", "40"}, 0},
        {{"perron", "--g", "1,1", "--n", "1"}, 64},
        {{"plot-data", "--figure", "1"}, 0},
        {{"plot-data", "--figure", "2", "--g", "2,2,-1,1"}, 0},
        {{"plot-data", "--figure", "3"}, 64},
        {{"frobnicate"}, 64},
        {{}, 64},
    };
    for (const auto& row : rows) {
        std::string joined;
        for (const auto& a : row.args)
            joined += a + " ";
        CAPTURE(joined);
        CHECK(run(row.args).code == row.code);
    }
}

TEST_CASE("raw digits")
{
    CHECK(run({"expand", "--n", "4", "--steps", "36", "--raw"}).out == "10000 00010 00000 00000 01000 00000 10000 0\n");
    CHECK(run({"expand", "--n", "5", "--steps", "27", "--raw"}).out == "10000 00000 00100 00000 00000 00\n");
}

TEST_CASE("certificate payload")
{
    Outcome o = run({"certify", "--n", "4", "--check-index", "35"});
    REQUIRE(o.code == 0);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j["schema"] == "1");
    CHECK(j["k"] == 35);
    CHECK(j["lower_bound_on_orbit"]["num"].is_string());
    CHECK(j["check_index"]["holds"] == true);
}

TEST_CASE("verify-lemmas CSV")
{
    Outcome o = run({"verify-lemmas", "--lemma", "abs", "--range", "8:8"});
    CHECK(o.out == "n,lemma,pass,margin,precision_bits,millis\n8,abs,true,0.0049243554,128,0\n");
    Outcome all = run({"verify-lemmas", "--range", "6:9"});
    CHECK(all.code == 0);
    CHECK(all.out.find("6,est,true") != std::string::npos);
    CHECK(all.out.find("9,nextone,true") != std::string::npos);
}

TEST_CASE("identical arguments give identical output")
{
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"certify", "--n", "13"}, {"roots", "--n", "9"}, {"expand", "--n", "7"},
          {"verify-lemmas", "--range", "8:30", "--jobs", "3"}, {"perron", "--g", "2,1,3,-1", "--samples", "360"},
          {"plot-data", "--figure", "1", "--n", "24"}}) {
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("--out writes the payload to a file")
{
    std::string path = "betacert_cli_test_out.json";
    Outcome o = run({"--out", path, "certify", "--n", "5"});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run({"certify", "--n", "5"}).out);
    std::remove(path.c_str());
}

TEST_CASE("figure CSV headers")
{
    Outcome f1 = run({"plot-data", "--figure", "1"});
    CHECK(f1.out.rfind("n,m,root_re,root_im,approx_re,approx_im,deviation\n", 0) == 0);
    Outcome f2 = run({"plot-data", "--figure", "2", "--g", "2,2,-1,1", "--samples", "16"});
    CHECK(f2.out.rfind("t,re,im,modulus,g1\n0,4,0,4,4\n", 0) == 0);
    Outcome csv = run({"roots", "--n", "12", "--csv"});
    CHECK(csv.out == f1.out);
}
