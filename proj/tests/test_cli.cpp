#include "test_main.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Run
{
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = ell::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string strip_time(json j)
{
    j.erase("wall_time_ms");
    return j.dump();
}

} // namespace

TEST_CASE("theta commands")
{
    const Run k = run({"theta", "kronecker-check", "--tau", "0+1i", "--samples", "20", "--tol", "1e-9"});
    CHECK(k.code == 0);
    const json r = k.report();
    CHECK(r["command"] == "theta kronecker-check");
    CHECK(r["results"][0]["pass"] == true);
    CHECK(r["config"]["tau"]["im"] == 1.0);

    const Run e = run({"theta", "eval", "--tau", "0.2+1.1i", "--n", "2", "--k", "1", "--z", "0.3-0.1i"});
    CHECK(e.code == 0);
    CHECK(e.report()["data"].contains("value"));
}

TEST_CASE("determinism and exit codes")
{
    const std::vector<std::string> a{"mirror", "compare-m2", "--tau", "0.5+0.8i", "--seed", "4", "--samples", "3",
                                     "--rank", "2"};
    const Run r1 = run(a), r2 = run(a);
    CHECK(r1.code == 0);
    CHECK(strip_time(r1.report()) == strip_time(r2.report()));

    CHECK(run({"theta", "kronecker-check", "--tau", "0+1i", "--samples", "3", "--tol", "1e-30"}).code == 1);
    CHECK(run({"theta", "kronecker-check", "--tau", "1-1i"}).code == 2);
    CHECK(run({"theta", "kronecker-check", "--tau", "banana"}).code == 2);
    CHECK(run({"theta", "nonsense"}).code == 2);
    CHECK(run({"ainf", "check"}).code == 2);
    CHECK(run({"ainf", "check", "--input", "/nonexistent.json"}).code == 2);
}

TEST_CASE("mirror and holomorphic commands")
{
    CHECK(run({"mirror", "compare-m3", "--tau", "0.5+0.8i", "--rank", "2", "--tol", "1e-6", "--samples", "3"}).code == 0);
    CHECK(run({"holo", "m3h", "--tau", "0.2+1.1i", "--rank", "2"}).code == 0);
    CHECK(run({"holo", "serre", "--tau", "0+1i", "--n", "2"}).code == 0);
    CHECK(run({"holo", "mainlem", "--degree", "3", "--samples", "8"}).code == 0);
    const Run x = run({"mirror", "extract-homotopy", "--tau", "0.2+1.1i"});
    const json r = x.report();
    for (const auto& res : r["results"])
        if (res["name"] != "zero_map") CHECK(res["pass"] == true);
}

TEST_CASE("fukaya and ainf commands with JSON input")
{
    {
        std::ofstream f("cli_fukaya.json");
        f << R"({"objects":[{"p":0,"c":0.21,"lambda":0.1},{"p":1,"c":0.58,"lambda":-0.2},{"p":2,"c":0.07,"lambda":0.3}],
                 "morphisms":[{"point":0},{"point":0}]})";
    }
    const Run m = run({"fukaya", "mk", "--tau", "0.2+1.1i", "--input", "cli_fukaya.json"});
    CHECK(m.code == 0);
    CHECK(m.report()["data"]["outputs"].size() == 2);

    {
        std::ofstream f("cli_struct.json");
        f << R"({"objects":["A"],"homs":{"A->A":{"basis":[{"label":"1","degree":0},{"label":"x","degree":1}]}},
                 "products":{"1":[],"2":[{"inputs":["1","1"],"outputs":[{"label":"1","re":1}]},
                                        {"inputs":["1","x"],"outputs":[{"label":"x","re":1}]},
                                        {"inputs":["x","1"],"outputs":[{"label":"x","re":1}]}],"3":[],"4":[]},
                 "homotopy":{"2":[{"inputs":["x","x"],"outputs":[{"label":"x","re":"1/3","im":"-2"}]}]}})";
    }
    const Run c = run({"ainf", "check", "--input", "cli_struct.json", "--max-arity", "4", "--exact"});
    CHECK(c.code == 0);
    CHECK(c.report()["results"].size() == 5);
    const Run t = run({"ainf", "transport", "--input", "cli_struct.json", "--max-arity", "4", "--exact"});
    CHECK(t.code == 0);
    CHECK(t.report()["data"]["structure"].contains("products"));
}
