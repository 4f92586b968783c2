#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "arboreal");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = arboreal::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ARBOREAL_DATA_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("lattice validate reports the regularized degree") {
    const auto r = run({"lattice", "validate", data("triangular.json")});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() >= 4);
    CHECK(rows[0] == "quantity,value,error_estimate");
    CHECK(rows[3] == "D,7,0");
    const auto manifest = nlohmann::json::parse(r.err);
    CHECK(manifest["command"] == "lattice validate");
    CHECK(manifest["version"].is_string());
}

TEST_CASE("invalid input exits with status 1") {
    CHECK(run({"lattice", "validate", data("broken_disconnected.json")}).code == 1);
    CHECK(run({"lattice", "validate", "/nonexistent.json"}).code == 1);
    CHECK(run({"no-such-command"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"impedance", "--lattice", data("z2.json"), "--edge", "0,0,1:2,0,1"}).code == 1);
    CHECK(run({"degree", "--lattice", data("triangular.json"), "--vertex", "0,0,1", "--exact-z2"}).code == 1);
    CHECK(run({"dimer", "--event", "nope"}).code == 1);
    CHECK(run({"spectral", "--lattice", data("z2.json"), "--alpha", "0.5"}).code == 1);
}

TEST_CASE("unconverged quadrature exits with status 2") {
    const auto r = run({"--grid", "16", "--tol", "1e-300", "impedance", "--lattice", data("z2.json"), "--edge",
                        "0,0,1:1,0,1", "--edge2", "0,0,1:0,1,1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("achieved") != std::string::npos);
}

TEST_CASE("exact impedance output") {
    const auto r = run({"impedance", "--lattice", data("z2.json"), "--edge", "0,0,1:1,0,1", "--edge2",
                        "0,0,1:-1,0,1", "--exact-z2"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows[0] == "edge,edge2,value,error_estimate");
    CHECK(rows[1].rfind("\"0,0,1:1,0,1\",\"0,0,1:-1,0,1\",0.1366197723675813", 0) == 0);
}

TEST_CASE("probability of all origin edges") {
    const auto r = run({"prob", "--lattice", data("z2.json"), "--exact-z2", "--include", "all-origin-edges"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out)[1].rfind("probability,0.03607996755476", 0) == 0);
    const auto g = run({"prob", "--graph", data("k4.json"), "--include", "0", "--exclude", "5"});
    REQUIRE(g.code == 0);
    // K4: edges 0-1 in, 2-3 out.  Enumeration gives 4 of 16 trees.
    CHECK(lines(g.out)[1].rfind("probability,0.25", 0) == 0);
}

TEST_CASE("degree law from the command line") {
    const auto r = run({"degree", "--graph", data("k4.json"), "--vertex", "0"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows[0] == "degree,probability,error_estimate");
    CHECK(rows[2].rfind("1,0.5625", 0) == 0);
}

TEST_CASE("entropy in bits and the dimer entropy") {
    const auto r = run({"entropy", "--lattice", data("z2.json"), "--dimer", "2,1", "--bits"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].rfind("topological_entropy,1.682", 0) == 0);
    CHECK(rows[2].rfind("dimer_entropy,0.420", 0) == 0);
}

TEST_CASE("sampling is reproducible and thread independent") {
    const std::vector<std::string> base = {"sample", "--graph", data("k4.json"), "--include", "0", "-N", "3000"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = extra;
        args.insert(args.end(), base.begin(), base.end());
        return run(args).out;
    };
    const auto a = with({"--seed", "42"});
    CHECK(a == with({"--seed", "42"}));
    CHECK(a == with({"--seed", "42", "--threads", "4"}));
    CHECK(a != with({"--seed", "43"}));
    const auto t = run({"sample", "--torus", data("z2.json") + ",6", "--include", "0,0,1:1,0,1", "-N", "2000"});
    CHECK(t.code == 0);
}

TEST_CASE("dimer subcommands") {
    const auto c = run({"dimer", "--count-window", "3x3"});
    REQUIRE(c.code == 0);
    CHECK(lines(c.out)[1] == "matchings,192,0");
    CHECK(lines(c.out)[2] == "spanning_trees,192,0");
    const auto e = run({"dimer", "--event", "square_two_vertical"});
    CHECK(lines(e.out)[1].rfind("square_two_vertical,0.0736362295", 0) == 0);
    CHECK(run({"dimer", "--event", "square_two_vertical", "--count-window", "2x2"}).code == 1);
}

TEST_CASE("limits report") {
    const auto r = run({"limits", "--n", "10,20", "--smax", "2"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows[0] == "n,kind,key,value,target,error_estimate");
    CHECK(rows.size() == 5);
    const std::string prefix = "10,factorial_moment,1,";
    REQUIRE(rows[1].rfind(prefix, 0) == 0);
    CHECK(std::stod(rows[1].substr(prefix.size())) == doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("output file and manifest sidecar") {
    const auto dir = std::filesystem::temp_directory_path() / "arboreal_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    const auto r = run({"--out", path, "--seed", "9", "dimer", "--event", "single_domino_up"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream csv(path);
    std::stringstream body;
    body << csv.rdbuf();
    CHECK(body.str() == "event,value,error_estimate\nsingle_domino_up,0.25,0\n");
    std::ifstream m(path + ".manifest.json");
    const auto manifest = nlohmann::json::parse(m);
    CHECK(manifest["seed"] == 9);
    CHECK(manifest["argv"].size() == 7);
    std::filesystem::remove_all(dir);
}
