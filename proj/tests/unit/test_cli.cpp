#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dispatch.hpp"
#include "problem.hpp"

using namespace fockalg::cli;
using nlohmann::json;

#ifndef FOCKALG_TEST_DATA_DIR
#error "FOCKALG_TEST_DATA_DIR must be defined"
#endif

namespace {

std::string data(const std::string& name) { return std::string(FOCKALG_TEST_DATA_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "fockalg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    const Run r = run(std::move(args));
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("problem round trip") {
    const char* text = R"({"kind": "pick", "n": 2, "points": [[[0.1, 0.2], [0.0, -0.3]]],
                          "targets": [[[[1, 0], [0, 0.5]], [[0, 0], [0.25, 0]]]], "tol": 1e-9})";
    const ProblemFile p = parse_problem_text(text);
    const json once = serialize(p);
    const ProblemFile again = parse_problem(once);
    CHECK(serialize(again).dump() == once.dump());
    CHECK(once["points"] == json::parse(text)["points"]);
    CHECK(once["targets"] == json::parse(text)["targets"]);

    const char* ideal = R"({"kind": "ideal", "n": 3, "lambda_q": [[1, 0], [0, 1], [-1, 0]], "degree": 4,
                           "polynomial": [{"word": [1, 2], "coeff": [1, 0]}]})";
    const json ideal_once = serialize(parse_problem_text(ideal));
    CHECK(serialize(parse_problem(ideal_once)).dump() == ideal_once.dump());
}

TEST_CASE("problem validation names the offending field") {
    auto message = [](const std::string& path) {
        try {
            (void)parse_problem_file(path);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(data("bad_point.json")).find("points[0]") != std::string::npos);
    CHECK(message(data("bad_targets.json")).find("targets[1]") != std::string::npos);
    CHECK_THROWS_AS((void)parse_problem_text(R"({"kind": "pick", "n": 1, "points": [], "targets": [], "bogus": 1})"),
                    InputError);
    CHECK_THROWS_AS((void)parse_problem_text(R"({"kind": "knot", "n": 1})"), InputError);
    CHECK_THROWS_AS((void)parse_problem_text("{"), InputError);
    CHECK_THROWS_AS((void)parse_problem_file(data("does_not_exist.json")), InputError);
}

TEST_CASE("documented commands") {
    const json schwarz = run_json({"pick", "check", data("schwarz.json")});
    CHECK(schwarz["exit_code"] == 0);
    CHECK(schwarz["results"]["feasible"] == true);
    CHECK(schwarz["results"]["min_norm"].get<double>() == doctest::Approx(0.75));

    const json norm = run_json({"pick", "norm", data("pick_norm_2I.json")});
    CHECK(norm["results"]["min_norm"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));

    const json cara = run_json({"caratheodory", data("caratheodory_e1.json")});
    CHECK(cara["results"]["distance"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exit codes") {
    CHECK(run({"pick", "check", data("schwarz.json")}).code == 0);
    CHECK(run({"pick", "check", data("infeasible.json")}).code == 1);
    CHECK(run({"pick", "check", data("bad_point.json")}).code == 2);
    CHECK(run({"pick", "frobnicate", data("schwarz.json")}).code == 2);
    CHECK(run({"poisson", "c0", data("schwarz.json")}).code == 2);
    CHECK(run({"ideal", "basis", "--degree", "30", data("symmetric_ideal.json")}).code == 3);
    CHECK(run({"poisson", "c0", "--kmax", "20", data("unitary.json")}).code == 1);
    CHECK(run({}).code == 2);
}

TEST_CASE("every command produces a report") {
    for (const std::string sub : {"check", "norm", "interpolant", "classical"}) {
        CHECK(run_json({"pick", sub, data("schwarz.json")})["exit_code"] == 0);
    }
    for (const std::string sub : {"kernel", "c0", "vonneumann", "covariance"}) {
        const json r = run_json({"poisson", sub, data("poisson_diag.json")});
        CHECK(r["exit_code"] == 0);
    }
    for (const std::string sub : {"basis", "distance", "compressions", "check"}) {
        const json r = run_json({"ideal", sub, data("symmetric_ideal.json")});
        CHECK(r["exit_code"] == 0);
        CHECK(r["parameters"]["reliable_degree"] == 5);
    }
    const json check = run_json({"ideal", "check", data("symmetric_ideal.json")});
    CHECK(check["results"]["lhs"].get<double>() <= check["results"]["rhs"].get<double>() + 1e-3);
    CHECK(check["results"]["covariance_residual"].get<double>() < 1e-3);
}

TEST_CASE("reports are deterministic and text numbers match json") {
    const Run a = run({"--json", "pick", "check", data("schwarz.json")});
    const Run b = run({"--json", "pick", "check", data("schwarz.json")});
    CHECK(a.out == b.out);
    const Run text = run({"pick", "check", data("schwarz.json")});
    const json j = json::parse(a.out);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", j["results"]["min_eigenvalue"].get<double>());
    CHECK(text.out.find(buf) != std::string::npos);
}

TEST_CASE("flags override file values and --out writes the report") {
    const std::string path = "cli_out_test.json";
    const Run r = run({"--json", "--out", path, "--degree", "4", "ideal", "basis", data("symmetric_ideal.json")});
    CHECK(r.code == 0);
    std::ifstream in(path);
    const json written = json::parse(in);
    CHECK(written["parameters"]["m"] == 4);
    CHECK(written["results"]["quotient_dim"] == 15);
    std::remove(path.c_str());
}
