#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wdam/config.hpp"

#include <cstdio>
#include <fstream>

using namespace wdam;
using nlohmann::json;

namespace {

json parabola_json() {
    // built piecewise: nested brace-init would turn two-element arrays like
    // ["0", "1"] into {"0": "1"} objects
    json j;
    j["d"] = 1;
    j["m"] = 1;
    j["taus"] = json::array({"1", "1/2"});
    j["domain"] = json::array({json::array({"0", "1"})});
    json term = json::array({"1", json::array({2})});
    j["components"] = json::array({json::array({term})});
    return j;
}

}  // namespace

TEST_CASE("parabola instance loads with exact fields") {
    ProblemConfig cfg = load_problem(parabola_json());
    CHECK(cfg.weights.d == 1);
    CHECK(cfg.weights.m == 1);
    CHECK(cfg.weights.tau(1) == Rat(1));
    CHECK(cfg.weights.tau(2) == Rat(1, 2));
    REQUIRE(cfg.manifold.has_value());
    CHECK(cfg.manifold->domain.axis(0).lo == Rat(0));
    CHECK(cfg.manifold->domain.axis(0).hi == Rat(1));
    CHECK(eval_f(*cfg.manifold, {Rat(1, 2)}) == std::vector<Rat>{Rat(1, 4)});
}

TEST_CASE("weights-only config leaves the manifold unset") {
    json j{{"d", 2}, {"m", 1}, {"taus", {"6/5", "1/5", "1/5"}}};
    ProblemConfig cfg = load_problem(j);
    CHECK_FALSE(cfg.manifold.has_value());
    CHECK(cfg.weights.tau(1) == Rat(6, 5));
}

TEST_CASE("decimal strings and bare integers are accepted as rationals") {
    json j = parabola_json();
    j["taus"] = {1, "0.5"};
    ProblemConfig cfg = load_problem(j);
    CHECK(cfg.weights.tau(1) == Rat(1));
    CHECK(cfg.weights.tau(2) == Rat(1, 2));
}

TEST_CASE("malformed configs raise ConfigError with the reason") {
    json j = parabola_json();
    j.erase("taus");
    CHECK_THROWS_AS(load_problem(j), ConfigError);

    j = parabola_json();
    j.erase("components");
    CHECK_THROWS_AS(load_problem(j), ConfigError);

    j = parabola_json();
    j["domain"] = json::array({json::array({"0", "1"}),
                               json::array({"0", "1"})});  // arity mismatch with d = 1
    CHECK_THROWS_AS(load_problem(j), ConfigError);

    j = parabola_json();
    json bad_term = json::array({"1", json::array({2, 0})});  // multi-index arity
    j["components"] = json::array({json::array({bad_term})});
    CHECK_THROWS_AS(load_problem(j), ConfigError);

    j = parabola_json();
    j["taus"] = {"1/2", "1"};  // tail exceeds head: weight validation bubbles up
    CHECK_THROWS_AS(load_problem(j), ValidationError);
}

TEST_CASE("file loading and missing files") {
    const char* path = "wdam_test_config.json";
    {
        std::ofstream out(path);
        out << parabola_json().dump();
    }
    ProblemConfig cfg = load_problem_file(path);
    CHECK(cfg.weights.tau(2) == Rat(1, 2));
    std::remove(path);
    CHECK_THROWS_AS(load_problem_file(path), ConfigError);
}

TEST_CASE("rational json carries exact and approximate forms") {
    json j = rational_json(Rat(19, 11));
    CHECK(j.at("exact") == "19/11");
    std::string approx = j.at("approx").get<std::string>();
    CHECK(approx.substr(0, 6) == "1.7272");
    CHECK(rational_json(Rat(-1, 2)).at("exact") == "-1/2");
    CHECK(parse_rational(rational_json(Rat(22, 7)).at("exact").get<std::string>()) ==
          Rat(22, 7));
}
