#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_util.hpp"
#include "vflab/bs_engine.hpp"
#include "vflab/cli.hpp"
#include "vflab/parse.hpp"

using namespace vflab;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json envelope_of(const RunResult& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("polynomial parsing and printing") {
    SUBCASE("examples") {
        VarSet xy({"x", "y"});
        CHECK(parse_polynomial("x^2 + y^3", xy).str() == "x^2 + y^3");
        CHECK(parse_polynomial("1/2*x - 1/2*x", xy).is_zero());
        CHECK(parse_polynomial("1/2*x*y^2 - 3*y", xy).str() == "1/2*x*y^2 - 3*y");
    }
    SUBCASE("position-annotated errors") {
        VarSet xy({"x", "y"});
        try {
            parse_polynomial("x + @", xy);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.column == 5);
        }
        CHECK_THROWS_AS(parse_polynomial("x y", xy), ParseError);       // no implicit product
        CHECK_THROWS_AS(parse_polynomial("x + z", xy), ParseError);     // unknown variable
        CHECK_THROWS_AS(parse_polynomial("1/0*x", xy), ParseError);     // zero denominator
    }
    SUBCASE("round trip on random polynomials") {
        std::mt19937 rng(37);
        VarSet vars({"x", "y", "z"});
        for (int trial = 0; trial < 40; ++trial) {
            Polynomial p = testutil::random_polynomial(rng, vars, 5, 5);
            CHECK(parse_polynomial(p.str(), vars) == p);
        }
    }
}

TEST_CASE("operator parsing") {
    Polynomial f = parse_polynomial_auto("x^2+y^3");
    WeylContext ctx = twisted_context(f);
    WeylOperator op = parse_weyl_operator("2*x*dy - 3*y^2*dx", ctx);
    CHECK(op.order() == 1);
    CHECK(parse_weyl_operator("s*dx", ctx) ==
          WeylOperator::coefficient(ctx, Polynomial::variable(ctx.coeff_vars(), 2)) *
              WeylOperator::derivative(ctx, 0));
    CHECK_THROWS_AS(parse_weyl_operator("dq", ctx), ParseError);
}

TEST_CASE("bs command emits the expected envelope") {
    RunResult r = run_cli({"bs", "--f", "x^2+y^3", "--weights", "1/2,1/3", "--json"});
    CHECK(r.code == 0);
    json env = envelope_of(r);
    CHECK(env["status"] == "ok");
    CHECK(env["command"] == "bs");
    CHECK(env["result"]["b"] == "(s+1)(s+5/6)(s+7/6)");
    CHECK(env["result"]["minimal_exponent"] == "5/6");
    CHECK(env["result"]["lct"] == "5/6");
    CHECK(env.contains("timing_ms"));
}

TEST_CASE("jumping command") {
    RunResult r = run_cli({"jumping", "--a", "2,3", "--bound", "1", "--json"});
    CHECK(r.code == 0);
    json env = envelope_of(r);
    CHECK(env["result"]["jumping_numbers"] == json::array({"1/3", "1/2", "2/3", "1"}));
}

TEST_CASE("resolution-lct command") {
    const char* path = "cusp_resolution_test.json";
    {
        std::ofstream f(path);
        f << R"([{"a":1,"k":0},{"a":2,"k":1,"exceptional":true},)"
          << R"({"a":3,"k":2,"exceptional":true},{"a":6,"k":4,"exceptional":true}])";
    }
    RunResult r = run_cli({"resolution-lct", "--data", path, "--json"});
    std::remove(path);
    CHECK(r.code == 0);
    json env = envelope_of(r);
    CHECK(env["result"]["lct"] == "5/6");
    CHECK(env["result"]["min_exponent_lower_bound"] == "5/6");
}

TEST_CASE("verify-beq command accepts a hand certificate") {
    RunResult good = run_cli({"verify-beq", "--f", "x^2", "--b", "s^2 + 3/2*s + 1/2", "--P",
                              "1/4*dx^2", "--json"});
    CHECK(good.code == 0);
    CHECK(envelope_of(good)["result"]["verified"] == true);

    RunResult bad = run_cli({"verify-beq", "--f", "x^2", "--b", "s + 1", "--P", "1/4*dx^2",
                             "--json"});
    CHECK(bad.code == 0);
    CHECK(envelope_of(bad)["result"]["verified"] == false);
}

TEST_CASE("domain errors exit with code 1 and an error envelope") {
    RunResult r = run_cli({"bs", "--f", "x^2+y^3", "--weights", "1,1", "--json"});
    CHECK(r.code == 1);
    json env = envelope_of(r);
    CHECK(env["status"] == "error");
    CHECK(env["error"].get<std::string>().find("not w-homogeneous") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    RunResult r = run_cli({"definitely-not-a-command"});
    CHECK(r.code == 2);
}

TEST_CASE("json output is byte-stable across runs") {
    auto strip_timing = [](std::string text) {
        json env = json::parse(text);
        env.erase("timing_ms");
        return env.dump(2);
    };
    std::vector<std::string> args{"bs", "--f", "x^2+y^3", "--weights", "1/2,1/3", "--json"};
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(strip_timing(a.out) == strip_timing(b.out));

    std::vector<std::string> args2{"vcheck", "--model", "snc", "--a", "1,1", "--levels",
                                   "0:1", "--trunc-J", "2", "--trunc-D", "6", "--json"};
    RunResult c = run_cli(args2);
    RunResult d = run_cli(args2);
    CHECK(c.code == 0);
    CHECK(strip_timing(c.out) == strip_timing(d.out));
}

TEST_CASE("vcheck reports the axiom fields") {
    RunResult r = run_cli({"vcheck", "--model", "snc", "--a", "1,1", "--levels", "0:1",
                           "--trunc-J", "2", "--trunc-D", "6", "--json"});
    CHECK(r.code == 0);
    json env = envelope_of(r);
    CHECK(env["result"]["all_passed"] == true);
    for (const auto& level : env["result"]["levels"]) {
        CHECK(level.contains("alpha"));
        CHECK(level.contains("dim"));
        CHECK(level.contains("saturated"));
        CHECK(level["containments"].contains("mono"));
        CHECK(level["containments"].contains("t_up"));
        CHECK(level["containments"].contains("t_eq"));
        CHECK(level["containments"].contains("dt_down"));
        CHECK(level.contains("nilpotency_order"));
    }
}

TEST_CASE("tau-demo matches the module computation") {
    RunResult r = run_cli({"tau-demo", "--f", "x^2", "--p", "s", "--json"});
    CHECK(r.code == 0);
    json env = envelope_of(r);
    CHECK(env["result"]["result"] == "(-x^2)*dt*delta");
}

TEST_CASE("mult-ideal command") {
    RunResult r = run_cli({"mult-ideal", "--a", "2,3", "--lambda", "5/6", "--json"});
    CHECK(r.code == 0);
    CHECK(envelope_of(r)["result"]["generator"] == "x*y^2");
}

TEST_CASE("oracle-b command returns the verified minimal b") {
    RunResult r = run_cli({"oracle-b", "--f", "x^2", "--max-order", "2", "--max-sdeg", "2",
                           "--json"});
    CHECK(r.code == 0);
    json env = envelope_of(r);
    CHECK(env["result"]["b"] == "(s+1)(s+1/2)");
    CHECK(env["result"]["verified"] == true);
}

TEST_CASE("sigma and min-exp commands") {
    RunResult s = run_cli({"sigma", "--f", "x^3+y^4", "--weights", "1/3,1/4", "--json"});
    CHECK(s.code == 0);
    json senv = envelope_of(s);
    CHECK(senv["result"]["milnor_number"] == 6);
    CHECK(senv["result"]["sigma"] ==
          json::array({"0", "1/4", "1/3", "1/2", "7/12", "5/6"}));

    RunResult m = run_cli({"min-exp", "--f", "x^2+y^3", "--weights", "1/2,1/3", "--json"});
    CHECK(envelope_of(m)["result"]["minimal_exponent"] == "5/6");

    RunResult l = run_cli({"lct", "--f", "x^2+y^2+z^2", "--weights", "1,1,1", "--json"});
    CHECK(envelope_of(l)["result"]["lct"] == "1");
}

TEST_CASE("root-bounds command") {
    const char* path = "rb_test.json";
    {
        std::ofstream f(path);
        f << R"([{"a":2,"k":1,"exceptional":true},{"a":3,"k":2,"exceptional":true},)"
          << R"({"a":6,"k":4,"exceptional":true},{"a":1,"k":0}])";
    }
    RunResult r = run_cli({"root-bounds", "--data", path, "--which", "bf-roots", "--L", "7",
                           "--json"});
    RunResult b = run_cli({"root-bounds", "--data", path, "--which", "g-delta-bound", "--json"});
    std::remove(path);
    CHECK(r.code == 0);
    json cands = envelope_of(r)["result"]["candidates"];
    CHECK(std::find(cands.begin(), cands.end(), json("-5/6")) != cands.end());
    CHECK(std::find(cands.begin(), cands.end(), json("-7/6")) != cands.end());
    CHECK(envelope_of(b)["result"]["bound"] == "-5/6");
}

TEST_CASE("missing required flags are usage errors") {
    RunResult r = run_cli({"bs", "--f", "x^2+y^3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("the soft time budget aborts with an error envelope") {
    setenv("VFLAB_MAX_MS", "1", 1);
    RunResult r = run_cli({"vcheck", "--model", "qh", "--f", "x^2+y^3", "--weights", "1/2,1/3",
                           "--levels", "0:2", "--trunc-J", "3", "--trunc-D", "12", "--json"});
    unsetenv("VFLAB_MAX_MS");
    CHECK(r.code == 1);
    json env = envelope_of(r);
    CHECK(env["status"] == "error");
    CHECK(env["error"].get<std::string>().find("time budget") != std::string::npos);
}

TEST_CASE("text mode prints key-value lines") {
    RunResult r = run_cli({"bs", "--f", "x^2+y^3", "--weights", "1/2,1/3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("b: (s+1)(s+5/6)(s+7/6)") != std::string::npos);
    CHECK(r.out.find("lct: 5/6") != std::string::npos);
}
