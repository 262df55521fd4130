#include "mdc/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace mdc;

TEST_CASE("config entries parse and validate") {
    SolverConfig c;
    apply_config_entry(c, "atomic_number", "33");
    CHECK(c.atomic_number == 33);
    apply_config_entry(c, "alpha_fs", "0.001");
    CHECK(c.alpha_fs == doctest::Approx(0.001));
    apply_config_entry(c, "disable_self_field", "true");
    CHECK(c.disable_self_field);
    apply_config_entry(c, "disable_self_field", "0");
    CHECK_FALSE(c.disable_self_field);
    CHECK_THROWS_AS(apply_config_entry(c, "nonsense", "1"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(c, "atomic_number", "abc"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(c, "disable_self_field", "maybe"), ConfigError);
}

TEST_CASE("config file round trip") {
    const char* path = "test_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n"
               "atomic_number = 20\n"
               "grid_points = 16   # trailing comment\n"
               "box_length = 24.5\n"
               "seed = 11\n"
               "disable_self_field = true\n";
    }
    SolverConfig c = load_config_file(path);
    CHECK(c.atomic_number == 20);
    CHECK(c.grid_points == 16);
    CHECK(c.box_length == doctest::Approx(24.5));
    CHECK(c.seed == 11);
    CHECK(c.disable_self_field);
    std::remove(path);
    CHECK_THROWS_AS(load_config_file("definitely_missing.cfg"), ConfigError);
}

TEST_CASE("report serialization carries the schema and is reproducible") {
    SolveReport r;
    r.converged = true;
    r.mu = 0.98765432101234;
    r.lambda_w = 0.98;
    r.lambda1_estimate = 0.98;
    r.upper_trace_mass = 0.9;
    r.diagnostics = {true, true, true, true};
    SolverConfig c;
    const std::string a = report_to_json(r, c);
    const std::string b = report_to_json(r, c);
    CHECK(a == b);
    for (const char* key :
         {"\"schema_version\"", "\"mu\"", "\"lambda_W\"", "\"Lambda1_estimate\"", "\"I_parts\"",
          "\"upper_trace_mass\"", "\"residual_EL\"", "\"residual_T_dual\"", "\"iterations\"",
          "\"diagnostics\"", "\"config_echo\""}) {
        CAPTURE(key);
        CHECK(a.find(key) != std::string::npos);
    }
    // full double precision survives the round trip
    CHECK(a.find("0.98765432101234") != std::string::npos);

    std::ostringstream hist;
    r.history.push_back({0, 1.5, 1e-3, 4});
    r.history.push_back({1, 1.2, 1e-5, 2});
    write_history_csv(hist, r);
    CHECK(hist.str().find("outer_iter,F,residual_T_dual,inner_iterations") == 0);
}
