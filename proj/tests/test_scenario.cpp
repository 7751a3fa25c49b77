#include <doctest.h>

#include <fstream>

#include "pindex/scenario.hpp"

using namespace pindex;

namespace {

Scenario make(const std::string& text) { return Scenario::parse_text(text); }

const char* kEkeland = R"(
[scenario]
kind = ekeland
method = both
[symmetry]
k = 4
theta_num = 1 1
[path]
family = isotropic
n = 2
a = 6.283185307179586
s = 1.0
[numeric]
m = 64
seed = 7
)";

}  // namespace

TEST_CASE("scenario parsing essentials") {
    const Scenario sc = make(kEkeland);
    CHECK(sc.kind() == "ekeland");
    CHECK(sc.get_long("symmetry", "k") == 4);
    CHECK(sc.get_longs("symmetry", "theta_num") == std::vector<long>{1, 1});
    CHECK(sc.get_double("path", "a") == doctest::Approx(kTwoPi));
    CHECK(sc.get_string("missing", "key", "dflt") == "dflt");
    CHECK_THROWS_AS(sc.get_string("missing", "key"), ValidationError);
    CHECK_THROWS_AS(make("[scenario]\nnokind = 1\n"), ValidationError);
    CHECK_THROWS_AS(make("key = value\n"), ValidationError);  // key before any section
}

TEST_CASE("ekeland scenario runs both methods and agrees") {
    const RunResult r = run_scenario(make(kEkeland));
    CHECK(r.exit_code == 0);
    CHECK(r.report["integers"]["index_crossing"] == 4);
    CHECK(r.report["integers"]["index_galerkin"] == 4);
    CHECK(r.report["integers"]["pass"] == 1);
    CHECK(validate_report(r.report, builtin_report_schema()).empty());
}

TEST_CASE("malformed angles exit with the validation code") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = ekeland
[symmetry]
k = 4
theta_num = 0 1
[path]
family = isotropic
n = 2
a = 1.0
)"));
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("ker(P - I)") != std::string::npos);
}

TEST_CASE("unknown family and unknown kind are validation errors") {
    CHECK(run_scenario(make(R"(
[scenario]
kind = ekeland
[symmetry]
k = 4
theta_num = 1
[path]
family = nonsense
)")).exit_code == 2);
    CHECK(run_scenario(make("[scenario]\nkind = wat\n")).exit_code == 2);
}

TEST_CASE("maslov scenario with exact omega") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = maslov
[symmetry]
k = 4
theta_num = 1 1
[path]
family = isotropic
n = 2
a = 6.283185307179586
[omega]
num = 1
den = 4
)"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["integers"]["index"] == 4);
    CHECK(r.report["integers"]["nu_base"] == 2);
    CHECK(validate_report(r.report, builtin_report_schema()).empty());
}

TEST_CASE("splitting scenario cross-checks the catalog") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = splitting
[symmetry]
k = 4
theta_num = 1 1
[path]
family = blockdiag
speeds = 7.853981633974483 5.497787143782138
[omega]
num = 0
den = 1
)"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["integers"]["plus"] == 1);
    CHECK(r.report["integers"]["minus"] == 1);
    CHECK(r.report["integers"]["pass"] == 1);
}

TEST_CASE("thm36 sweep scenario") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = thm36
with_galerkin = 0
[symmetry]
k = 4
theta_num = 1 1
[path]
family = isotropic
n = 2
a_list = 1.0 6.283185307179586 9.42477796076938
)"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["integers"]["pass"] == 1);
    CHECK(r.report["sweep"].size() == 3);
}

TEST_CASE("audit12 synthetic scenario detects the contradiction") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = audit12
source = synthetic
[symmetry]
k = 12
theta_num = 3 4
[monodromy]
n1_b = 1
d_lambda = 2
[checks]
expected = contradiction
)"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["integers"]["contradiction"] == 1);
    CHECK(r.report["integers"]["margin"] == 1);
}

TEST_CASE("find scenario at small m produces an elliptic record") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = find
[symmetry]
k = 4
theta_num = 1 1
[surface]
radii = 1.0 1.3
alpha = 1.5
[minimize]
m = 256
restarts = 4
[extend]
k_periods = 4
[checks]
expect_classification = elliptic
[numeric]
seed = 11
)"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["integers"]["e_height"] == 4);
    CHECK(r.report["integers"]["i_pe"] == 0);
    CHECK(validate_report(r.report, builtin_report_schema()).empty());
}

TEST_CASE("numerical failures exit with code 3") {
    const RunResult r = run_scenario(make(R"(
[scenario]
kind = ekeland
method = crossing
[symmetry]
k = 4
theta_num = 1
[path]
family = isotropic
n = 1
a = 2000.0
[numeric]
steps = 16
[tolerances]
eps_path = 1e-14
)"));
    CHECK(r.exit_code == 3);
    CHECK(r.message.find("defect target") != std::string::npos);
}

TEST_CASE("seed override is echoed in the report") {
    RunOverrides ov;
    ov.seed = 999;
    const RunResult r = run_scenario(make(kEkeland), ov);
    CHECK(r.report["seed"] == 999);
}

TEST_CASE("committed schema file matches the builtin") {
    std::ifstream in("docs/report-schema.json");
    if (!in.is_open()) in.open("../docs/report-schema.json");
    REQUIRE(in.is_open());
    Json file_schema;
    in >> file_schema;
    CHECK(file_schema == builtin_report_schema());
}

TEST_CASE("schema validation catches missing fields") {
    Json bad{{"kind", "ekeland"}, {"seed", 1}};
    CHECK(!validate_report(bad, builtin_report_schema()).empty());
}

TEST_CASE("paths serialize with grid, matrices and defect metadata") {
    const CoefficientPath a = CoefficientPath::isotropic(1, 1.0, 1.0);
    const SymplecticPath g = integrate_fundamental(a, 16);
    const Json j = to_json(g);
    CHECK(j["times"].size() == g.times().size());
    CHECK(j["values"].size() == g.times().size());
    CHECK(j["values"][0].size() == 2);     // row-major rows
    CHECK(j["values"][0][0].size() == 2);  // row entries
    CHECK(j["max_defect"].get<double>() == g.max_defect());
    CHECK(j.contains("interpolation"));
}
