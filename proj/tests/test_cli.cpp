#include "support.hpp"

#include "sniep/cli.hpp"
#include "sniep/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sniep;
using namespace sniep::testing;
using io::Json;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const Json& doc) {
    auto dir = std::filesystem::temp_directory_path() / "sniep_cli_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / name).string();
    std::ofstream(path) << doc.dump();
    return path;
}

Json golden_spec_json() {
    return {{"n", 5},
            {"x_sq", {"1/4", "1/4", "1/8", "3/16", "3/16"}},
            {"partitions",
             {{{1, 2, 3, 4, 5}},
              {{1, 2}, {3, 4, 5}},
              {{1, 2}, {3}, {4, 5}},
              {{1, 2}, {3}, {4}, {5}},
              {{1}, {2}, {3}, {4}, {5}}}}};
}

}  // namespace

TEST_CASE("check sp and s1") {
    auto r = run({"check", "sp", "--spectrum=7,5,-2,-4,-6", "--max-p", "2"});
    CHECK(r.code == kMember);
    auto j = r.json();
    CHECK(j["level"] == 2);
    auto cert = io::soto_from(j["certificate"]);
    CHECK(validate_soto(cert));
    CHECK(cert.parts[0].list == std::vector<Rational>{7, -6});

    CHECK(run({"check", "s1", "--spectrum=1,-1"}).code == kMember);
    auto s1 = run({"check", "s1", "--spectrum=7,5,-2,-4,-6"});
    CHECK(s1.code == kNonMember);
    CHECK(s1.json()["slack"] == "-1");

    // capped below n - 1: a miss is not a verdict
    CHECK(run({"check", "sp", "--spectrum=7,5,-2,-4,-6", "--max-p", "1"}).code == kInconclusive);
    CHECK(run({"check", "sp", "--spectrum=1,1,1,-5"}).code == kNonMember);
}

TEST_CASE("check h") {
    auto r = run({"check", "h", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0"});
    CHECK(r.code == kMember);
    auto h = io::hcert_from(r.json()["certificate"]);
    CHECK(validate_certificate(h));
    CHECK(h.spectrum() == golden_sigma());

    CHECK(run({"check", "h", "--spectrum", "1,1", "--diag", "2,0"}).code == kNonMember);
    CHECK(run({"check", "h", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0", "--budget", "1"}).code ==
          kInconclusive);

    auto nodiag = run({"check", "h", "--spectrum=7,5,-2,-4,-6"});
    CHECK(nodiag.code == kMember);
    CHECK(validate_certificate(io::hcert_from(nodiag.json()["certificate"])));
}

TEST_CASE("check fiedler and c") {
    CHECK(run({"check", "fiedler", "--spectrum", "2,0", "--diag", "1,1"}).code == kMember);
    CHECK(run({"check", "fiedler", "--spectrum", "1,1", "--diag", "2,0"}).code == kNonMember);
    CHECK(run({"check", "fiedler", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0"}).code == kInconclusive);
    CHECK(run({"check", "fiedler", "--spectrum", "2,0"}).code == kInputError);

    auto c = run({"check", "c", "--spectrum=7,5,-2,-4,-6"});
    CHECK(c.code == kMember);
    auto t = io::trace_from(c.json()["trace"]);
    REQUIRE(validate_trace(t).ok());
    CHECK(*validate_trace(t).final_list == golden_sigma());
}

TEST_CASE("input errors") {
    CHECK(run({"realize", "h", "--spectrum", "1,2"}).code == kInputError);
    CHECK(run({"check", "h", "--spectrum", "1,x"}).code == kInputError);
    CHECK(run({"check", "nonsense", "--spectrum", "1"}).code == kInputError);
    CHECK(run({"check", "s1", "--spectrum", "1", "--tol", "0"}).code == kInputError);
    CHECK(run({"check", "s1", "--spectrum", "1", "--budget", "0"}).code == kInputError);
    CHECK(run({"check", "s1", "--spectrum", "1", "--input", "/nonexistent.json"}).code == kInputError);
    CHECK(run({}).code == kInputError);

    auto bad = std::filesystem::temp_directory_path() / "sniep_cli_bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run({"check", "s1", "--input", bad.string()}).code == kInputError);
}

TEST_CASE("realize") {
    auto r = run({"realize", "h", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0"});
    CHECK(r.code == kMember);
    auto j = r.json();
    CHECK(j["report"]["pass"] == true);
    auto rows = io::matrix_from(j["matrix"]);
    CHECK(rows.size() == 5);
    CHECK(verify_realization(rows, {7, 5, -2, -4, -6}, std::vector<double>(5, 0.0)).pass());

    auto exact = run({"realize", "h", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0", "--exact-only"}).json();
    CHECK_FALSE(exact.contains("matrix"));

    Json real{{"soules", golden_spec_json()}, {"spectrum", {7, 5, -2, -4, -6}}};
    auto s = run({"realize", "soules", "--input", write_temp("golden.json", real)});
    CHECK(s.code == kMember);
    auto m = io::matrix_from(s.json()["matrix"]);
    CHECK(max_abs_diff(m, golden_soules_matrix()) <= 1e-10);
    CHECK(s.json()["diag"] == Json({"0", "0", "0", "0", "0"}));
}

TEST_CASE("verify") {
    Json mat{{"n", 2}, {"rows", {{0, 6}, {6, 0}}}};
    auto path = write_temp("m.json", mat);
    CHECK(run({"verify", "--matrix", path, "--spectrum=6,-6", "--diag", "0,0"}).code == kMember);
    CHECK(run({"verify", "--matrix", path, "--spectrum=6,-5"}).code == kNonMember);
    CHECK(run({"verify", "--matrix", path, "--spectrum=6,-6,0"}).code == kInputError);
}

TEST_CASE("convert") {
    auto tpath = write_temp("trace.json", io::to_json(golden_trace()));
    auto ch = run({"convert", "c", "h", "--input", tpath});
    CHECK(ch.code == kMember);
    auto h = io::hcert_from(ch.json());
    CHECK(validate_certificate(h));
    CHECK(h.spectrum() == golden_sigma());

    auto hpath = write_temp("h.json", io::to_json(golden_cert()));
    auto hs = run({"convert", "h", "sp", "--input", hpath});
    CHECK(hs.code == kMember);
    auto sp = io::soto_from(hs.json());
    CHECK(validate_soto(sp));
    CHECK(sp.level == 2);

    auto l2 = write_temp("leaf.json", io::to_json(HCertificate::leaf2(7, 5, 6, 6)));
    auto so = run({"convert", "h", "soules", "--input", l2});
    CHECK(so.code == kMember);
    auto real = io::realization_from(so.json());
    CHECK(validate_realization(real));
    CHECK(real.spec.seq.n == 2);

    // routes through intermediate kinds; outputs feed back in
    auto cs = run({"convert", "c", "soules", "--input", tpath});
    CHECK(cs.code == kMember);
    auto back = run({"convert", "soules", "sp", "--input", write_temp("real.json", cs.json())});
    CHECK(back.code == kMember);
    CHECK(validate_soto(io::soto_from(back.json())));

    auto sc = run({"convert", "sp", "c", "--input", write_temp("sp.json", hs.json())});
    CHECK(sc.code == kMember);
    CHECK(validate_trace(io::trace_from(sc.json())).ok());

    // reducible input comes back in blocks
    auto red = write_temp("red.json", io::to_json(HCertificate::leaf2(1, 1, 1, 1)));
    auto blocks = run({"convert", "h", "soules", "--input", red});
    CHECK(blocks.code == kMember);
    CHECK(blocks.json()["blocks"].size() == 2);

    auto bad = write_temp("bad.json", io::to_json(HCertificate::leaf2(1, 1, 2, 0)));
    CHECK(run({"convert", "h", "sp", "--input", bad}).code == kInputError);
}

TEST_CASE("batch keeps going") {
    Json jobs = Json::array();
    jobs.push_back({"check", "s1", "--spectrum=1,-1"});
    jobs.push_back({{"args", {"check", "s1", "--spectrum", "1,2"}}});
    jobs.push_back({"check", "sp", "--spectrum=7,5,-2,-4,-6", "--max-p", "2"});
    jobs.push_back(42);
    auto r = run({"batch", "--input", write_temp("jobs.json", jobs)});
    CHECK(r.code == 0);
    auto j = r.json()["jobs"];
    REQUIRE(j.size() == 4);
    CHECK(j[0]["exit"] == kMember);
    CHECK(j[1]["exit"] == kInputError);
    CHECK(j[2]["exit"] == kMember);
    CHECK(j[3]["exit"] == kInputError);
}

TEST_CASE("output file and environment budget") {
    auto dir = std::filesystem::temp_directory_path() / "sniep_cli_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "out.json").string();
    auto r = run({"check", "s1", "--spectrum=1,-1", "--output", path});
    CHECK(r.code == kMember);
    CHECK(r.out.empty());
    std::ifstream f(path);
    CHECK(Json::parse(f)["member"] == true);

    setenv("SNIEP_BUDGET", "1", 1);
    CHECK(run({"check", "h", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0"}).code == kInconclusive);
    setenv("SNIEP_BUDGET", "junk", 1);
    CHECK(run({"check", "h", "--spectrum=7,5,-2,-4,-6", "--diag", "0,0,0,0,0"}).code == kInputError);
    unsetenv("SNIEP_BUDGET");
}
