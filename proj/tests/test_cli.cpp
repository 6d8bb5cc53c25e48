#include <doctest.h>

#include <fstream>
#include <string>

#include <json.hpp>

#include "test_support.hpp"
#include "torusflux/commands.hpp"
#include "torusflux/report.hpp"

using namespace torusflux;
using nlohmann::json;

namespace {

std::string write_map(const std::string& name, const std::string& body) {
    const std::string path = "cli_" + name + ".map";
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

json run_json(const std::vector<std::string>& args, int expect_exit = kExitOk) {
    const CliResult r = run_command(args);
    INFO("diagnostics: ", r.diagnostics);
    REQUIRE(r.exit_code == expect_exit);
    REQUIRE(!r.json.empty());
    return json::parse(r.json);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("flux report for a half translation") {
    const auto path = write_map("half", "order=right-to-left\ntranslate a=0.5 b=0\n");
    const json rep = run_json({"flux", path});
    CHECK(rep["schema"] == 1);
    CHECK(rep["command"] == "flux");
    CHECK(rep["results"]["reduced"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep["results"]["reduced"][1].get<double>() == doctest::Approx(0.0));
    CHECK(rep["results"]["exact"] == false);
}

TEST_CASE("flux report for the empty chain") {
    const auto path = write_map("empty", "order=right-to-left\n");
    const json rep = run_json({"flux", path});
    CHECK(rep["results"]["vx"].get<double>() == 0.0);
    CHECK(rep["results"]["vy"].get<double>() == 0.0);
    CHECK(rep["results"]["exact"] == true);
}

TEST_CASE("flux of a shear matches the 1-D oracle") {
    const auto path = write_map(
        "shear", "order=right-to-left\nhshear eps=0.02 band=0.1,0.45 inner=0.3 outer=0.9\n");
    const json rep = run_json({"flux", path});
    const double expected =
        0.02 * tfx_test::band_integral_oracle(Interval{0.1, 0.45}, BumpProfile{0.3, 0.9});
    CHECK(std::abs(rep["results"]["vx"].get<double>() - expected) < 1e-10);
}

TEST_CASE("action command") {
    SUBCASE("identity map has zero action") {
        const auto path = write_map("id", "order=right-to-left\n");
        const json rep = run_json({"action", path, "--disk", "0.5,0.5,0.2"});
        CHECK(rep["results"]["total"].get<double>() == 0.0);
    }
    SUBCASE("twist total matches the oracle; halving t halves it") {
        const auto path = write_map(
            "twist", "order=right-to-left\ndisktwist cx=0.5 cy=0.5 r=0.3 t=1.0\n");
        const json rep = run_json({"action", path, "--disk", "0.5,0.5,0.3"});
        const double total = rep["results"]["total"].get<double>();
        CHECK(std::abs(total - tfx_test::twist_action_oracle(1.0, 0.3, BumpProfile{})) < 1e-8);

        const auto path_h = write_map(
            "twist_h", "order=right-to-left\ndisktwist cx=0.5 cy=0.5 r=0.3 t=0.5\n");
        const json rep_h = run_json({"action", path_h, "--disk", "0.5,0.5,0.3"});
        CHECK(std::abs(rep_h["results"]["total"].get<double>() - 0.5 * total) < 1e-9);
    }
    SUBCASE("named disks resolve through @") {
        const auto path = write_map("named",
                                    "order=right-to-left\n"
                                    "disktwist cx=0.5 cy=0.5 r=0.3 t=1.0\n"
                                    "disk D cx=0.5 cy=0.5 r=0.3\n");
        const json rep = run_json({"action", path, "--disk", "@D"});
        CHECK(rep["results"]["total"].get<double>() > 0.0);
    }
    SUBCASE("unsupported maps exit 4") {
        const auto path = write_map("bad", "order=right-to-left\ntranslate a=0.3 b=0\n");
        const CliResult r = run_command({"action", path, "--disk", "0.5,0.5,0.2"});
        CHECK(r.exit_code == kExitNotDiskSupported);
        CHECK(r.json.empty());
    }
}

TEST_CASE("orbits command emits records and csv") {
    const auto path = write_map("period2", "order=right-to-left\ntranslate a=0.5 b=0\n");
    const CliResult r = run_command({"orbits", path, "--q", "2", "--seeds", "8"});
    REQUIRE(r.exit_code == kExitOk);
    const json rep = json::parse(r.json);
    CHECK(rep["results"]["count"].get<int>() == 32);
    CHECK(rep["results"]["orbits"][0]["z"][0].get<int>() == 1);
    // csv: header plus one row per record
    std::size_t lines = 0;
    for (char c : r.csv) lines += c == '\n';
    CHECK(lines == 33);
    CHECK(r.csv.rfind("x,y,period,z1,z2,residual\n", 0) == 0);
}

TEST_CASE("scan command on the trivial rational translation") {
    const auto path = write_map("third", "order=right-to-left\ntranslate a=0.33333333333333331 b=0\n");
    const json rep = run_json({"scan", path, "--disk", "0.5,0.5,0.05", "--seeds", "12"});
    CHECK(rep["results"]["status"] == "found");
    CHECK(rep["results"]["q"].get<int>() == 3);
    CHECK(rep["results"]["t_star"].get<double>() == 0.0);
    CHECK(rep["results"]["orbit"]["residual"].get<double>() < 1e-10);
    CHECK(rep["results"]["action_certificate"].get<double>() > 0.0);
}

TEST_CASE("rationalize command") {
    const auto path = write_map("flag", "order=right-to-left\ntranslate a=0.37 b=0.18\n");
    const json rep = run_json({"rationalize", path, "--qmax", "20", "--c0", "0.05"});
    CHECK(rep["results"]["q"].get<int>() == 11);
    CHECK(rep["results"]["p"][0].get<int>() == 4);
    CHECK(rep["results"]["p"][1].get<int>() == 2);
    CHECK(rep["residuals"]["q_flux_off_integer"].get<double>() < 1e-9);
    // the perturbed chain is itself a parseable document
    CHECK(rep["results"]["perturbed_map"].get<std::string>().rfind("order=right-to-left", 0) ==
          0);
}

TEST_CASE("the rationalized map round-trips through cmd_flux") {
    const auto path = write_map("flag2", "order=right-to-left\ntranslate a=0.37 b=0.18\n");
    const json rat = run_json({"rationalize", path, "--qmax", "20", "--c0", "0.05"});
    const auto pert = write_map("flag2_pert", rat["results"]["perturbed_map"].get<std::string>());
    const json flux = run_json({"flux", pert});
    const double q = rat["results"]["q"].get<double>();
    CHECK(std::abs(flux["results"]["reduced"][0].get<double>() -
                   rat["results"]["p"][0].get<double>() / q) < 1e-10);
    CHECK(std::abs(flux["results"]["reduced"][1].get<double>() -
                   rat["results"]["p"][1].get<double>() / q) < 1e-10);
}

TEST_CASE("rationalize failure exits 3") {
    const auto path = write_map("unreach", "order=right-to-left\ntranslate a=0.41379271 b=0.27182818\n");
    const CliResult r = run_command({"rationalize", path, "--qmax", "3", "--c0", "1e-7"});
    CHECK(r.exit_code == kExitNumeric);
}

TEST_CASE("verify passes on a healthy map and is byte-deterministic") {
    const auto path = write_map("healthy",
                                "order=right-to-left\n"
                                "translate a=0.37 b=0.18\n"
                                "disktwist cx=0.3 cy=0.6 r=0.2 t=0.8\n");
    const CliResult a = run_command({"verify", path, "--seed", "7"});
    REQUIRE(a.exit_code == kExitOk);
    const json rep = json::parse(a.json);
    CHECK(rep["results"]["all_pass"] == true);
    for (const auto& check : rep["results"]["checks"]) {
        INFO("check ", check["name"].get<std::string>());
        CHECK(check["pass"] == true);
    }
    const CliResult b = run_command({"verify", path, "--seed", "7"});
    CHECK(a.json == b.json);
    // a different seed still passes but draws different randoms
    const CliResult c = run_command({"verify", path, "--seed", "8"});
    CHECK(c.exit_code == kExitOk);
}

TEST_CASE("verify exercises the input split when a disk is named") {
    const auto path = write_map("diskful",
                                "order=right-to-left\n"
                                "disktwist cx=0.5 cy=0.5 r=0.18 t=0.6\n"
                                "disktwist cx=0.5 cy=0.5 r=0.15 t=-0.4\n"
                                "disk D cx=0.5 cy=0.5 r=0.22\n");
    const json rep = run_json({"verify", path, "--seed", "3"});
    bool found_split = false;
    for (const auto& check : rep["results"]["checks"]) {
        if (check["name"] == "action_additivity") {
            found_split = check.contains("note") &&
                          check["note"].get<std::string>().find("input map split") == 0;
        }
    }
    CHECK(found_split);
}

TEST_CASE("parse errors exit 2 with a located diagnostic and no JSON") {
    const auto path = write_map("broken", "order=right-to-left\ntranslate a=0.1 b=0.2 oops=1\n");
    const CliResult r = run_command({"flux", path});
    CHECK(r.exit_code == kExitParse);
    CHECK(r.json.empty());
    CHECK(r.diagnostics.find("line 2") != std::string::npos);
    CHECK(r.diagnostics.find("column 23") != std::string::npos);
}

TEST_CASE("missing files exit 3, usage errors exit 1") {
    CHECK(run_command({"flux", "no_such_file.map"}).exit_code == kExitNumeric);
    CHECK(run_command({"no-such-command"}).exit_code == kExitUsage);
    CHECK(run_command({}).exit_code == kExitUsage);
}

TEST_CASE("json reports format doubles with 17 significant digits") {
    CHECK(format_sig17(0.1) == "0.10000000000000001");
    CHECK(format_sig17(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_sig17(1.0) == "1");
    // the writer never reorders keys
    JsonWriter w;
    w.begin_object().field("b", 1).field("a", 2).end_object();
    CHECK(w.str() == "{\"b\":1,\"a\":2}");
}

}  // TEST_SUITE
