#include <sstream>

#include "doctest.h"
#include "rtadapt/cli.hpp"
#include "support.hpp"

using namespace rtadapt;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "rtadapt");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return testing::scenario_path(name).string(); }
std::string fixture(const std::string& name) { return testing::fixture_path(name).string(); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// completed_count of `task` at `time` from a samples CSV.
std::uint64_t completed(const std::string& csv, const std::string& time, const std::string& task) {
    const std::string prefix = time + "," + task + ",";
    for (const auto& l : lines(csv))
        if (l.rfind(prefix, 0) == 0) return std::stoull(l.substr(prefix.size()));
    FAIL("missing sample " << prefix);
    return 0;
}

}  // namespace

TEST_CASE("adjust on table1") {
    const auto r = run({"adjust", "--input", scenario("table1.json")});
    CHECK(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "task,period_ms,utilization");
    CHECK(rows[1].rfind("tau1,50,", 0) == 0);
    CHECK(rows[2].rfind("tau2,79.881657,", 0) == 0);
    CHECK(rows[5].rfind("tau5,150,", 0) == 0);
}

TEST_CASE("adjust --verbose prints the clamp log") {
    const auto r = run({"adjust", "--input", scenario("table1.json"), "--verbose"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.err.find("pass 1: tau5=ToTmaxMigrated") != std::string::npos);
    CHECK(r.err.find("pass 2: no clamps") != std::string::npos);
}

TEST_CASE("adjust reports infeasibility with exit code 2") {
    auto r = run({"adjust", "--input", scenario("table2.json"), "--algorithm", "task-compress"});
    CHECK(r.code == cli::kExitInfeasible);
    CHECK(r.out == "Infeasible,UnboundedTaskPresent\n");

    r = run({"adjust", "--input", scenario("table1.json"), "--ud", "0.3", "--format", "json"});
    CHECK(r.code == cli::kExitInfeasible);
    CHECK(r.out.find("\"FixedOverload\"") != std::string::npos);
}

TEST_CASE("adjust --output writes the file") {
    const auto dir = testing::fresh_dir("cli-out");
    const auto file = (dir / "periods.json").string();
    const auto r = run({"adjust", "--input", scenario("table4.json"), "--format", "json", "--output", file});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    CHECK(testing::read_file(file).find("\"verdict\": \"Feasible\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("validate") {
    auto r = run({"validate", "--input", scenario("table1.json")});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "ok: 5 tasks, 2 events\n");

    r = run({"validate", "--input", fixture("weight_sum_095.json")});
    CHECK(r.code == cli::kExitError);
    CHECK(lines(r.err).size() == 1);
    CHECK(r.err.find("soft weights sum ≠ 1") != std::string::npos);

    r = run({"validate", "--input", fixture("tmin_gt_tmax.json")});
    CHECK(r.code == cli::kExitError);
    CHECK(r.err.find("tau3") != std::string::npos);
}

TEST_CASE("simulate table3 writes the trace") {
    const auto dir = testing::fresh_dir("cli-sim");
    const auto r = run({"simulate", "--scenario", scenario("table3.json"), "--outdir", dir.string()});
    CHECK(r.code == cli::kExitOk);
    const auto adj = testing::read_file(dir / "adjustments.csv");
    CHECK(adj.find("10000,Feasible,") != std::string::npos);
    CHECK(adj.find("20000,Feasible,") != std::string::npos);
    CHECK(lines(testing::read_file(dir / "misses.csv")).size() == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("compare table2 splits the verdicts") {
    const auto dir = testing::fresh_dir("cli-cmp");
    const auto r = run({"compare", "--scenario", scenario("table2.json"), "--outdir", dir.string()});
    CHECK(r.code == cli::kExitOk);
    const auto rows = lines(testing::read_file(dir / "verdicts.csv"));
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0] == "time_ms,event,task,period_adjust,task_compress");
    CHECK(rows[1].find("Feasible,Infeasible(UnboundedTaskPresent)") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("compare without events gives identical traces") {
    const auto dir = testing::fresh_dir("cli-same");
    const auto r = run({"compare", "--scenario", fixture("table1_static.json"), "--outdir", dir.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(testing::read_file(dir / "samples-period-adjust.csv") ==
          testing::read_file(dir / "samples-task-compress.csv"));
    CHECK(lines(testing::read_file(dir / "verdicts.csv")).size() == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("compare table5: tau1 rate roughly triples in both traces") {
    const auto dir = testing::fresh_dir("cli-t5");
    REQUIRE(run({"compare", "--scenario", scenario("table5.json"), "--outdir", dir.string()}).code == 0);
    for (const char* file : {"samples-period-adjust.csv", "samples-task-compress.csv"}) {
        const auto csv = testing::read_file(dir / file);
        const double before = static_cast<double>(completed(csv, "10000", "tau1") - completed(csv, "0", "tau1"));
        const double during = static_cast<double>(completed(csv, "20000", "tau1") - completed(csv, "10000", "tau1"));
        CHECK(during / before == doctest::Approx(3.03).epsilon(0.05));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({"adjust", "--input", scenario("table1.json"), "--bogus"}).code == cli::kExitError);
    CHECK(run({}).code == cli::kExitError);
    CHECK(run({"adjust", "--input", scenario("table1.json"), "--ud", "1.5"}).code == cli::kExitError);
    CHECK(run({"adjust", "--input", "/nonexistent.json"}).code == cli::kExitError);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("unwritable output directory exits 1") {
    const auto dir = testing::fresh_dir("cli-ro");
    const auto blocker = dir / "file";
    std::ofstream(blocker) << "x";
    const auto r = run({"simulate", "--scenario", scenario("table1.json"), "--outdir", (blocker / "sub").string()});
    CHECK(r.code == cli::kExitError);
    CHECK(!r.err.empty());
    std::filesystem::remove_all(dir);
}
