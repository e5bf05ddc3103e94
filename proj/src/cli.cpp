#include "rtadapt/cli.hpp"

#include <future>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rtadapt/edf_sim.hpp"
#include "rtadapt/elastic.hpp"
#include "rtadapt/period_adjust.hpp"
#include "rtadapt/scenario_io.hpp"

namespace rtadapt::cli {

namespace {

struct AdjustArgs {
    std::string input;
    double u_d = 1.0;
    std::string algorithm = "period-adjust";
    std::string output;
    std::string format = "csv";
    bool verbose = false;
};

struct RunArgs {
    std::string scenario;
    std::string outdir;
};

void report(const ScenarioError& e, std::ostream& err) {
    for (const auto& d : e.diagnostics()) err << to_string(d) << '\n';
}

void print_clamp_log(const PeriodAssignment& pa, std::ostream& err) {
    for (std::size_t pass = 1; pass <= pa.passes; ++pass) {
        err << "pass " << pass << ':';
        bool any = false;
        for (const auto& c : pa.clamp_log) {
            if (c.pass != pass) continue;
            err << ' ' << c.task << '=' << to_string(c.kind);
            any = true;
        }
        err << (any ? "\n" : " no clamps\n");
    }
    err << "verdict: " << to_string(pa.verdict) << '\n';
}

int cmd_adjust(const AdjustArgs& a, std::ostream& out, std::ostream& err) {
    const Scenario sc = load_scenario(a.input);
    const auto format = a.format == "json" ? AssignmentFormat::Json : AssignmentFormat::Csv;

    std::optional<std::ofstream> file;
    if (!a.output.empty()) file.emplace(open_sink(a.output));
    std::ostream& sink = file ? static_cast<std::ostream&>(*file) : out;

    Verdict verdict;
    if (*algorithm_from_string(a.algorithm) == Algorithm::PeriodAdjust) {
        const auto pa = period_adjust(sc.taskset, a.u_d);
        if (a.verbose) print_clamp_log(pa, err);
        write_assignment(sc.taskset, pa, sink, format);
        verdict = pa.verdict;
    } else {
        const auto er = task_compress(sc.taskset, a.u_d);
        if (a.verbose) err << "iterations: " << er.iterations << "\nverdict: " << to_string(er.verdict) << '\n';
        write_assignment(sc.taskset, er, sink, format);
        verdict = er.verdict;
    }
    sink.flush();
    if (!sink) throw SinkError("failed writing assignment");
    if (!verdict.is_feasible()) err << to_string(verdict) << '\n';
    return verdict.is_feasible() ? kExitOk : kExitInfeasible;
}

int cmd_simulate(const RunArgs& a, std::ostream&, std::ostream&) {
    const Scenario sc = load_scenario(a.scenario);
    write_trace_csv(simulate(sc), a.outdir);
    return kExitOk;
}

int cmd_compare(const RunArgs& a, std::ostream&, std::ostream&) {
    Scenario with_pa = load_scenario(a.scenario);
    Scenario with_tc = with_pa;
    with_pa.algorithm = Algorithm::PeriodAdjust;
    with_tc.algorithm = Algorithm::TaskCompress;

    auto tc_future = std::async(std::launch::async, [&] { return simulate(with_tc); });
    const SimTrace pa_trace = simulate(with_pa);
    const SimTrace tc_trace = tc_future.get();

    const std::filesystem::path dir = a.outdir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw SinkError("cannot create directory '" + dir.string() + "': " + ec.message());

    {
        auto os = open_sink(dir / "samples-period-adjust.csv");
        write_samples_csv(pa_trace.samples, os);
    }
    {
        auto os = open_sink(dir / "samples-task-compress.csv");
        write_samples_csv(tc_trace.samples, os);
    }
    auto os = open_sink(dir / "verdicts.csv");
    os << "time_ms,event,task,period_adjust,task_compress\n";
    // Both runs see the same event list, so adjustment records align by index.
    for (std::size_t i = 0; i < pa_trace.adjustments.size(); ++i) {
        const auto& p = pa_trace.adjustments[i];
        const auto& t = tc_trace.adjustments.at(i);
        const Event& e = with_pa.events[p.event_index];
        os << format_number(p.time_ms) << ',' << to_string(e.kind) << ',' << e.task << ','
           << to_string(p.verdict) << ',' << to_string(t.verdict) << '\n';
    }
    os.flush();
    if (!os) throw SinkError("failed writing verdicts.csv");
    return kExitOk;
}

int cmd_validate(const std::string& input, std::ostream& out, std::ostream& err) {
    try {
        const Scenario sc = load_scenario(input);
        out << "ok: " << sc.taskset.size() << " tasks, " << sc.events.size() << " events\n";
        return kExitOk;
    } catch (const ScenarioError& e) {
        report(e, err);
        return kExitError;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adaptive period assignment and EDF simulation for periodic task sets"};
    app.require_subcommand(1);

    AdjustArgs adjust_args;
    auto* adjust = app.add_subcommand("adjust", "Assign periods for the task set in a scenario file");
    adjust->add_option("--input", adjust_args.input, "Scenario file")->required()->check(CLI::ExistingFile);
    adjust->add_option("--ud", adjust_args.u_d, "Target utilization in (0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    adjust->add_option("--algorithm", adjust_args.algorithm)
        ->check(CLI::IsMember({"period-adjust", "task-compress"}));
    adjust->add_option("--output", adjust_args.output, "Output file (default: stdout)");
    adjust->add_option("--format", adjust_args.format)->check(CLI::IsMember({"csv", "json"}));
    adjust->add_flag("--verbose", adjust_args.verbose, "Print pass-by-pass clamp log");

    RunArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run a scenario and write its trace CSVs");
    sim->add_option("--scenario", sim_args.scenario)->required()->check(CLI::ExistingFile);
    sim->add_option("--outdir", sim_args.outdir)->required();

    RunArgs cmp_args;
    auto* cmp = app.add_subcommand("compare", "Run a scenario under both algorithms");
    cmp->add_option("--scenario", cmp_args.scenario)->required()->check(CLI::ExistingFile);
    cmp->add_option("--outdir", cmp_args.outdir)->required();

    std::string validate_input;
    auto* val = app.add_subcommand("validate", "Check a scenario file");
    val->add_option("--input", validate_input)->required()->check(CLI::ExistingFile);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*adjust) return cmd_adjust(adjust_args, out, err);
        if (*sim) return cmd_simulate(sim_args, out, err);
        if (*cmp) return cmd_compare(cmp_args, out, err);
        return cmd_validate(validate_input, out, err);
    } catch (const ScenarioError& e) {
        report(e, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

}  // namespace rtadapt::cli
