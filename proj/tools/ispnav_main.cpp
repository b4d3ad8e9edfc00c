#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ispnav/bench.hpp"
#include "ispnav/scenario.hpp"
#include "ispnav/sim.hpp"
#include "ispnav/trace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ispnav;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ISP_NAV_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("ISP_NAV_SEED is not a valid integer");
        }
    }
    return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& out_path,
            const std::string& dump_dir, int dump_every,
            const std::optional<std::uint64_t>& seed_flag) {
    const Scenario scenario = load_scenario(scenario_path);
    const std::uint64_t seed = resolve_seed(seed_flag);

    FieldDumpHook hook;
    if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        hook = [&dump_dir](int step, const std::string& agent, const IspField& field) {
            const fs::path path =
                fs::path(dump_dir) / ("field_" + std::to_string(step) + "_" + agent + ".txt");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + path.string());
            out << dump_field(field);
        };
    }

    const RunResult result = run(scenario, seed, hook, dump_every);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_trace_header(out);
    for (const TraceRecord& rec : result.trace) {
        write_trace_row(out, rec);
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + out_path);

    return result.collided ? 2 : 0;
}

int cmd_bench(int width, int height, const std::vector<int>& objects, int reps,
              const std::optional<std::uint64_t>& seed_flag) {
    BenchOptions options;
    options.width = width;
    options.height = height;
    if (!objects.empty()) options.object_counts = objects;
    options.repetitions = reps;
    options.seed = resolve_seed(seed_flag);

    const std::vector<BenchRow> rows = run_bench(options);
    for (const BenchRow& row : rows) {
        std::cout << "# compose_many N=" << row.objects << " total_ns=" << row.compose_median_ns
                  << "\n";
    }
    std::cout << "N,median_ns,field_bytes\n";
    for (const BenchRow& row : rows) {
        std::cout << row.objects << ',' << row.safe_controls_median_ns << ',' << row.field_bytes
                  << "\n";
    }
    return 0;
}

// Renders the first controlled agent's field for a scenario without running
// the full horizon: one warm-up transition so time-to-contact is defined,
// then the step-1 sensing pass is dumped.
int cmd_dump_field(const std::string& scenario_path, const std::string& out_path,
                   const std::optional<std::uint64_t>& seed_flag) {
    Scenario scenario = load_scenario(scenario_path);
    scenario.config.steps = 2;
    const std::uint64_t seed = resolve_seed(seed_flag);

    std::optional<std::string> dumped;
    const FieldDumpHook hook = [&dumped](int step, const std::string&, const IspField& field) {
        if (step == 1) dumped = dump_field(field);
    };
    (void)run(scenario, seed, hook, 1);
    if (!dumped) {
        throw std::runtime_error("scenario has no controlled agent to sense with");
    }

    if (out_path.empty() || out_path == "-") {
        std::cout << *dumped;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << *dumped;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"image-space potential field navigation tools"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::string dump_dir;
    int dump_every = 1;
    std::optional<std::uint64_t> seed;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and write its trace");
    run_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    run_cmd->add_option("--out", out_path, "trace CSV output path")->required();
    run_cmd->add_option("--dump-dir", dump_dir, "directory for per-step field dumps");
    run_cmd->add_option("--dump-every", dump_every, "dump cadence in steps")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "noise seed (overrides ISP_NAV_SEED)");

    int width = 640;
    int height = 480;
    std::vector<int> objects;
    int reps = 101;

    CLI::App* bench_cmd =
        app.add_subcommand("bench", "time safe-control extraction across object counts");
    bench_cmd->add_option("--width", width, "field width")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--height", height, "field height")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--objects", objects, "object counts, comma separated")
        ->delimiter(',');
    bench_cmd->add_option("--reps", reps, "repetitions per count")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", seed, "placement seed (overrides ISP_NAV_SEED)");

    CLI::App* dump_cmd = app.add_subcommand("dump-field", "render one scenario step's field");
    dump_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    dump_cmd->add_option("--out", out_path, "output path (default stdout)");
    dump_cmd->add_option("--seed", seed, "noise seed (overrides ISP_NAV_SEED)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(scenario_path, out_path, dump_dir, dump_every, seed);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(width, height, objects, reps, seed);
        }
        return cmd_dump_field(scenario_path, out_path, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
