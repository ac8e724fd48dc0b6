#include "corosim/engine/engine.hpp"
#include "corosim/io/metrics.hpp"
#include "corosim/io/scenario.hpp"
#include "corosim/numlab/equivalence.hpp"
#include "corosim/numlab/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace corosim;

int run_simulate(const std::string& scenario_path, const std::string& policy_override,
                 std::int64_t seed_override, const std::string& log_path,
                 const std::string& out_path, bool normalize) {
    Scenario scenario = load_scenario_file(scenario_path);
    if (!policy_override.empty()) scenario.policy.name = policy_override;
    if (seed_override >= 0) {
        // Regenerate the workload under the new seed.
        std::ifstream in(scenario_path);
        nlohmann::json config;
        in >> config;
        config["seed"] = static_cast<std::uint64_t>(seed_override);
        scenario = scenario_from_json(
            config, std::filesystem::path(scenario_path).parent_path().string());
        if (!policy_override.empty()) scenario.policy.name = policy_override;
    }
    if (!log_path.empty()) scenario.config.capture_log = true;

    SimulationReport report = SimEngine::simulate(scenario);
    MetricsReport metrics = normalize ? compute_metrics_normalized(scenario, report)
                                      : compute_metrics(report);

    if (!log_path.empty()) {
        std::ofstream log(log_path);
        for (const std::string& line : report.event_log) log << line << '\n';
    }
    nlohmann::ordered_json out = metrics_to_json(metrics);
    out["policy"] = scenario.policy.name;
    out["seed"] = scenario.seed;
    if (out_path.empty()) {
        std::cout << out.dump(2) << std::endl;
    } else {
        std::ofstream f(out_path);
        f << out.dump(2) << '\n';
        std::cout << "wrote " << out_path << std::endl;
    }
    return 0;
}

int run_divergence_sweep(const std::string& format_name, std::int64_t n,
                         const std::string& splits_csv, int seeds, const std::string& out_path,
                         bool tree) {
    FloatFormatKind kind = format_from_name(format_name);
    FloatFormat format = FloatFormat::of(kind);

    std::vector<std::int64_t> splits;
    std::stringstream ss(splits_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) splits.push_back(std::stoll(item));
    }
    if (splits.empty()) throw SimError(Errc::ConfigError, "--splits needs at least one value");

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << "format,n,g_i,g_j,seed,delta\n";
    ReductionPlan baseline = ReductionPlan::balanced(n, 1);
    baseline.tree_combine = tree;
    for (int seed = 0; seed < seeds; ++seed) {
        std::vector<FloatValue> values =
            seeded_values(static_cast<std::uint64_t>(seed), n, kind);
        FloatValue ref = reduce_with_plan(values, format, baseline);
        for (std::int64_t g : splits) {
            ReductionPlan plan = ReductionPlan::balanced(n, g);
            plan.tree_combine = tree;
            FloatValue got = reduce_with_plan(values, format, plan);
            Rational delta = ref.is_finite() && got.is_finite()
                                 ? abs(Rational(ref.value - got.value))
                                 : Rational(0);
            *out << format_name << ',' << n << ",1," << g << ',' << seed << ','
                 << to_decimal_string(delta, 40) << '\n';
        }
    }
    if (!out_path.empty()) std::cout << "wrote " << out_path << std::endl;
    return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b,
                const std::string& out_path) {
    Scenario a = load_scenario_file(path_a);
    Scenario b = load_scenario_file(path_b);
    SimulationReport ra = SimEngine::simulate(a);
    SimulationReport rb = SimEngine::simulate(b);
    MetricsReport ma = compute_metrics_normalized(a, ra);
    MetricsReport mb = compute_metrics_normalized(b, rb);

    nlohmann::ordered_json out;
    out["a"] = metrics_to_json(ma);
    out["a"]["scenario"] = path_a;
    out["a"]["policy"] = a.policy.name;
    out["b"] = metrics_to_json(mb);
    out["b"]["scenario"] = path_b;
    out["b"]["policy"] = b.policy.name;
    if (out_path.empty()) {
        std::cout << out.dump(2) << std::endl;
    } else {
        std::ofstream f(out_path);
        f << out.dump(2) << '\n';
        std::cout << "wrote " << out_path << std::endl;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GPU-coroutine scheduling simulator and numerical determinism lab"};
    app.require_subcommand(1);

    std::string scenario_path, policy_override, log_path, out_path;
    std::int64_t seed_override = -1;
    bool normalize = false;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario and report metrics");
    simulate->add_option("scenario", scenario_path, "scenario config (JSON)")->required();
    simulate->add_option("--policy", policy_override, "override the scenario's policy");
    simulate->add_option("--seed", seed_override, "override the scenario's seed");
    simulate->add_option("--log", log_path, "write the event log (JSON lines) here");
    simulate->add_option("--out", out_path, "write the metrics JSON here");
    simulate->add_flag("--normalize", normalize,
                       "also run per-job exclusive baselines for normalized throughput");

    std::string format_name = "fp16", splits_csv = "1,2,4,8,16,32,64", sweep_out;
    std::int64_t sweep_n = 4096;
    int sweep_seeds = 100;
    bool tree = false;
    auto* sweep = app.add_subcommand(
        "divergence-sweep", "Sweep reduction divergence across grid splits (CSV output)");
    sweep->add_option("--format", format_name, "fp16, bf16, or fp32");
    sweep->add_option("--n", sweep_n, "elements per summation");
    sweep->add_option("--splits", splits_csv, "comma-separated grid split counts");
    sweep->add_option("--seeds", sweep_seeds, "number of random input vectors");
    sweep->add_option("--out", sweep_out, "CSV destination (default stdout)");
    sweep->add_flag("--tree", tree, "combine chunk partials as a balanced tree");

    std::string cmp_a, cmp_b, cmp_out;
    auto* compare = app.add_subcommand("compare", "Run two scenarios and pair their metrics");
    compare->add_option("a", cmp_a, "first scenario config")->required();
    compare->add_option("b", cmp_b, "second scenario config")->required();
    compare->add_option("--out", cmp_out, "write the paired report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(scenario_path, policy_override, seed_override, log_path,
                                out_path, normalize);
        }
        if (sweep->parsed()) {
            return run_divergence_sweep(format_name, sweep_n, splits_csv, sweep_seeds, sweep_out,
                                        tree);
        }
        if (compare->parsed()) return run_compare(cmp_a, cmp_b, cmp_out);
    } catch (const corosim::SimError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return e.code() == corosim::Errc::ConfigError || e.code() == corosim::Errc::ParseError
                   ? 2
                   : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
