#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rdex/report.hpp"

namespace {

// Exit codes are a stable scripting contract:
// 0 success, 2 config/parse, 3 I/O, 4 missing data, 5 bad reference.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitMissingData = 4;
constexpr int kExitBadReference = 5;

int resolve_threads(int threads_flag) {
    if (const char* env = std::getenv("RDEX_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw rdex::PlanError("RDEX_THREADS must be a positive integer");
        }
    }
    return std::max(1, threads_flag);
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const rdex::PlanError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const rdex::MissingDataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMissingData;
    } catch (const rdex::BadReferenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadReference;
    } catch (const rdex::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-budget DE benchmark harness and U-score evaluation stack"};
    app.require_subcommand(1);

    std::string plan_path;
    std::string output_dir;
    std::string reference;
    std::string function_id;
    double alpha = 0.05;
    int threads = 1;
    bool resume = false;
    int verbose = 0;

    auto* run = app.add_subcommand("run", "execute an experiment plan");
    run->add_option("--plan", plan_path, "plan file")->required();
    run->add_option("--out", output_dir, "output directory")->required();
    run->add_option("--threads", threads, "worker threads (env RDEX_THREADS overrides)");
    run->add_flag("--resume", resume, "skip runs already listed in the manifest");
    run->add_flag("-v,--verbose", verbose, "progress lines to stderr");

    auto* score = app.add_subcommand("score", "U-score ranking from recorded traces");
    score->add_option("--out", output_dir, "experiment output directory")->required();

    auto* compare = app.add_subcommand("compare", "pairwise and Friedman statistics");
    compare->add_option("--out", output_dir, "experiment output directory")->required();
    compare->add_option("--ref", reference, "reference algorithm")->required();
    compare->add_option("--alpha", alpha, "significance level in (0, 1)");

    auto* report = app.add_subcommand("report", "convergence plot data for one function");
    report->add_option("--out", output_dir, "experiment output directory")->required();
    report->add_option("--function", function_id, "function id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed()) {
        return run_guarded([&]() {
            const rdex::ExperimentPlan plan = rdex::parse_plan(plan_path);
            const int n_threads = resolve_threads(threads);
            (void)resume;  // execution is always idempotent; flag kept for scripts
            rdex::ProgressSink progress;
            if (verbose) {
                progress = [](const std::string& line) { std::cerr << line << '\n'; };
            }
            rdex::execute(plan, output_dir, n_threads, progress);
            return kExitOk;
        });
    }
    if (score->parsed()) {
        return run_guarded([&]() {
            const rdex::Dataset dataset = rdex::load_dataset(output_dir);
            const auto rows = rdex::score_command(dataset, output_dir);
            std::printf("rank\talgorithm\ttotal\tavg_per_problem\tspeed\taccuracy\n");
            for (const auto& row : rows) {
                std::printf("%d\t%s\t%.1f\t%.2f\t%.1f\t%.1f\n", row.rank,
                            row.algorithm.c_str(), row.total, row.avg_per_problem,
                            row.speed, row.accuracy);
            }
            return kExitOk;
        });
    }
    if (compare->parsed()) {
        return run_guarded([&]() {
            if (!(alpha > 0.0 && alpha < 1.0)) {
                throw rdex::PlanError("alpha must lie strictly inside (0, 1)");
            }
            const rdex::Dataset dataset = rdex::load_dataset(output_dir);
            const auto report_data =
                rdex::compare_command(dataset, reference, alpha, output_dir);
            std::printf("competitor\tmetric\tW/T/L\tholm W/T/L\tmedian_a12\n");
            for (const auto& row : report_data.pairwise) {
                std::printf("%s\t%s\t%d/%d/%d\t%d/%d/%d\t%.3f\n",
                            row.competitor.c_str(), row.metric.c_str(), row.wins,
                            row.ties, row.losses, row.holm_wins, row.holm_ties,
                            row.holm_losses, row.median_a12);
            }
            for (const auto& [metric, fr] : report_data.friedman_blocks) {
                std::printf("friedman %s: chi2=%.2f df=%d p=%.3g\n", metric.c_str(),
                            fr.chi2, fr.df, fr.p);
            }
            return kExitOk;
        });
    }
    return run_guarded([&]() {
        const rdex::Dataset dataset = rdex::load_dataset(output_dir);
        rdex::report_command(dataset, function_id, output_dir);
        return kExitOk;
    });
}
