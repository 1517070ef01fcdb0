#include "rdex/report.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>

#include "rdex/text_io.hpp"
#include "rdex/trace.hpp"

namespace fs = std::filesystem;

namespace rdex {

namespace {

// Every report file states the evaluation conventions up front.
constexpr const char* kReportHeader =
    "# target=pooled-median-of-finals\tspeed-samples=ttt\tzero-threshold=1e-8\n";

std::ofstream open_report(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write report file " + path);
    }
    out << kReportHeader;
    return out;
}

}  // namespace

std::vector<const RunData*> Dataset::cell(const std::string& algorithm,
                                          const std::string& function) const {
    std::vector<const RunData*> out;
    for (const auto& run : runs) {
        if (run.algorithm == algorithm && run.function == function) {
            out.push_back(&run);
        }
    }
    return out;
}

Dataset load_dataset(const std::string& output_dir) {
    const Manifest manifest = read_manifest(output_dir + "/manifest.tsv");
    if (manifest.entries.empty()) {
        throw MissingDataError("manifest in " + output_dir + " lists no runs");
    }
    Dataset dataset;
    for (const auto& entry : manifest.entries) {
        const std::string trace_path = output_dir + "/" + entry.path;
        if (!fs::exists(trace_path)) {
            throw MissingDataError("manifest references missing trace " + entry.path);
        }
        RunTrace trace = read_trace(trace_path);
        RunData run;
        run.algorithm = entry.algorithm;
        run.function = entry.function;
        run.run = entry.run;
        run.seed = entry.seed;
        run.checkpoints.reserve(trace.checkpoints.size());
        for (const double v : trace.checkpoints) {
            run.checkpoints.push_back(snap_zero(v));
        }
        run.final_value = snap_zero(trace.final_value);
        dataset.runs.push_back(std::move(run));
        if (std::find(dataset.algorithms.begin(), dataset.algorithms.end(),
                      entry.algorithm) == dataset.algorithms.end()) {
            dataset.algorithms.push_back(entry.algorithm);
        }
        if (std::find(dataset.functions.begin(), dataset.functions.end(),
                      entry.function) == dataset.functions.end()) {
            dataset.functions.push_back(entry.function);
        }
    }
    return dataset;
}

namespace {

struct FunctionSamples {
    double target = 0.0;
    // Index-aligned with dataset.algorithms.
    std::vector<std::vector<double>> finals;
    std::vector<std::vector<double>> ttts;
    std::vector<std::vector<double>> aucs;
};

FunctionSamples collect_samples(const Dataset& dataset, const std::string& function) {
    FunctionSamples samples;
    std::vector<double> pooled;
    for (const auto& algorithm : dataset.algorithms) {
        for (const auto* run : dataset.cell(algorithm, function)) {
            pooled.push_back(run->final_value);
        }
    }
    samples.target = compute_target(pooled);
    for (const auto& algorithm : dataset.algorithms) {
        std::vector<double> finals, ttts, aucs;
        for (const auto* run : dataset.cell(algorithm, function)) {
            finals.push_back(run->final_value);
            ttts.push_back(double(time_to_target(run->checkpoints, samples.target)));
            aucs.push_back(auc(run->checkpoints, samples.target));
        }
        samples.finals.push_back(std::move(finals));
        samples.ttts.push_back(std::move(ttts));
        samples.aucs.push_back(std::move(aucs));
    }
    return samples;
}

}  // namespace

std::vector<ScoreRow> score_command(const Dataset& dataset,
                                    const std::string& output_dir) {
    const std::string report_dir = output_dir + "/reports";
    fs::create_directories(report_dir);

    const std::size_t k = dataset.algorithms.size();
    std::vector<double> speed(k, 0.0);
    std::vector<double> accuracy(k, 0.0);

    auto targets = open_report(report_dir + "/targets.tsv");
    targets << "function\ttarget\n";
    auto ttt_auc = open_report(report_dir + "/ttt_auc.tsv");
    ttt_auc << "algorithm\tfunction\trun\tseed\tfinal\tttt\tauc\n";

    for (const auto& function : dataset.functions) {
        const FunctionSamples samples = collect_samples(dataset, function);
        targets << function << '\t' << format_double(samples.target) << '\n';

        for (std::size_t a = 0; a < k; ++a) {
            const auto cell = dataset.cell(dataset.algorithms[a], function);
            for (std::size_t r = 0; r < cell.size(); ++r) {
                ttt_auc << dataset.algorithms[a] << '\t' << function << '\t'
                        << cell[r]->run << '\t' << cell[r]->seed << '\t'
                        << format_double(samples.finals[a][r]) << '\t'
                        << int(samples.ttts[a][r]) << '\t'
                        << format_double(samples.aucs[a][r]) << '\n';
            }
        }

        if (k >= 2) {
            const std::vector<double> speed_scores = u_score(samples.ttts);
            const std::vector<double> acc_scores = u_score(samples.finals);
            for (std::size_t a = 0; a < k; ++a) {
                speed[a] += speed_scores[a];
                accuracy[a] += acc_scores[a];
            }
        }
    }

    std::vector<ScoreRow> rows(k);
    for (std::size_t a = 0; a < k; ++a) {
        rows[a].algorithm = dataset.algorithms[a];
        rows[a].speed = speed[a];
        rows[a].accuracy = accuracy[a];
        rows[a].total = speed[a] + accuracy[a];
        rows[a].avg_per_problem = rows[a].total / double(dataset.functions.size());
    }
    std::sort(rows.begin(), rows.end(), [](const ScoreRow& a, const ScoreRow& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.algorithm < b.algorithm;
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rank = int(i) + 1;
    }

    auto scores = open_report(report_dir + "/scores.tsv");
    scores << "rank\talgorithm\ttotal\tavg_per_problem\tspeed\taccuracy\n";
    for (const auto& row : rows) {
        scores << row.rank << '\t' << row.algorithm << '\t'
               << format_double(row.total) << '\t'
               << format_double(row.avg_per_problem) << '\t'
               << format_double(row.speed) << '\t' << format_double(row.accuracy)
               << '\n';
    }
    return rows;
}

CompareReport compare_command(const Dataset& dataset, const std::string& reference,
                              double alpha, const std::string& output_dir) {
    if (dataset.algorithms.size() < 2) {
        throw MissingDataError("compare needs at least 2 algorithms in the manifest");
    }
    if (std::find(dataset.algorithms.begin(), dataset.algorithms.end(), reference) ==
        dataset.algorithms.end()) {
        throw BadReferenceError("unknown reference algorithm '" + reference + "'");
    }

    const std::string report_dir = output_dir + "/reports";
    fs::create_directories(report_dir);

    const std::size_t k = dataset.algorithms.size();
    const std::size_t n_fn = dataset.functions.size();

    // metric -> function -> algorithm -> samples
    const std::array<std::string, 3> metric_names = {"final", "ttt", "auc"};
    std::array<std::vector<std::vector<std::vector<double>>>, 3> metric_samples;
    for (auto& m : metric_samples) {
        m.assign(n_fn, {});
    }
    for (std::size_t f = 0; f < n_fn; ++f) {
        const FunctionSamples samples = collect_samples(dataset, dataset.functions[f]);
        metric_samples[0][f] = samples.finals;
        metric_samples[1][f] = samples.ttts;
        metric_samples[2][f] = samples.aucs;
    }

    const std::size_t ref_index = std::size_t(
        std::find(dataset.algorithms.begin(), dataset.algorithms.end(), reference) -
        dataset.algorithms.begin());

    CompareReport report;
    report.friedman_algorithms = dataset.algorithms;

    for (std::size_t m = 0; m < metric_names.size(); ++m) {
        for (std::size_t c = 0; c < k; ++c) {
            if (c == ref_index) continue;
            PairwiseRow row;
            row.competitor = dataset.algorithms[c];
            row.metric = metric_names[m];

            std::vector<HolmInput> holm_inputs;
            std::vector<Verdict> directions;  // median direction per function
            std::vector<double> a12_values;
            for (std::size_t f = 0; f < n_fn; ++f) {
                const auto& ref_samples = metric_samples[m][f][ref_index];
                const auto& comp_samples = metric_samples[m][f][c];
                const WilcoxonResult wr =
                    wilcoxon_ranksum(ref_samples, comp_samples, alpha);
                switch (wr.verdict) {
                    case Verdict::win: ++row.wins; break;
                    case Verdict::tie: ++row.ties; break;
                    case Verdict::loss: ++row.losses; break;
                }
                holm_inputs.push_back({dataset.functions[f], wr.p});
                const double ref_med = median(ref_samples);
                const double comp_med = median(comp_samples);
                directions.push_back(ref_med < comp_med   ? Verdict::win
                                     : ref_med > comp_med ? Verdict::loss
                                                          : Verdict::tie);
                a12_values.push_back(a12(ref_samples, comp_samples));
            }
            const auto holm = holm_correct(holm_inputs, alpha);
            for (std::size_t f = 0; f < n_fn; ++f) {
                if (!holm[f].rejected || directions[f] == Verdict::tie) {
                    ++row.holm_ties;
                } else if (directions[f] == Verdict::win) {
                    ++row.holm_wins;
                } else {
                    ++row.holm_losses;
                }
            }
            row.median_a12 = median(a12_values);
            report.pairwise.push_back(std::move(row));
        }

        // Friedman block over per-function medians of every algorithm;
        // undefined (and skipped) for single-function experiments.
        if (n_fn >= 2) {
            std::vector<std::vector<double>> median_matrix(
                n_fn, std::vector<double>(k, 0.0));
            for (std::size_t f = 0; f < n_fn; ++f) {
                for (std::size_t a = 0; a < k; ++a) {
                    median_matrix[f][a] = median(metric_samples[m][f][a]);
                }
            }
            report.friedman_blocks.emplace_back(metric_names[m],
                                                friedman(median_matrix));
        }
    }

    auto pairwise = open_report(report_dir + "/pairwise_" + reference + ".tsv");
    pairwise << "competitor\tmetric\twins\tties\tlosses\tholm_wins\tholm_ties\t"
                "holm_losses\tmedian_a12\n";
    for (const auto& row : report.pairwise) {
        pairwise << row.competitor << '\t' << row.metric << '\t' << row.wins << '\t'
                 << row.ties << '\t' << row.losses << '\t' << row.holm_wins << '\t'
                 << row.holm_ties << '\t' << row.holm_losses << '\t'
                 << format_double(row.median_a12) << '\n';
    }

    auto friedman_out = open_report(report_dir + "/friedman.tsv");
    friedman_out << "metric\tchi2\tdf\tp\talgorithm\tavg_rank\n";
    for (const auto& [metric, result] : report.friedman_blocks) {
        for (std::size_t a = 0; a < k; ++a) {
            friedman_out << metric << '\t' << format_double(result.chi2) << '\t'
                         << result.df << '\t' << format_double(result.p) << '\t'
                         << dataset.algorithms[a] << '\t'
                         << format_double(result.avg_ranks[a]) << '\n';
        }
    }
    return report;
}

void report_command(const Dataset& dataset, const std::string& function,
                    const std::string& output_dir) {
    if (std::find(dataset.functions.begin(), dataset.functions.end(), function) ==
        dataset.functions.end()) {
        throw BadReferenceError("unknown function '" + function + "'");
    }
    const std::string report_dir = output_dir + "/reports";
    fs::create_directories(report_dir);

    for (const auto& algorithm : dataset.algorithms) {
        const auto cell = dataset.cell(algorithm, function);
        if (cell.empty()) continue;
        const std::size_t c = cell.front()->checkpoints.size();
        auto curve =
            open_report(report_dir + "/curve__" + function + "__" + algorithm + ".tsv");
        curve << "checkpoint\tmedian_best\n";
        std::vector<double> column(cell.size());
        for (std::size_t t = 0; t < c; ++t) {
            for (std::size_t r = 0; r < cell.size(); ++r) {
                column[r] = cell[r]->checkpoints[t];
            }
            curve << (t + 1) << '\t' << format_double(median(column)) << '\n';
        }
    }
}

}  // namespace rdex
