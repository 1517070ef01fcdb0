#pragma once

#include <string>
#include <vector>

#include "rdex/harness.hpp"
#include "rdex/stats.hpp"

namespace rdex {

/// One run's data as the metrics see it: checkpoint and final values are
/// zero-snapped at load time.
struct RunData {
    std::string algorithm;
    std::string function;
    int run = 0;
    std::uint64_t seed = 0;
    std::vector<double> checkpoints;
    double final_value = 0.0;
};

struct Dataset {
    std::vector<std::string> algorithms;  // unique, manifest order
    std::vector<std::string> functions;   // unique, manifest order
    std::vector<RunData> runs;

    std::vector<const RunData*> cell(const std::string& algorithm,
                                     const std::string& function) const;
};

/// Loads manifest.tsv and every referenced trace under output_dir.
/// Throws MissingDataError when the manifest or any trace is absent.
Dataset load_dataset(const std::string& output_dir);

struct ScoreRow {
    int rank = 0;
    std::string algorithm;
    double total = 0.0;
    double avg_per_problem = 0.0;
    double speed = 0.0;
    double accuracy = 0.0;
};

/// U-score evaluation: per-function pooled-median targets, TTT samples for
/// the Speed category and final values for Accuracy. Writes targets.tsv,
/// ttt_auc.tsv and scores.tsv under output_dir/reports and returns the
/// ranking (descending total; ties broken by name).
std::vector<ScoreRow> score_command(const Dataset& dataset,
                                    const std::string& output_dir);

struct PairwiseRow {
    std::string competitor;
    std::string metric;  // final | ttt | auc
    int wins = 0, ties = 0, losses = 0;
    int holm_wins = 0, holm_ties = 0, holm_losses = 0;
    double median_a12 = 0.5;
};

struct CompareReport {
    std::vector<PairwiseRow> pairwise;
    std::vector<std::pair<std::string, FriedmanResult>> friedman_blocks;
    std::vector<std::string> friedman_algorithms;
};

/// Reference-vs-competitor statistics on final, TTT and AUC samples:
/// per-function Wilcoxon W/T/L at alpha, Holm-corrected W/T/L across
/// functions, median A12, plus a Friedman block per metric over every
/// algorithm. Writes pairwise_<ref>.tsv and friedman.tsv.
CompareReport compare_command(const Dataset& dataset, const std::string& reference,
                              double alpha, const std::string& output_dir);

/// Median-over-runs convergence curve per algorithm for one function,
/// written as curve__<function>__<algorithm>.tsv plot data.
void report_command(const Dataset& dataset, const std::string& function,
                    const std::string& output_dir);

}  // namespace rdex
