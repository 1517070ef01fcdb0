#pragma once

#include <string>
#include <vector>

namespace rdex {

/// CEC-style zero threshold: objective values below 1e-8 count as solved.
/// Applied to every value entering target computation and comparisons.
inline double snap_zero(double value) {
    return value < 1e-8 ? 0.0 : value;
}

/// Median with the even-count mean-of-central-pair convention.
double median(std::vector<double> values);

/// Per-function target: median of the pooled final values of every
/// algorithm and run on that function. Throws on an empty pool.
double compute_target(const std::vector<double>& pooled_finals);

/// First 1-based checkpoint index whose value reaches the target
/// (checkpoints[t] <= tgt); C + 1 when the run never reaches it.
int time_to_target(const std::vector<double>& checkpoints, double tgt);

/// Anytime convergence penalty: mean over checkpoints of
/// log10(1 + max(f_t - tgt, 0)). Zero iff every checkpoint is at the target.
double auc(const std::vector<double>& checkpoints, double tgt);

/// Summed pairwise Mann-Whitney U counts under smaller-is-better: for each
/// opponent B, algorithm A scores 1 per strictly better cross-pair and 0.5
/// per tie. Returns one score per algorithm for this function's samples.
/// For every pair, U_A|B + U_B|A == n*m. Throws with fewer than 2 algorithms.
std::vector<double> u_score(const std::vector<std::vector<double>>& samples);

enum class Verdict { win, tie, loss };

struct WilcoxonResult {
    double p = 1.0;
    Verdict verdict = Verdict::tie;
};

/// Two-sided Wilcoxon rank-sum with midrank ties, tie-corrected normal
/// approximation and continuity correction. The verdict is for x under
/// smaller-is-better: win/loss by median direction when p < alpha, else
/// tie. An all-equal pooled sample yields p = 1, tie.
WilcoxonResult wilcoxon_ranksum(const std::vector<double>& x,
                                const std::vector<double>& y, double alpha);

struct HolmInput {
    std::string id;
    double p = 1.0;
};

struct HolmResult {
    std::string id;
    double p_adjusted = 1.0;
    bool rejected = false;
};

/// Holm step-down correction. Results keep the input order; adjusted
/// p-values are the max-monotone (m - i + 1) * p_(i), capped at 1.
std::vector<HolmResult> holm_correct(const std::vector<HolmInput>& pvalues,
                                     double alpha);

/// Vargha-Delaney effect size: probability a sample from x is better
/// (smaller) than one from y, ties counted half.
double a12(const std::vector<double>& x, const std::vector<double>& y);

struct FriedmanResult {
    double chi2 = 0.0;
    int df = 0;
    double p = 1.0;
    std::vector<double> avg_ranks;
};

/// Friedman chi-squared from already-averaged ranks over n_blocks blocks.
double friedman_chi2(const std::vector<double>& avg_ranks, int n_blocks);

/// Friedman test over a functions x algorithms matrix of per-function
/// medians: per-function midranks (smaller median -> better rank), average
/// ranks, chi2 = [12N/(k(k+1))] sum_j (R_j - (k+1)/2)^2 with df = k - 1.
FriedmanResult friedman(const std::vector<std::vector<double>>& medians);

/// Midranks (1-based, ties averaged) of the given values.
std::vector<double> midranks(const std::vector<double>& values);

/// Survival functions used by the tests above.
double normal_sf(double z);
double chi2_sf(double x, int df);

}  // namespace rdex
