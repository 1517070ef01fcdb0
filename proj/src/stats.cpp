#include "rdex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rdex {

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of empty sample");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double compute_target(const std::vector<double>& pooled_finals) {
    if (pooled_finals.empty()) {
        throw std::invalid_argument("compute_target: empty run pool");
    }
    return median(pooled_finals);
}

int time_to_target(const std::vector<double>& checkpoints, double tgt) {
    for (std::size_t t = 0; t < checkpoints.size(); ++t) {
        if (checkpoints[t] <= tgt) {
            return int(t) + 1;
        }
    }
    return int(checkpoints.size()) + 1;
}

double auc(const std::vector<double>& checkpoints, double tgt) {
    if (checkpoints.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const double v : checkpoints) {
        sum += std::log10(1.0 + std::max(v - tgt, 0.0));
    }
    return sum / double(checkpoints.size());
}

namespace {

/// U count for a against b (smaller is better): wins + half ties,
/// computed by binary search over the sorted opponent sample.
double mann_whitney_u(const std::vector<double>& a, std::vector<double> b_sorted) {
    double u = 0.0;
    for (const double v : a) {
        const auto lo = std::lower_bound(b_sorted.begin(), b_sorted.end(), v);
        const auto hi = std::upper_bound(lo, b_sorted.end(), v);
        u += double(b_sorted.end() - hi);        // strictly larger opponents
        u += 0.5 * double(hi - lo);              // ties
    }
    return u;
}

}  // namespace

std::vector<double> u_score(const std::vector<std::vector<double>>& samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("u_score needs at least 2 algorithms");
    }
    std::vector<std::vector<double>> sorted(samples);
    for (auto& s : sorted) {
        std::sort(s.begin(), s.end());
    }
    std::vector<double> scores(samples.size(), 0.0);
    for (std::size_t a = 0; a < samples.size(); ++a) {
        for (std::size_t b = 0; b < samples.size(); ++b) {
            if (a == b) continue;
            scores[a] += mann_whitney_u(samples[a], sorted[b]);
        }
    }
    return scores;
}

WilcoxonResult wilcoxon_ranksum(const std::vector<double>& x,
                                const std::vector<double>& y, double alpha) {
    if (x.size() < 2 || y.size() < 2) {
        throw std::invalid_argument("wilcoxon_ranksum needs >= 2 samples per side");
    }
    std::vector<double> pooled(x);
    pooled.insert(pooled.end(), y.begin(), y.end());
    const std::vector<double> ranks = midranks(pooled);

    const double n1 = double(x.size());
    const double n2 = double(y.size());
    const double n = n1 + n2;
    double rank_sum_x = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        rank_sum_x += ranks[i];
    }

    // Tie correction over the pooled sample.
    std::vector<double> sorted(pooled);
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = double(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    const double mu = n1 * (n + 1.0) / 2.0;
    const double variance =
        n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));

    WilcoxonResult result;
    if (variance <= 0.0) {
        result.p = 1.0;
        result.verdict = Verdict::tie;
        return result;
    }
    const double z =
        std::max(std::abs(rank_sum_x - mu) - 0.5, 0.0) / std::sqrt(variance);
    result.p = std::min(1.0, 2.0 * normal_sf(z));
    if (result.p < alpha) {
        const double mx = median(x);
        const double my = median(y);
        if (mx < my) {
            result.verdict = Verdict::win;
        } else if (mx > my) {
            result.verdict = Verdict::loss;
        } else {
            result.verdict = Verdict::tie;
        }
    }
    return result;
}

std::vector<HolmResult> holm_correct(const std::vector<HolmInput>& pvalues,
                                     double alpha) {
    const std::size_t m = pvalues.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pvalues[a].p < pvalues[b].p;
    });

    std::vector<HolmResult> results(m);
    bool rejecting = true;
    double running_adjusted = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& input = pvalues[order[i]];
        const double multiplier = double(m - i);
        running_adjusted = std::max(running_adjusted,
                                    std::min(1.0, multiplier * input.p));
        if (rejecting && !(input.p <= alpha / multiplier)) {
            rejecting = false;
        }
        results[order[i]] = {input.id, running_adjusted, rejecting};
    }
    return results;
}

double a12(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || y.empty()) {
        throw std::invalid_argument("a12 needs non-empty samples");
    }
    double better = 0.0;
    for (const double xv : x) {
        for (const double yv : y) {
            if (xv < yv) {
                better += 1.0;
            } else if (xv == yv) {
                better += 0.5;
            }
        }
    }
    return better / (double(x.size()) * double(y.size()));
}

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double rank = 0.5 * (double(i + 1) + double(j));  // average of i+1..j
        for (std::size_t k = i; k < j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j;
    }
    return ranks;
}

double friedman_chi2(const std::vector<double>& avg_ranks, int n_blocks) {
    const double k = double(avg_ranks.size());
    const double center = (k + 1.0) / 2.0;
    double sum = 0.0;
    for (const double r : avg_ranks) {
        sum += (r - center) * (r - center);
    }
    return 12.0 * double(n_blocks) / (k * (k + 1.0)) * sum;
}

FriedmanResult friedman(const std::vector<std::vector<double>>& medians) {
    if (medians.size() < 2) {
        throw std::invalid_argument("friedman needs >= 2 functions");
    }
    const std::size_t k = medians.front().size();
    if (k < 2) {
        throw std::invalid_argument("friedman needs >= 2 algorithms");
    }
    std::vector<double> rank_sums(k, 0.0);
    for (const auto& row : medians) {
        if (row.size() != k) {
            throw std::invalid_argument("friedman: ragged median matrix");
        }
        const std::vector<double> ranks = midranks(row);
        for (std::size_t j = 0; j < k; ++j) {
            rank_sums[j] += ranks[j];
        }
    }
    FriedmanResult result;
    result.avg_ranks.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        result.avg_ranks[j] = rank_sums[j] / double(medians.size());
    }
    result.chi2 = friedman_chi2(result.avg_ranks, int(medians.size()));
    result.df = int(k) - 1;
    result.p = chi2_sf(result.chi2, result.df);
    return result;
}

double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

namespace {

/// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_sf(double x, int df) {
    if (x <= 0.0) return 1.0;
    const double a = 0.5 * double(df);
    const double half_x = 0.5 * x;
    if (half_x < a + 1.0) {
        return 1.0 - gamma_p_series(a, half_x);
    }
    return gamma_q_cf(a, half_x);
}

}  // namespace rdex
