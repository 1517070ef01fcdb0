#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdex/rng.hpp"
#include "rdex/stats.hpp"

using namespace rdex;

namespace {

// Brute-force U-score oracle: triple loop over opponents and sample pairs.
std::vector<double> u_score_bruteforce(const std::vector<std::vector<double>>& samples) {
    std::vector<double> scores(samples.size(), 0.0);
    for (std::size_t a = 0; a < samples.size(); ++a) {
        for (std::size_t b = 0; b < samples.size(); ++b) {
            if (a == b) continue;
            for (const double av : samples[a]) {
                for (const double bv : samples[b]) {
                    if (av < bv) {
                        scores[a] += 1.0;
                    } else if (av == bv) {
                        scores[a] += 0.5;
                    }
                }
            }
        }
    }
    return scores;
}

// Exact two-sided rank-sum p-value by enumerating every assignment of the
// pooled ranks to the first sample (tie-free inputs only).
double wilcoxon_exact_p(std::vector<double> x, std::vector<double> y) {
    std::vector<double> pooled(x);
    pooled.insert(pooled.end(), y.begin(), y.end());
    std::sort(pooled.begin(), pooled.end());
    const std::size_t n = x.size();
    const std::size_t total = pooled.size();

    double observed = 0.0;
    for (const double v : x) {
        observed += double(std::lower_bound(pooled.begin(), pooled.end(), v) -
                           pooled.begin()) +
                    1.0;
    }
    const double mu = double(n) * double(total + 1) / 2.0;

    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + std::ptrdiff_t(n), true);
    std::sort(pick.begin(), pick.end());  // start from the lexicographically first mask
    int extreme = 0;
    int count = 0;
    do {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            if (pick[i]) rank_sum += double(i + 1);
        }
        if (std::abs(rank_sum - mu) >= std::abs(observed - mu) - 1e-12) {
            ++extreme;
        }
        ++count;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return double(extreme) / double(count);
}

}  // namespace

TEST_CASE("median and target computation") {
    CHECK(compute_target({1.0, 2.0, 3.0}) == 2.0);
    CHECK(compute_target({1.0, 2.0, 3.0, 10.0}) == 2.5);
    CHECK(compute_target({7.0, 7.0, 7.0, 7.0}) == 7.0);
    CHECK_THROWS_AS(compute_target({}), std::invalid_argument);
}

TEST_CASE("zero snapping threshold") {
    CHECK(snap_zero(1e-9) == 0.0);
    CHECK(snap_zero(0.0) == 0.0);
    CHECK(snap_zero(1e-8) == 1e-8);
    CHECK(snap_zero(3.5) == 3.5);
}

TEST_CASE("time to target") {
    CHECK(time_to_target({5.0, 3.0, 1.0}, 5.0) == 1);
    CHECK(time_to_target({5.0, 3.0, 1.0}, 2.0) == 3);
    CHECK(time_to_target(std::vector<double>(1000, 9.0), 1.0) == 1001);

    SUBCASE("monotone in the target") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> checkpoints(20);
            double value = rng.uniform(50.0, 100.0);
            for (auto& c : checkpoints) {
                value -= rng.uniform(0.0, 5.0);
                c = value;
            }
            const double t_low = rng.uniform(0.0, 100.0);
            const double t_high = t_low + rng.uniform(0.0, 20.0);
            CHECK(time_to_target(checkpoints, t_high) <=
                  time_to_target(checkpoints, t_low));
        }
    }
}

TEST_CASE("auc penalty") {
    CHECK(auc({1.0, 0.5, 0.2}, 1.0) == 0.0);
    CHECK(auc({10.0, 10.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(auc({100.0, 1.0, 1.0}, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    SUBCASE("zero iff every checkpoint is at the target") {
        Rng rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> checkpoints(10);
            for (auto& c : checkpoints) c = rng.uniform(0.0, 10.0);
            const double tgt = rng.uniform(0.0, 10.0);
            const bool all_at =
                std::all_of(checkpoints.begin(), checkpoints.end(),
                            [&](double v) { return v <= tgt; });
            CHECK((auc(checkpoints, tgt) == 0.0) == all_at);
        }
    }
}

TEST_CASE("u-score examples") {
    const auto dominance = u_score({{1.0, 1.0}, {2.0, 2.0}});
    CHECK(dominance[0] == 4.0);
    CHECK(dominance[1] == 0.0);

    const std::vector<double> same(25, 3.0);
    const auto ties = u_score({same, same});
    CHECK(ties[0] == 312.5);
    CHECK(ties[1] == 312.5);

    CHECK_THROWS_AS(u_score({{1.0}}), std::invalid_argument);
}

TEST_CASE("u-score equals brute force on random instances") {
    Rng rng(7);
    for (int instance = 0; instance < 100; ++instance) {
        const std::size_t k = 3 + rng.uniform_index(3);
        std::vector<std::vector<double>> samples(k);
        for (auto& s : samples) {
            const std::size_t n = 5 + rng.uniform_index(21);
            for (std::size_t i = 0; i < n; ++i) {
                // Coarse grid so ties actually occur.
                s.push_back(double(rng.uniform_index(12)));
            }
        }
        CHECK(u_score(samples) == u_score_bruteforce(samples));
    }
}

TEST_CASE("u-score pair-sum conservation") {
    Rng rng(9);
    for (int instance = 0; instance < 200; ++instance) {
        std::vector<double> a, b;
        const std::size_t n = 2 + rng.uniform_index(24);
        const std::size_t m = 2 + rng.uniform_index(24);
        for (std::size_t i = 0; i < n; ++i) a.push_back(double(rng.uniform_index(8)));
        for (std::size_t i = 0; i < m; ++i) b.push_back(double(rng.uniform_index(8)));
        const auto scores = u_score({a, b});
        CHECK(scores[0] + scores[1] == double(n) * double(m));
    }
}

TEST_CASE("wilcoxon rank-sum") {
    SUBCASE("identical lists tie with p = 1") {
        const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
        const auto result = wilcoxon_ranksum(x, x, 0.05);
        CHECK(result.p == 1.0);
        CHECK(result.verdict == Verdict::tie);
    }
    SUBCASE("complete separation wins") {
        std::vector<double> x, y;
        Rng rng(11);
        for (int i = 0; i < 25; ++i) {
            x.push_back(rng.uniform(0.0, 0.1));
            y.push_back(rng.uniform(99.9, 100.0));
        }
        CHECK(wilcoxon_ranksum(x, y, 0.05).verdict == Verdict::win);
        CHECK(wilcoxon_ranksum(y, x, 0.05).verdict == Verdict::loss);
    }
    SUBCASE("degenerate all-equal pool") {
        const std::vector<double> c(10, 4.0);
        const auto result = wilcoxon_ranksum(c, c, 0.05);
        CHECK(result.p == 1.0);
        CHECK(result.verdict == Verdict::tie);
    }
    SUBCASE("normal approximation tracks exact enumeration at n = m = 5") {
        const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases = {
            {{1.0, 2.0, 3.0, 4.0, 5.0}, {6.0, 7.0, 8.0, 9.0, 10.0}},
            {{1.0, 3.0, 5.0, 7.0, 9.0}, {2.0, 4.0, 6.0, 8.0, 10.0}},
            {{1.0, 2.0, 9.0, 10.0, 11.0}, {3.0, 4.0, 5.0, 6.0, 7.0}},
            {{0.1, 0.2, 0.5, 4.0, 8.0}, {0.3, 2.0, 3.0, 9.0, 12.0}},
        };
        for (const auto& [x, y] : cases) {
            const double exact = wilcoxon_exact_p(x, y);
            const double approx = wilcoxon_ranksum(x, y, 0.05).p;
            CHECK(std::abs(approx - exact) <= 0.02);
        }
        Rng rng(13);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<double> pool(10);
            std::iota(pool.begin(), pool.end(), 1.0);
            // Random tie-free split via random distinct perturbations.
            std::vector<double> x, y;
            for (int i = 0; i < 10; ++i) {
                pool[std::size_t(i)] += rng.uniform01() * 0.5;
            }
            for (int i = 0; i < 10; ++i) {
                (i < 5 ? x : y).push_back(pool[std::size_t(i)]);
            }
            const double exact = wilcoxon_exact_p(x, y);
            const double approx = wilcoxon_ranksum(x, y, 0.05).p;
            CHECK(std::abs(approx - exact) <= 0.02);
        }
    }
}

TEST_CASE("holm step-down") {
    SUBCASE("single hypothesis") {
        const auto results = holm_correct({{"a", 0.01}}, 0.05);
        REQUIRE(results.size() == 1);
        CHECK(results[0].rejected);
        CHECK(results[0].p_adjusted == doctest::Approx(0.01));
    }
    SUBCASE("cascade continues while thresholds pass") {
        const auto results = holm_correct({{"a", 0.01}, {"b", 0.04}}, 0.05);
        CHECK(results[0].rejected);  // 0.01 <= 0.05 / 2
        CHECK(results[1].rejected);  // 0.04 <= 0.05 / 1
    }
    SUBCASE("cascade stops at the first failure") {
        const auto results = holm_correct({{"a", 0.03}, {"b", 0.04}}, 0.05);
        CHECK_FALSE(results[0].rejected);  // 0.03 > 0.025 stops the walk
        CHECK_FALSE(results[1].rejected);
    }
    SUBCASE("rejections never exceed uncorrected testing") {
        Rng rng(17);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<HolmInput> inputs;
            const std::size_t m = 1 + rng.uniform_index(10);
            for (std::size_t i = 0; i < m; ++i) {
                inputs.push_back({"h" + std::to_string(i), rng.uniform01()});
            }
            for (const auto& result : holm_correct(inputs, 0.05)) {
                if (result.rejected) {
                    const auto it = std::find_if(
                        inputs.begin(), inputs.end(),
                        [&](const HolmInput& in) { return in.id == result.id; });
                    CHECK(it->p <= 0.05);
                    CHECK(result.p_adjusted >= it->p);
                }
            }
        }
    }
}

TEST_CASE("a12 effect size") {
    CHECK(a12({1.0, 2.0}, {5.0, 6.0}) == 1.0);
    CHECK(a12({3.0, 3.0}, {3.0, 3.0}) == 0.5);
    CHECK(a12({1.0, 3.0}, {2.0, 4.0}) == 0.75);

    SUBCASE("complementarity with ties") {
        Rng rng(19);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> x, y;
            const std::size_t n = 1 + rng.uniform_index(20);
            const std::size_t m = 1 + rng.uniform_index(20);
            for (std::size_t i = 0; i < n; ++i) x.push_back(double(rng.uniform_index(6)));
            for (std::size_t i = 0; i < m; ++i) y.push_back(double(rng.uniform_index(6)));
            CHECK(a12(x, y) + a12(y, x) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("friedman test") {
    SUBCASE("identical algorithms rank at the midpoint") {
        const std::vector<std::vector<double>> medians(5, {2.0, 2.0, 2.0, 2.0});
        const auto result = friedman(medians);
        CHECK(result.chi2 == 0.0);
        CHECK(result.df == 3);
        for (const double r : result.avg_ranks) {
            CHECK(r == 2.5);
        }
        CHECK(result.p == 1.0);
    }
    SUBCASE("chi2 is invariant under per-function monotone transforms") {
        Rng rng(23);
        std::vector<std::vector<double>> medians(8, std::vector<double>(4));
        for (auto& row : medians) {
            for (auto& v : row) v = rng.uniform(0.0, 10.0);
        }
        const double chi2 = friedman(medians).chi2;
        for (std::size_t f = 0; f < medians.size(); ++f) {
            const double scale = rng.uniform(0.5, 3.0);
            const double offset = rng.uniform(-5.0, 5.0);
            for (auto& v : medians[f]) v = scale * std::exp(v / 10.0) + offset;
        }
        CHECK(friedman(medians).chi2 == doctest::Approx(chi2).epsilon(1e-12));
    }
    SUBCASE("ragged or undersized inputs are rejected") {
        CHECK_THROWS_AS(friedman({{1.0, 2.0}}), std::invalid_argument);
        CHECK_THROWS_AS(friedman({{1.0}, {2.0}}), std::invalid_argument);
        CHECK_THROWS_AS(friedman({{1.0, 2.0}, {1.0}}), std::invalid_argument);
    }
}

TEST_CASE("chi-squared and normal survival functions") {
    CHECK(normal_sf(0.0) == doctest::Approx(0.5));
    CHECK(normal_sf(1.959963985) == doctest::Approx(0.025).epsilon(1e-6));
    CHECK(chi2_sf(0.0, 5) == 1.0);
    // Known quantile: P(chi2_5 > 11.0705) = 0.05.
    CHECK(chi2_sf(11.0705, 5) == doctest::Approx(0.05).epsilon(1e-4));
    // Deep-tail values reported for six-algorithm Friedman tests over 29
    // blocks, cross-checking the continued-fraction branch far from the mean.
    CHECK(chi2_sf(77.67, 5) == doctest::Approx(2.57e-15).epsilon(0.01));
    CHECK(chi2_sf(63.85, 5) == doctest::Approx(1.94e-12).epsilon(0.01));
    CHECK(chi2_sf(60.07, 5) == doctest::Approx(1.17e-11).epsilon(0.01));
}

TEST_CASE("midranks average tied groups") {
    const auto ranks = midranks({3.0, 1.0, 3.0, 2.0});
    CHECK(ranks == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}
