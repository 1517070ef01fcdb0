#include <doctest.h>

#include "rdex/baseline.hpp"

using namespace rdex;

namespace {

BenchmarkFunction shifted_sphere(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    BenchmarkFunction fn;
    fn.id = "sphere";
    fn.base = BaseFn::sphere;
    fn.space = SearchSpace::symmetric(dim, 100.0);
    Vector shift(dim);
    for (Eigen::Index j = 0; j < dim; ++j) shift[j] = rng.uniform(-80.0, 80.0);
    fn.shift = shift;
    return fn;
}

bool non_increasing(const std::vector<double>& values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("rand1bin solves a small sphere") {
    const auto fn = shifted_sphere(5, 33);
    BaselineConfig cfg;
    cfg.variant = BaselineVariant::rand1bin;
    cfg.population = 25;
    cfg.f = 0.5;
    cfg.cr = 0.9;
    cfg.seed = 4;
    const RunTrace trace = run_baseline(fn, cfg, 50000, 50);
    CHECK(trace.final_value < 1e-3);
    CHECK(trace.checkpoints.size() == 1000);
    CHECK(non_increasing(trace.checkpoints));
    CHECK(trace.algorithm == "rand1bin");
}

TEST_CASE("shade_lite solves a small sphere") {
    const auto fn = shifted_sphere(10, 35);
    BaselineConfig cfg;
    cfg.variant = BaselineVariant::shade_lite;
    cfg.population = 180;
    cfg.seed = 6;
    const RunTrace trace = run_baseline(fn, cfg, 100000, 100);
    CHECK(trace.final_value < 1e-3);
    CHECK(non_increasing(trace.checkpoints));
    CHECK(trace.algorithm == "shade_lite");
}

TEST_CASE("baseline traces are deterministic") {
    const auto fn = shifted_sphere(6, 37);
    for (const auto variant : {BaselineVariant::rand1bin, BaselineVariant::shade_lite}) {
        BaselineConfig cfg;
        cfg.variant = variant;
        cfg.population = 40;
        cfg.seed = 123;
        const RunTrace a = run_baseline(fn, cfg, 8000, 40);
        const RunTrace b = run_baseline(fn, cfg, 8000, 40);
        CHECK(a.checkpoints == b.checkpoints);
        CHECK(a.checkpoints.size() == 200);
    }
}

TEST_CASE("baseline rejects budgets below the population") {
    const auto fn = shifted_sphere(4, 39);
    BaselineConfig cfg;
    cfg.population = 50;
    CHECK_THROWS_AS(run_baseline(fn, cfg, 49, 10), std::invalid_argument);
}
