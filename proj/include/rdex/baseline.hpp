#pragma once

#include <string>

#include "rdex/functions.hpp"
#include "rdex/trace.hpp"

namespace rdex {

enum class BaselineVariant { rand1bin, shade_lite };

/// Reference opponents for the comparison pipeline. rand1bin is classic
/// DE/rand/1/bin with fixed (f, cr); shade_lite is a minimal
/// success-history current-to-pbest DE with one memory pair and linear
/// population reduction, ignoring the fixed (f, cr) fields.
struct BaselineConfig {
    BaselineVariant variant = BaselineVariant::rand1bin;
    int population = 50;
    double f = 0.5;
    double cr = 0.9;
    std::uint64_t seed = 0;
};

const char* baseline_name(BaselineVariant variant);

/// Same trace contract as run_rdex: exactly `budget` evaluations,
/// budget / checkpoint_every non-increasing checkpoints, bit-identical
/// output for identical inputs. Throws std::invalid_argument when
/// budget < population.
RunTrace run_baseline(const BenchmarkFunction& objective, const BaselineConfig& cfg,
                      std::uint64_t budget, std::uint64_t checkpoint_every);

}  // namespace rdex
