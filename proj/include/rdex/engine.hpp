#pragma once

#include <functional>

#include "rdex/functions.hpp"
#include "rdex/history.hpp"
#include "rdex/population.hpp"
#include "rdex/trace.hpp"

namespace rdex {

/// One diagnostic record per completed generation.
struct GenerationRecord {
    std::uint64_t generation = 0;
    std::uint64_t nfe = 0;
    Eigen::Index front_size = 0;
    double sr = 0.0;
    double rho_eb = 0.0;
    double best = 0.0;
    double delta_eb = 0.0;   // improvement mass from accepted EB trials
    double delta_std = 0.0;  // improvement mass from accepted standard trials
};

using GenObserver = std::function<void(const GenerationRecord&)>;

/// Runs the exploitation-biased success-history DE loop on one objective.
///
/// Per generation: every member draws a branch with probability rho_eb,
/// samples (F, CR) from the success history, builds a donor (standard
/// current-to-pbest or ordered EB triple), applies binomial crossover,
/// Cauchy perturbation on non-crossed dimensions and bound repair, and is
/// greedily selected against. At the generation barrier the hybrid rate,
/// memories and success rate are updated and the front shrinks linearly.
///
/// Consumes exactly `budget` evaluations (initialization included); stops
/// mid-generation when the budget runs out. The best-so-far value is
/// recorded every `checkpoint_every` evaluations into a trace of exactly
/// budget / checkpoint_every non-increasing entries.
///
/// Throws std::invalid_argument when budget < n0 or the configuration is
/// inconsistent. Identical inputs produce bit-identical traces.
RunTrace run_rdex(const BenchmarkFunction& objective, const EngineConfig& cfg,
                  std::uint64_t budget, std::uint64_t checkpoint_every,
                  const GenObserver& observer = {});

}  // namespace rdex
