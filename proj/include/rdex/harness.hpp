#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rdex/baseline.hpp"
#include "rdex/engine.hpp"
#include "rdex/errors.hpp"

namespace rdex {

/// The (algorithm x function x seed) grid for one experiment.
struct ExperimentPlan {
    std::vector<std::string> algorithms;
    std::vector<std::string> functions;  // empty means every suite function
    int runs = 25;
    int dimension = 30;
    std::uint64_t budget_per_dim = 10000;
    std::uint64_t checkpoint_per_dim = 10;
    std::uint64_t base_seed = 1;
    std::uint64_t suite_seed = 1;

    EngineConfig engine;          // seed field is overwritten per run
    int rand1bin_population = 0;  // 0 chooses max(20, 5 D)
    double rand1bin_f = 0.5;
    double rand1bin_cr = 0.9;
    int shade_population = 0;     // 0 chooses max(50, 18 D)
    bool diagnostics = false;     // write a .diag per-generation log per run

    std::uint64_t budget() const { return budget_per_dim * std::uint64_t(dimension); }
    std::uint64_t checkpoint_every() const {
        return checkpoint_per_dim * std::uint64_t(dimension);
    }
};

/// Parses the line-oriented key=value plan format. Throws PlanError naming
/// the offending line on malformed or unknown input.
ExperimentPlan parse_plan(const std::string& path);

/// Published 64-bit seed derivation: FNV-1a over the UTF-8 concatenation of
/// the decimal base seed, algorithm id, function id and decimal run index
/// (0x1f-separated), finished with a splitmix64 mix. Stable across
/// platforms; run identity never depends on worker identity.
std::uint64_t stable_seed(std::uint64_t base_seed, const std::string& algorithm,
                          const std::string& function, int run);

struct ManifestEntry {
    std::string algorithm;
    std::string function;
    int run = 0;
    std::uint64_t seed = 0;
    std::string path;  // relative to the output directory
    double final_value = 0.0;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

void write_manifest(const Manifest& manifest, const std::string& path);
Manifest read_manifest(const std::string& path);

using ProgressSink = std::function<void(const std::string&)>;

/// Executes every run of the plan into output_dir: one trace file per run
/// under traces/, the generated suite under suite/, and manifest.tsv.
/// Already-completed runs (listed in an existing manifest with their trace
/// file present) are skipped, so re-execution is idempotent. Runs are
/// independent; `threads` workers execute them, and outputs are identical
/// for any thread count.
Manifest execute(const ExperimentPlan& plan, const std::string& output_dir,
                 int threads = 1, const ProgressSink& progress = {});

}  // namespace rdex
