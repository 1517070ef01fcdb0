#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rdex {

/// Best-so-far values of one (algorithm, function, seed) run, recorded at
/// fixed evaluation intervals. Checkpoints are non-increasing and
/// `final_value` equals the last checkpoint.
struct RunTrace {
    std::string algorithm;
    std::string function;
    std::uint64_t seed = 0;
    int dimension = 0;
    std::uint64_t budget = 0;
    std::uint64_t checkpoint_every = 0;
    std::vector<double> checkpoints;
    double final_value = 0.0;
};

/// Text format: line 1 carries the run metadata as
/// algorithm,function,seed,dimension,budget,checkpoint_every
/// followed by one checkpoint value per line in round-trip precision.
void write_trace(const RunTrace& trace, const std::string& path);
RunTrace read_trace(const std::string& path);

}  // namespace rdex
