#pragma once

#include <cstdint>
#include <vector>

#include "rdex/rng.hpp"
#include "rdex/search_space.hpp"
#include "rdex/variation.hpp"

namespace rdex {

/// Paired success-history memories with a shared round-robin write pointer.
/// Entries stay finite: m_f in (0,1], m_cr in [0,1].
struct SuccessHistory {
    Vector m_f;
    Vector m_cr;
    Eigen::Index write_ptr = 0;

    static SuccessHistory initial(Eigen::Index h) {
        SuccessHistory hist;
        hist.m_f = Vector::Constant(h, 0.5);
        hist.m_cr = Vector::Constant(h, 0.5);
        hist.write_ptr = 0;
        return hist;
    }
};

/// Generation-scoped adaptation state observed by parameter sampling.
struct AdaptState {
    double rho_eb = 0.7;   // EB branch probability, clamped to [0.05, 0.95]
    double sr = 0.0;       // success rate measured in the previous generation
    std::uint64_t nfe = 0;
    std::uint64_t max_fe = 1;
    std::uint64_t generation = 0;
};

struct EngineConfig {
    int n0 = 600;
    int n_min = 4;
    int h = 5;
    double rho0 = 0.7;
    double p_r = 0.1;
    double sigma_loc = 0.1;
    double sigma_f = 0.02;
    double xi = 0.7;
    double k = 7.0;
    std::uint64_t seed = 0;
};

/// One accepted trial's contribution to the adaptation updates.
struct SuccessRecord {
    double f = 0.0;
    double cr = 0.0;
    double delta = 0.0;
};

/// Elite window size for pbest selection: max(2, floor(n * xi * exp(-k * sr))).
/// Shrinks as the success rate rises, concentrating selection pressure.
Eigen::Index compute_p_window(Eigen::Index n, double sr, double xi, double k);

/// Success-rate-driven mean for the standard branch F: 0.4 + 0.25 tanh(5 sr).
double mean_f_standard(double sr);

/// Draws (F, CR) for one trial from a uniformly chosen memory slot.
/// Standard branch: F ~ Gaussian(mean_f_standard(sr), sigma_f) resampled
/// into (0,1]; CR ~ Gaussian(m_cr[idx], 0.1) clipped to [0,1].
/// EB branch: F ~ Cauchy(m_f[idx], 0.1) resampled while F <= 0 and clipped
/// at 1; CR as above but floored at 0.5 during the first quarter of the
/// evaluation budget.
TrialParams sample_params(Branch branch, const SuccessHistory& history,
                          const AdaptState& state, const EngineConfig& cfg, Rng& rng);

/// Hybrid-rate update from the improvement mass each branch contributed.
/// Returns clamp(sum_eb / (sum_eb + sum_std), 0.05, 0.95) when any
/// improvement occurred; otherwise `current` is held.
double update_rho(const std::vector<double>& successes_eb,
                  const std::vector<double>& successes_std, double current);

/// Weighted-Lehmer memory update. With w_k = delta_k / sum(delta):
///   m_f[ptr]  <- sum(w F^2) / sum(w F)
///   m_cr[ptr] <- (m_cr[ptr] + sum(w CR^2) / sum(w CR)) / 2
/// The CR Lehmer term is 0 when every successful CR is 0. An empty list or
/// all-tie generation (sum delta == 0) leaves the history bit-identical and
/// does not advance the pointer.
SuccessHistory update_memory(const SuccessHistory& history,
                             const std::vector<SuccessRecord>& successes);

/// Linear front-size schedule, floor(n0 + (n_min - n0) * nfe / max_fe),
/// never below n_min.
Eigen::Index lpsr_target(std::uint64_t nfe, std::uint64_t max_fe, int n0, int n_min);

/// Drops worst-fitness members until the front matches the linear schedule
/// at the given evaluation count. Requires the front sorted ascending.
void reduce_front(Front& front, std::uint64_t nfe, std::uint64_t max_fe,
                  const EngineConfig& cfg);

}  // namespace rdex
