#pragma once

#include <array>
#include <utility>

#include "rdex/population.hpp"
#include "rdex/rng.hpp"

namespace rdex {

enum class Branch { standard, eb };

/// Per-trial control parameters. `crossed` marks donor-inherited
/// dimensions and is filled by crossover; it always has at least one
/// true entry (the forced j_rand dimension).
struct TrialParams {
    double f = 0.5;
    double cr = 0.5;
    Branch branch = Branch::standard;
    Mask crossed;
};

/// current-to-pbest/1 donor with an extra difference pair:
/// v = x_i + F (x_pbest - x_i) + F (x_r1 - x_r2). No bound repair here.
Vector mutate_standard(const Individual& target, const Individual& pbest,
                       const Individual& r1, const Individual& r2, double f);

/// Exploitation-biased donor: the three donors are ordered ascending by
/// fitness into (best, mid, worst), then
/// v = x_i + F (x_best - x_i) + F (x_mid - x_worst).
/// Fitness ties keep the donors' original order (stable sort).
Vector mutate_eb(const Individual& target, const std::array<Individual, 3>& donors,
                 double f);

/// Binomial crossover. Each dimension takes the donor value when
/// rand < CR or j == j_rand; j_rand is drawn once so the mask always has
/// at least one donor dimension.
std::pair<Vector, Mask> crossover(const Individual& target, const Vector& donor,
                                  double cr, Rng& rng);

/// Resamples every out-of-bound component uniformly within its bounds;
/// in-bound components pass through untouched.
Vector repair_bounds(const Vector& x, const SearchSpace& space, Rng& rng);

/// Heavy-tailed local refinement: each non-crossed dimension is, with
/// probability p_r, replaced by a Cauchy(trial[j], sigma_loc) draw; the
/// perturbed components are then bound-repaired. Crossed dimensions are
/// never touched.
Vector cauchy_perturb(const Vector& trial, const Mask& crossed, double p_r,
                      double sigma_loc, const SearchSpace& space, Rng& rng);

struct SelectionResult {
    Individual winner;
    bool success = false;
    double delta = 0.0;
};

/// Greedy replacement with tie acceptance: the trial wins iff
/// f(trial) <= f(target). delta = max(f(target) - f(trial), 0).
SelectionResult greedy_select(const Individual& target, const Individual& trial);

}  // namespace rdex
