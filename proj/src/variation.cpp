#include "rdex/variation.hpp"

#include <algorithm>

namespace rdex {

Vector mutate_standard(const Individual& target, const Individual& pbest,
                       const Individual& r1, const Individual& r2, double f) {
    return target.x + f * (pbest.x - target.x) + f * (r1.x - r2.x);
}

Vector mutate_eb(const Individual& target, const std::array<Individual, 3>& donors,
                 double f) {
    std::array<const Individual*, 3> ordered = {&donors[0], &donors[1], &donors[2]};
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Individual* a, const Individual* b) {
                         return a->fitness < b->fitness;
                     });
    const Vector& best = ordered[0]->x;
    const Vector& mid = ordered[1]->x;
    const Vector& worst = ordered[2]->x;
    return target.x + f * (best - target.x) + f * (mid - worst);
}

std::pair<Vector, Mask> crossover(const Individual& target, const Vector& donor,
                                  double cr, Rng& rng) {
    const Eigen::Index d = target.x.size();
    const Eigen::Index j_rand = Eigen::Index(rng.uniform_index(std::uint64_t(d)));
    Vector trial(d);
    Mask crossed(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const bool take_donor = rng.uniform01() < cr || j == j_rand;
        crossed[j] = take_donor;
        trial[j] = take_donor ? donor[j] : target.x[j];
    }
    return {std::move(trial), std::move(crossed)};
}

Vector repair_bounds(const Vector& x, const SearchSpace& space, Rng& rng) {
    Vector repaired = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x[j] < space.lower[j] || x[j] > space.upper[j]) {
            repaired[j] = rng.uniform(space.lower[j], space.upper[j]);
        }
    }
    return repaired;
}

Vector cauchy_perturb(const Vector& trial, const Mask& crossed, double p_r,
                      double sigma_loc, const SearchSpace& space, Rng& rng) {
    Vector out = trial;
    for (Eigen::Index j = 0; j < trial.size(); ++j) {
        if (crossed[j]) {
            continue;
        }
        if (rng.uniform01() < p_r) {
            double v = rng.cauchy(trial[j], sigma_loc);
            if (v < space.lower[j] || v > space.upper[j]) {
                v = rng.uniform(space.lower[j], space.upper[j]);
            }
            out[j] = v;
        }
    }
    return out;
}

SelectionResult greedy_select(const Individual& target, const Individual& trial) {
    SelectionResult result;
    result.success = trial.fitness <= target.fitness;
    result.winner = result.success ? trial : target;
    result.delta = std::max(target.fitness - trial.fitness, 0.0);
    return result;
}

}  // namespace rdex
