#include "rdex/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "budgeted_objective.hpp"

namespace rdex {

using detail::BudgetedObjective;

namespace {

void validate_config(const EngineConfig& cfg, std::uint64_t budget,
                     std::uint64_t checkpoint_every) {
    if (cfg.n_min < 4) {
        throw std::invalid_argument("engine: n_min must be >= 4");
    }
    if (cfg.n0 < cfg.n_min) {
        throw std::invalid_argument("engine: n0 must be >= n_min");
    }
    if (cfg.h < 1) {
        throw std::invalid_argument("engine: memory size h must be >= 1");
    }
    if (!(cfg.rho0 >= 0.0 && cfg.rho0 <= 1.0)) {
        throw std::invalid_argument("engine: rho0 must lie in [0, 1]");
    }
    if (!(cfg.p_r >= 0.0 && cfg.p_r <= 1.0)) {
        throw std::invalid_argument("engine: p_r must lie in [0, 1]");
    }
    if (!(cfg.sigma_loc > 0.0) || !(cfg.sigma_f >= 0.0)) {
        throw std::invalid_argument("engine: sigma_loc must be > 0 and sigma_f >= 0");
    }
    if (!(cfg.xi > 0.0) || !(cfg.k >= 0.0)) {
        throw std::invalid_argument("engine: xi must be > 0 and k >= 0");
    }
    if (budget < std::uint64_t(cfg.n0)) {
        throw std::invalid_argument("engine: budget must cover initialization (budget >= n0)");
    }
    if (checkpoint_every == 0 || checkpoint_every > budget) {
        throw std::invalid_argument("engine: checkpoint interval must be in [1, budget]");
    }
}

struct PendingTrial {
    Vector x;
    TrialParams params;
};

}  // namespace

RunTrace run_rdex(const BenchmarkFunction& objective, const EngineConfig& cfg,
                  std::uint64_t budget, std::uint64_t checkpoint_every,
                  const GenObserver& observer) {
    validate_config(cfg, budget, checkpoint_every);
    const SearchSpace& space = objective.space;
    const Eigen::Index dim = space.dimension;

    Rng rng(cfg.seed);
    BudgetedObjective eval(objective, budget, checkpoint_every);

    Front front;
    front.members.reserve(std::size_t(cfg.n0));
    for (int i = 0; i < cfg.n0; ++i) {
        Individual ind;
        ind.x = Vector(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            ind.x[j] = rng.uniform(space.lower[j], space.upper[j]);
        }
        ind.fitness = eval.evaluate(ind.x);
        front.members.push_back(std::move(ind));
    }
    front.sort_by_fitness();

    SuccessHistory history = SuccessHistory::initial(cfg.h);
    AdaptState state;
    state.rho_eb = cfg.rho0;
    state.sr = 0.0;
    state.max_fe = budget;

    std::vector<PendingTrial> trials;
    std::vector<double> trial_fitness;

    while (eval.nfe() < budget) {
        const Eigen::Index n = front.size();
        const Eigen::Index n_trials =
            std::min<Eigen::Index>(n, Eigen::Index(eval.remaining()));
        // The elite window never exceeds the front itself (xi > 1 configs).
        const Eigen::Index p_window =
            std::min(compute_p_window(n, state.sr, cfg.xi, cfg.k), n);

        // Variation. Donors come from the generation-start front only, so
        // evaluation could fan out without changing any draw.
        trials.clear();
        for (Eigen::Index i = 0; i < n_trials; ++i) {
            const Individual& target = front.members[std::size_t(i)];
            const Branch branch = rng.bernoulli(state.rho_eb) ? Branch::eb : Branch::standard;
            state.nfe = eval.nfe();
            TrialParams params = sample_params(branch, history, state, cfg, rng);

            Vector donor;
            if (branch == Branch::standard) {
                // pbest may coincide with i; r1, r2 are distinct from each
                // other and from i but may repeat the pbest pick.
                const Eigen::Index pbest =
                    Eigen::Index(rng.uniform_index(std::uint64_t(p_window)));
                Eigen::Index r1;
                do {
                    r1 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
                } while (r1 == i);
                Eigen::Index r2;
                do {
                    r2 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
                } while (r2 == i || r2 == r1);
                donor = mutate_standard(target, front.members[std::size_t(pbest)],
                                        front.members[std::size_t(r1)],
                                        front.members[std::size_t(r2)], params.f);
            } else {
                // Ordered triple: one elite pick plus two front picks, all
                // pairwise distinct and distinct from i.
                Eigen::Index a;
                do {
                    a = Eigen::Index(rng.uniform_index(std::uint64_t(p_window)));
                } while (a == i);
                Eigen::Index b;
                do {
                    b = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
                } while (b == i || b == a);
                Eigen::Index c;
                do {
                    c = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
                } while (c == i || c == a || c == b);
                donor = mutate_eb(target,
                                  {front.members[std::size_t(a)],
                                   front.members[std::size_t(b)],
                                   front.members[std::size_t(c)]},
                                  params.f);
            }

            auto [trial, crossed] = crossover(target, donor, params.cr, rng);
            params.crossed = std::move(crossed);
            trial = cauchy_perturb(trial, params.crossed, cfg.p_r, cfg.sigma_loc,
                                   space, rng);
            trial = repair_bounds(trial, space, rng);
            trials.push_back({std::move(trial), std::move(params)});
        }

        // Evaluation.
        trial_fitness.resize(trials.size());
        for (std::size_t t = 0; t < trials.size(); ++t) {
            trial_fitness[t] = eval.evaluate(trials[t].x);
        }

        // Selection and adaptation at the generation barrier.
        std::vector<double> deltas_eb;
        std::vector<double> deltas_std;
        std::vector<SuccessRecord> records;
        Eigen::Index n_success = 0;
        for (std::size_t t = 0; t < trials.size(); ++t) {
            Individual trial_ind{std::move(trials[t].x), trial_fitness[t]};
            const auto sel = greedy_select(front.members[t], trial_ind);
            if (sel.success) {
                ++n_success;
                const TrialParams& p = trials[t].params;
                (p.branch == Branch::eb ? deltas_eb : deltas_std).push_back(sel.delta);
                records.push_back({p.f, p.cr, sel.delta});
                front.members[t] = std::move(trial_ind);
            }
        }

        state.rho_eb = update_rho(deltas_eb, deltas_std, state.rho_eb);
        history = update_memory(history, records);
        state.sr = double(n_success) / double(n_trials);
        front.sort_by_fitness();
        reduce_front(front, eval.nfe(), budget, cfg);
        ++state.generation;

        if (observer) {
            double sum_eb = 0.0, sum_std = 0.0;
            for (const double d : deltas_eb) sum_eb += d;
            for (const double d : deltas_std) sum_std += d;
            observer({state.generation, eval.nfe(), front.size(), state.sr,
                      state.rho_eb, eval.best(), sum_eb, sum_std});
        }
    }

    RunTrace trace;
    trace.algorithm = "rdex";
    trace.function = objective.id;
    trace.seed = cfg.seed;
    trace.dimension = int(dim);
    trace.budget = budget;
    trace.checkpoint_every = checkpoint_every;
    trace.checkpoints = eval.take_checkpoints();
    trace.final_value = trace.checkpoints.back();
    return trace;
}

}  // namespace rdex
