#include "rdex/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "budgeted_objective.hpp"
#include "rdex/history.hpp"
#include "rdex/population.hpp"
#include "rdex/variation.hpp"

namespace rdex {

using detail::BudgetedObjective;

namespace {

Front init_front(const SearchSpace& space, int population, Rng& rng,
                 BudgetedObjective& eval) {
    Front front;
    front.members.reserve(std::size_t(population));
    for (int i = 0; i < population; ++i) {
        Individual ind;
        ind.x = Vector(space.dimension);
        for (Eigen::Index j = 0; j < space.dimension; ++j) {
            ind.x[j] = rng.uniform(space.lower[j], space.upper[j]);
        }
        ind.fitness = eval.evaluate(ind.x);
        front.members.push_back(std::move(ind));
    }
    return front;
}

void run_rand1bin(const BenchmarkFunction& objective, const BaselineConfig& cfg,
                  BudgetedObjective& eval, Rng& rng) {
    const SearchSpace& space = objective.space;
    Front front = init_front(space, cfg.population, rng, eval);
    const Eigen::Index n = front.size();

    std::vector<Vector> trials;
    std::vector<double> fitness;
    while (eval.remaining() > 0) {
        const Eigen::Index n_trials =
            std::min<Eigen::Index>(n, Eigen::Index(eval.remaining()));
        trials.clear();
        for (Eigen::Index i = 0; i < n_trials; ++i) {
            Eigen::Index r1, r2, r3;
            do {
                r1 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
            } while (r1 == i);
            do {
                r2 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
            } while (r2 == i || r2 == r1);
            do {
                r3 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
            } while (r3 == i || r3 == r1 || r3 == r2);
            const Vector donor = front.members[std::size_t(r1)].x +
                                 cfg.f * (front.members[std::size_t(r2)].x -
                                          front.members[std::size_t(r3)].x);
            auto [trial, crossed] =
                crossover(front.members[std::size_t(i)], donor, cfg.cr, rng);
            trials.push_back(repair_bounds(trial, space, rng));
        }
        fitness.resize(trials.size());
        for (std::size_t t = 0; t < trials.size(); ++t) {
            fitness[t] = eval.evaluate(trials[t]);
        }
        for (std::size_t t = 0; t < trials.size(); ++t) {
            Individual trial_ind{std::move(trials[t]), fitness[t]};
            const auto sel = greedy_select(front.members[t], trial_ind);
            if (sel.success) {
                front.members[t] = std::move(trial_ind);
            }
        }
    }
}

void run_shade_lite(const BenchmarkFunction& objective, const BaselineConfig& cfg,
                    BudgetedObjective& eval, Rng& rng) {
    const SearchSpace& space = objective.space;
    const std::uint64_t budget = eval.nfe() + eval.remaining();
    Front front = init_front(space, cfg.population, rng, eval);
    front.sort_by_fitness();

    SuccessHistory history = SuccessHistory::initial(5);

    struct Pending {
        Vector x;
        double f;
        double cr;
    };
    std::vector<Pending> trials;
    std::vector<double> fitness;

    while (eval.remaining() > 0) {
        const Eigen::Index n = front.size();
        const Eigen::Index n_trials =
            std::min<Eigen::Index>(n, Eigen::Index(eval.remaining()));
        const Eigen::Index p_window = std::max<Eigen::Index>(
            2, Eigen::Index(std::llround(0.11 * double(n))));

        trials.clear();
        for (Eigen::Index i = 0; i < n_trials; ++i) {
            const Eigen::Index idx =
                Eigen::Index(rng.uniform_index(std::uint64_t(history.m_f.size())));
            double f;
            do {
                f = rng.cauchy(history.m_f[idx], 0.1);
            } while (f <= 0.0);
            f = std::min(f, 1.0);
            double cr = std::clamp(rng.gaussian(history.m_cr[idx], 0.1), 0.0, 1.0);

            const Eigen::Index pbest =
                Eigen::Index(rng.uniform_index(std::uint64_t(p_window)));
            Eigen::Index r1, r2;
            do {
                r1 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
            } while (r1 == i);
            do {
                r2 = Eigen::Index(rng.uniform_index(std::uint64_t(n)));
            } while (r2 == i || r2 == r1);

            const Individual& target = front.members[std::size_t(i)];
            const Vector donor =
                mutate_standard(target, front.members[std::size_t(pbest)],
                                front.members[std::size_t(r1)],
                                front.members[std::size_t(r2)], f);
            auto [trial, crossed] = crossover(target, donor, cr, rng);
            trials.push_back({repair_bounds(trial, space, rng), f, cr});
        }

        fitness.resize(trials.size());
        for (std::size_t t = 0; t < trials.size(); ++t) {
            fitness[t] = eval.evaluate(trials[t].x);
        }

        std::vector<SuccessRecord> records;
        for (std::size_t t = 0; t < trials.size(); ++t) {
            Individual trial_ind{std::move(trials[t].x), fitness[t]};
            const auto sel = greedy_select(front.members[t], trial_ind);
            if (sel.success) {
                records.push_back({trials[t].f, trials[t].cr, sel.delta});
                front.members[t] = std::move(trial_ind);
            }
        }
        history = update_memory(history, records);
        front.sort_by_fitness();
        front.truncate(lpsr_target(eval.nfe(), budget, cfg.population, 4));
    }
}

}  // namespace

const char* baseline_name(BaselineVariant variant) {
    switch (variant) {
        case BaselineVariant::rand1bin: return "rand1bin";
        case BaselineVariant::shade_lite: return "shade_lite";
    }
    throw std::logic_error("baseline_name: unknown variant");
}

RunTrace run_baseline(const BenchmarkFunction& objective, const BaselineConfig& cfg,
                      std::uint64_t budget, std::uint64_t checkpoint_every) {
    if (cfg.population < 4) {
        throw std::invalid_argument("baseline: population must be >= 4");
    }
    if (budget < std::uint64_t(cfg.population)) {
        throw std::invalid_argument("baseline: budget must cover initialization");
    }
    if (checkpoint_every == 0 || checkpoint_every > budget) {
        throw std::invalid_argument("baseline: checkpoint interval must be in [1, budget]");
    }

    Rng rng(cfg.seed);
    BudgetedObjective eval(objective, budget, checkpoint_every);
    if (cfg.variant == BaselineVariant::rand1bin) {
        run_rand1bin(objective, cfg, eval, rng);
    } else {
        run_shade_lite(objective, cfg, eval, rng);
    }

    RunTrace trace;
    trace.algorithm = baseline_name(cfg.variant);
    trace.function = objective.id;
    trace.seed = cfg.seed;
    trace.dimension = int(objective.space.dimension);
    trace.budget = budget;
    trace.checkpoint_every = checkpoint_every;
    trace.checkpoints = eval.take_checkpoints();
    trace.final_value = trace.checkpoints.back();
    return trace;
}

}  // namespace rdex
