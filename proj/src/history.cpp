#include "rdex/history.hpp"

#include <algorithm>
#include <cmath>

#include "rdex/population.hpp"

namespace rdex {

Eigen::Index compute_p_window(Eigen::Index n, double sr, double xi, double k) {
    const double raw = double(n) * xi * std::exp(-k * sr);
    return std::max<Eigen::Index>(2, Eigen::Index(std::floor(raw)));
}

double mean_f_standard(double sr) {
    return 0.4 + 0.25 * std::tanh(5.0 * sr);
}

TrialParams sample_params(Branch branch, const SuccessHistory& history,
                          const AdaptState& state, const EngineConfig& cfg, Rng& rng) {
    TrialParams params;
    params.branch = branch;
    const Eigen::Index idx = Eigen::Index(rng.uniform_index(std::uint64_t(history.m_f.size())));

    if (branch == Branch::standard) {
        const double mu = mean_f_standard(state.sr);
        double f;
        do {
            f = rng.gaussian(mu, cfg.sigma_f);
        } while (f <= 0.0 || f > 1.0);
        params.f = f;
    } else {
        const double slot = history.m_f[idx];
        const double center = std::isfinite(slot) ? slot : 0.5;
        double f;
        do {
            f = rng.cauchy(center, 0.1);
        } while (f <= 0.0);
        params.f = std::min(f, 1.0);
    }

    double cr = rng.gaussian(history.m_cr[idx], 0.1);
    cr = std::clamp(cr, 0.0, 1.0);
    if (branch == Branch::eb &&
        double(state.nfe) < 0.25 * double(state.max_fe)) {
        cr = std::max(cr, 0.5);
    }
    params.cr = cr;
    return params;
}

double update_rho(const std::vector<double>& successes_eb,
                  const std::vector<double>& successes_std, double current) {
    double sum_eb = 0.0;
    for (double d : successes_eb) sum_eb += d;
    double sum_std = 0.0;
    for (double d : successes_std) sum_std += d;
    const double total = sum_eb + sum_std;
    if (total <= 0.0) {
        return current;
    }
    return std::clamp(sum_eb / total, 0.05, 0.95);
}

SuccessHistory update_memory(const SuccessHistory& history,
                             const std::vector<SuccessRecord>& successes) {
    double delta_sum = 0.0;
    for (const auto& s : successes) delta_sum += s.delta;
    if (successes.empty() || delta_sum <= 0.0) {
        return history;
    }
    double wf = 0.0, wf2 = 0.0, wcr = 0.0, wcr2 = 0.0;
    for (const auto& s : successes) {
        const double w = s.delta / delta_sum;
        wf += w * s.f;
        wf2 += w * s.f * s.f;
        wcr += w * s.cr;
        wcr2 += w * s.cr * s.cr;
    }
    SuccessHistory updated = history;
    const Eigen::Index ptr = history.write_ptr;
    updated.m_f[ptr] = wf2 / wf;
    const double cr_lehmer = wcr > 0.0 ? wcr2 / wcr : 0.0;
    updated.m_cr[ptr] = 0.5 * (history.m_cr[ptr] + cr_lehmer);
    updated.write_ptr = (ptr + 1) % history.m_f.size();
    return updated;
}

Eigen::Index lpsr_target(std::uint64_t nfe, std::uint64_t max_fe, int n0, int n_min) {
    const double raw =
        double(n0) + (double(n_min) - double(n0)) * double(nfe) / double(max_fe);
    return std::max<Eigen::Index>(n_min, Eigen::Index(std::floor(raw)));
}

void reduce_front(Front& front, std::uint64_t nfe, std::uint64_t max_fe,
                  const EngineConfig& cfg) {
    front.truncate(lpsr_target(nfe, max_fe, cfg.n0, cfg.n_min));
}

}  // namespace rdex
