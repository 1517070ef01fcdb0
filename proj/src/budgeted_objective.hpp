#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "rdex/functions.hpp"

namespace rdex::detail {

/// Counts evaluations, tracks the best-so-far value and fills checkpoints.
class BudgetedObjective {
public:
    BudgetedObjective(const BenchmarkFunction& fn, std::uint64_t budget,
                      std::uint64_t every)
        : fn_(fn), budget_(budget), every_(every),
          checkpoints_(budget / every,
                       std::numeric_limits<double>::quiet_NaN()) {}

    double evaluate(const Vector& x) {
        if (nfe_ >= budget_) {
            throw std::logic_error("evaluation budget overrun");
        }
        const double value = fn_.evaluate(x);
        ++nfe_;
        if (value < best_) {
            best_ = value;
        }
        if (nfe_ % every_ == 0) {
            const std::uint64_t slot = nfe_ / every_ - 1;
            if (slot < checkpoints_.size()) {
                checkpoints_[slot] = best_;
            }
        }
        return value;
    }

    std::uint64_t nfe() const { return nfe_; }
    std::uint64_t remaining() const { return budget_ - nfe_; }
    double best() const { return best_; }
    std::vector<double>&& take_checkpoints() { return std::move(checkpoints_); }

private:
    const BenchmarkFunction& fn_;
    std::uint64_t budget_;
    std::uint64_t every_;
    std::uint64_t nfe_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<double> checkpoints_;
};

}  // namespace rdex::detail
