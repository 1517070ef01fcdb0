#pragma once

#include <algorithm>
#include <vector>

#include "rdex/search_space.hpp"

namespace rdex {

/// A decision vector paired with its objective value.
struct Individual {
    Vector x;
    double fitness = 0.0;
};

/// The elite population. Members are kept sorted ascending by fitness
/// at every generation boundary; index 0 is the incumbent best.
struct Front {
    std::vector<Individual> members;

    Eigen::Index size() const { return Eigen::Index(members.size()); }

    void sort_by_fitness() {
        std::stable_sort(members.begin(), members.end(),
                         [](const Individual& a, const Individual& b) {
                             return a.fitness < b.fitness;
                         });
    }

    /// Drops the worst-fitness members until `target` remain.
    /// Requires the front to be sorted ascending.
    void truncate(Eigen::Index target) {
        if (target < Eigen::Index(members.size())) {
            members.resize(std::size_t(target));
        }
    }
};

}  // namespace rdex
