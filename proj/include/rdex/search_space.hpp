#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace rdex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Box-constrained search domain: lower[j] <= x[j] <= upper[j].
struct SearchSpace {
    Eigen::Index dimension = 0;
    Vector lower;
    Vector upper;

    static SearchSpace symmetric(Eigen::Index dim, double halfwidth) {
        SearchSpace s;
        s.dimension = dim;
        s.lower = Vector::Constant(dim, -halfwidth);
        s.upper = Vector::Constant(dim, halfwidth);
        s.validate();
        return s;
    }

    void validate() const {
        if (dimension < 1) {
            throw std::invalid_argument("SearchSpace: dimension must be >= 1");
        }
        if (lower.size() != dimension || upper.size() != dimension) {
            throw std::invalid_argument("SearchSpace: bound arrays must have length D");
        }
        for (Eigen::Index j = 0; j < dimension; ++j) {
            if (!(lower[j] < upper[j])) {
                throw std::invalid_argument("SearchSpace: lower[j] < upper[j] required");
            }
        }
    }

    bool contains(const Vector& x) const {
        return x.size() == dimension &&
               (x.array() >= lower.array()).all() &&
               (x.array() <= upper.array()).all();
    }
};

}  // namespace rdex
