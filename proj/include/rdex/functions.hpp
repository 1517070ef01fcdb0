#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdex/rng.hpp"
#include "rdex/search_space.hpp"

namespace rdex {

enum class BaseFn {
    sphere,
    ellipsoid,
    rastrigin,
    rosenbrock,
    ackley,
    griewank,
    zakharov,
    levy,
    schwefel12,
    composite,
};

const char* base_fn_name(BaseFn base);
BaseFn base_fn_from_name(const std::string& name);

/// Evaluates the raw base landscape at z. Every base satisfies
/// base_value(base, 0) == 0, so a shifted instance attains its bias
/// exactly at the shift.
double base_value(BaseFn base, const Vector& z);

/// A bound-constrained test instance f(x) = base(R (x - shift)) + bias.
struct BenchmarkFunction {
    std::string id;
    SearchSpace space;
    BaseFn base = BaseFn::sphere;
    std::optional<Vector> shift;
    std::optional<Matrix> rotation;
    double bias = 0.0;

    double evaluate(const Vector& x) const;
};

/// Haar-ish random orthogonal matrix via QR of a Gaussian matrix,
/// with the sign convention fixed so the factorization is unique.
Matrix random_rotation(Eigen::Index dim, Rng& rng);

/// Max-norm residual of R^T R - I; < 1e-9 for generated rotations.
double orthogonality_residual(const Matrix& rotation);

/// Deterministic 10-function suite on [-100, 100]^D with interior shifts.
/// Identical (dimension, seed) pairs produce element-wise identical suites.
std::vector<BenchmarkFunction> default_suite(Eigen::Index dimension, std::uint64_t seed);

/// Suite manifest I/O. save_suite writes `suite.manifest` plus one
/// whitespace-separated array file per stored shift/rotation into dir.
void save_suite(const std::vector<BenchmarkFunction>& suite, const std::string& dir,
                std::uint64_t seed);
std::vector<BenchmarkFunction> load_suite(const std::string& dir);

}  // namespace rdex
