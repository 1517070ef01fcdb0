#include "rdex/functions.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rdex/text_io.hpp"

namespace rdex {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double sphere(const Vector& z) { return z.squaredNorm(); }

double ellipsoid(const Vector& z) {
    const Eigen::Index d = z.size();
    if (d == 1) return z.squaredNorm();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        sum += std::pow(1e6, double(j) / double(d - 1)) * z[j] * z[j];
    }
    return sum;
}

double rastrigin(const Vector& z) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        sum += z[j] * z[j] - 10.0 * std::cos(2.0 * kPi * z[j]) + 10.0;
    }
    return sum;
}

// Optimum moved to the origin: textbook Rosenbrock evaluated at z + 1.
double rosenbrock(const Vector& z) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j + 1 < z.size(); ++j) {
        const double a = z[j] + 1.0;
        const double b = z[j + 1] + 1.0;
        sum += 100.0 * (a * a - b) * (a * a - b) + (a - 1.0) * (a - 1.0);
    }
    return sum;
}

double ackley(const Vector& z) {
    const double d = double(z.size());
    double sum_sq = 0.0;
    double sum_cos = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        sum_sq += z[j] * z[j];
        sum_cos += std::cos(2.0 * kPi * z[j]);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / d)) - std::exp(sum_cos / d) +
           20.0 + std::exp(1.0);
}

double griewank(const Vector& z) {
    double sum = 0.0;
    double prod = 1.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        sum += z[j] * z[j] / 4000.0;
        prod *= std::cos(z[j] / std::sqrt(double(j + 1)));
    }
    return sum - prod + 1.0;
}

double zakharov(const Vector& z) {
    double sum_sq = 0.0;
    double sum_lin = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        sum_sq += z[j] * z[j];
        sum_lin += 0.5 * double(j + 1) * z[j];
    }
    return sum_sq + sum_lin * sum_lin + sum_lin * sum_lin * sum_lin * sum_lin;
}

double levy(const Vector& z) {
    const Eigen::Index d = z.size();
    auto w = [&](Eigen::Index j) { return 1.0 + z[j] / 4.0; };
    const double s1 = std::sin(kPi * w(0));
    double sum = s1 * s1;
    for (Eigen::Index j = 0; j + 1 < d; ++j) {
        const double wj = w(j);
        const double s = std::sin(kPi * wj + 1.0);
        sum += (wj - 1.0) * (wj - 1.0) * (1.0 + 10.0 * s * s);
    }
    const double wd = w(d - 1);
    const double sd = std::sin(2.0 * kPi * wd);
    sum += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
    return sum;
}

double schwefel12(const Vector& z) {
    double sum = 0.0;
    double prefix = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        prefix += z[j];
        sum += prefix * prefix;
    }
    return sum;
}

// Fixed multimodal hybrid: Rastrigin on z plus Griewank on the reversed
// coordinates (reversal is an orthogonal copy, so the optimum stays at 0).
double composite(const Vector& z) {
    return 0.5 * rastrigin(z) + 0.5 * griewank(z.reverse());
}

}  // namespace

const char* base_fn_name(BaseFn base) {
    switch (base) {
        case BaseFn::sphere: return "sphere";
        case BaseFn::ellipsoid: return "ellipsoid";
        case BaseFn::rastrigin: return "rastrigin";
        case BaseFn::rosenbrock: return "rosenbrock";
        case BaseFn::ackley: return "ackley";
        case BaseFn::griewank: return "griewank";
        case BaseFn::zakharov: return "zakharov";
        case BaseFn::levy: return "levy";
        case BaseFn::schwefel12: return "schwefel12";
        case BaseFn::composite: return "composite";
    }
    throw std::logic_error("base_fn_name: unknown tag");
}

BaseFn base_fn_from_name(const std::string& name) {
    static const std::map<std::string, BaseFn> table = {
        {"sphere", BaseFn::sphere},         {"ellipsoid", BaseFn::ellipsoid},
        {"rastrigin", BaseFn::rastrigin},   {"rosenbrock", BaseFn::rosenbrock},
        {"ackley", BaseFn::ackley},         {"griewank", BaseFn::griewank},
        {"zakharov", BaseFn::zakharov},     {"levy", BaseFn::levy},
        {"schwefel12", BaseFn::schwefel12}, {"composite", BaseFn::composite},
    };
    const auto it = table.find(name);
    if (it == table.end()) {
        throw std::invalid_argument("unknown base function tag: " + name);
    }
    return it->second;
}

double base_value(BaseFn base, const Vector& z) {
    switch (base) {
        case BaseFn::sphere: return sphere(z);
        case BaseFn::ellipsoid: return ellipsoid(z);
        case BaseFn::rastrigin: return rastrigin(z);
        case BaseFn::rosenbrock: return rosenbrock(z);
        case BaseFn::ackley: return ackley(z);
        case BaseFn::griewank: return griewank(z);
        case BaseFn::zakharov: return zakharov(z);
        case BaseFn::levy: return levy(z);
        case BaseFn::schwefel12: return schwefel12(z);
        case BaseFn::composite: return composite(z);
    }
    throw std::logic_error("base_value: unknown tag");
}

double BenchmarkFunction::evaluate(const Vector& x) const {
    if (x.size() != space.dimension) {
        throw std::invalid_argument("evaluate: point has wrong dimension for " + id);
    }
    Vector z = shift ? Vector(x - *shift) : x;
    if (rotation) {
        z = *rotation * z;
    }
    return base_value(base, z) + bias;
}

Matrix random_rotation(Eigen::Index dim, Rng& rng) {
    Matrix gauss(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            gauss(i, j) = rng.gaussian(0.0, 1.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(gauss);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) = -q.col(j);
        }
    }
    return q;
}

double orthogonality_residual(const Matrix& rotation) {
    const Matrix residual =
        rotation.transpose() * rotation - Matrix::Identity(rotation.rows(), rotation.cols());
    return residual.cwiseAbs().maxCoeff();
}

std::vector<BenchmarkFunction> default_suite(Eigen::Index dimension, std::uint64_t seed) {
    if (dimension < 2) {
        throw std::invalid_argument("default_suite: dimension must be >= 2");
    }
    struct Entry {
        BaseFn base;
        bool rotated;
    };
    // Shift-only instances stay separable; rotated ones exercise the full
    // f(x) = base(R (x - shift)) + bias path. Multimodal and ill-conditioned
    // families are repeated with independent transforms, mirroring the usual
    // competition-suite balance of easy anchors versus discriminating
    // landscapes.
    const std::vector<Entry> layout = {
        {BaseFn::sphere, false},    {BaseFn::ellipsoid, true},  {BaseFn::rastrigin, true},
        {BaseFn::rosenbrock, true}, {BaseFn::ackley, true},     {BaseFn::griewank, true},
        {BaseFn::schwefel12, false}, {BaseFn::rastrigin, true},  {BaseFn::composite, true},
        {BaseFn::composite, true},
    };
    std::vector<BenchmarkFunction> suite;
    suite.reserve(layout.size());
    for (std::size_t k = 0; k < layout.size(); ++k) {
        // One child stream per instance so the suite is stable under reordering.
        std::uint64_t state = seed;
        std::uint64_t leaf = 0;
        for (std::size_t step = 0; step <= k; ++step) {
            leaf = Rng::splitmix64(state);
        }
        Rng rng(leaf);
        BenchmarkFunction fn;
        char id[32];
        std::snprintf(id, sizeof id, "f%02zu_%s", k + 1, base_fn_name(layout[k].base));
        fn.id = id;
        fn.base = layout[k].base;
        fn.space = SearchSpace::symmetric(dimension, 100.0);
        Vector shift(dimension);
        for (Eigen::Index j = 0; j < dimension; ++j) {
            shift[j] = rng.uniform(-80.0, 80.0);
        }
        fn.shift = shift;
        if (layout[k].rotated) {
            fn.rotation = random_rotation(dimension, rng);
        }
        fn.bias = 100.0 * double(k + 1);
        suite.push_back(std::move(fn));
    }
    return suite;
}

namespace {

void write_array_file(const std::string& path, const double* data, std::size_t count,
                      std::size_t per_line) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    for (std::size_t i = 0; i < count; ++i) {
        out << format_double(data[i]);
        out << (((i + 1) % per_line == 0) ? '\n' : ' ');
    }
}

std::vector<double> read_array_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::vector<double> values;
    double v;
    while (in >> v) {
        values.push_back(v);
    }
    return values;
}

}  // namespace

void save_suite(const std::vector<BenchmarkFunction>& suite, const std::string& dir,
                std::uint64_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream out(dir + "/suite.manifest");
    if (!out) {
        throw std::runtime_error("cannot write suite manifest in " + dir);
    }
    for (const auto& fn : suite) {
        out << "function=" << fn.id << '\n';
        out << "base=" << base_fn_name(fn.base) << '\n';
        out << "dimension=" << fn.space.dimension << '\n';
        out << "lower=" << format_double(fn.space.lower[0]) << '\n';
        out << "upper=" << format_double(fn.space.upper[0]) << '\n';
        out << "bias=" << format_double(fn.bias) << '\n';
        out << "seed=" << seed << '\n';
        if (fn.shift) {
            const std::string name = fn.id + ".shift";
            write_array_file(dir + "/" + name, fn.shift->data(),
                             std::size_t(fn.shift->size()), std::size_t(fn.shift->size()));
            out << "shift_file=" << name << '\n';
        }
        if (fn.rotation) {
            const std::string name = fn.id + ".rot";
            write_array_file(dir + "/" + name, fn.rotation->data(),
                             std::size_t(fn.rotation->size()),
                             std::size_t(fn.rotation->rows()));
            out << "rotation_file=" << name << '\n';
        }
        out << '\n';
    }
}

std::vector<BenchmarkFunction> load_suite(const std::string& dir) {
    std::ifstream in(dir + "/suite.manifest");
    if (!in) {
        throw std::runtime_error("cannot read suite manifest in " + dir);
    }
    std::vector<BenchmarkFunction> suite;
    std::map<std::string, std::string> block;
    auto flush = [&]() {
        if (block.empty()) return;
        BenchmarkFunction fn;
        fn.id = block.at("function");
        fn.base = base_fn_from_name(block.at("base"));
        const Eigen::Index dim = std::stoll(block.at("dimension"));
        fn.space.dimension = dim;
        fn.space.lower = Vector::Constant(dim, std::stod(block.at("lower")));
        fn.space.upper = Vector::Constant(dim, std::stod(block.at("upper")));
        fn.space.validate();
        fn.bias = std::stod(block.at("bias"));
        if (block.count("shift_file")) {
            const auto values = read_array_file(dir + "/" + block.at("shift_file"));
            if (Eigen::Index(values.size()) != dim) {
                throw std::runtime_error("shift array has wrong length for " + fn.id);
            }
            fn.shift = Eigen::Map<const Vector>(values.data(), dim);
        }
        if (block.count("rotation_file")) {
            const auto values = read_array_file(dir + "/" + block.at("rotation_file"));
            if (Eigen::Index(values.size()) != dim * dim) {
                throw std::runtime_error("rotation array has wrong size for " + fn.id);
            }
            fn.rotation = Eigen::Map<const Matrix>(values.data(), dim, dim);
        }
        suite.push_back(std::move(fn));
        block.clear();
    };
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            flush();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("malformed suite manifest line: " + line);
        }
        block[line.substr(0, eq)] = line.substr(eq + 1);
    }
    flush();
    return suite;
}

}  // namespace rdex
