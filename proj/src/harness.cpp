#include "rdex/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "rdex/text_io.hpp"

namespace fs = std::filesystem;

namespace rdex {

namespace {

bool is_known_algorithm(const std::string& name) {
    return name == "rdex" || name == "rand1bin" || name == "shade_lite";
}

std::uint64_t parse_u64(const std::string& value, const std::string& context) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw PlanError(context + ": expected unsigned integer, got '" + value + "'");
    }
}

int parse_int(const std::string& value, const std::string& context) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw PlanError(context + ": expected integer, got '" + value + "'");
    }
}

double parse_real(const std::string& value, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw PlanError(context + ": expected real number, got '" + value + "'");
    }
}

}  // namespace

ExperimentPlan parse_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open plan file " + path);
    }
    ExperimentPlan plan;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string context = "plan line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw PlanError(context + ": expected key=value, got '" + line + "'");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "algorithm") {
            if (!is_known_algorithm(value)) {
                throw PlanError(context + ": unknown algorithm '" + value + "'");
            }
            plan.algorithms.push_back(value);
        } else if (key == "function") {
            plan.functions.push_back(value);
        } else if (key == "runs") {
            plan.runs = parse_int(value, context);
        } else if (key == "dimension") {
            plan.dimension = parse_int(value, context);
        } else if (key == "budget_per_dim") {
            plan.budget_per_dim = parse_u64(value, context);
        } else if (key == "checkpoint_per_dim") {
            plan.checkpoint_per_dim = parse_u64(value, context);
        } else if (key == "base_seed") {
            plan.base_seed = parse_u64(value, context);
        } else if (key == "suite_seed") {
            plan.suite_seed = parse_u64(value, context);
        } else if (key == "diagnostics") {
            plan.diagnostics = parse_int(value, context) != 0;
        } else if (key == "rdex.n0") {
            plan.engine.n0 = parse_int(value, context);
        } else if (key == "rdex.n_min") {
            plan.engine.n_min = parse_int(value, context);
        } else if (key == "rdex.h") {
            plan.engine.h = parse_int(value, context);
        } else if (key == "rdex.rho0") {
            plan.engine.rho0 = parse_real(value, context);
        } else if (key == "rdex.p_r") {
            plan.engine.p_r = parse_real(value, context);
        } else if (key == "rdex.sigma_loc") {
            plan.engine.sigma_loc = parse_real(value, context);
        } else if (key == "rdex.sigma_f") {
            plan.engine.sigma_f = parse_real(value, context);
        } else if (key == "rdex.xi") {
            plan.engine.xi = parse_real(value, context);
        } else if (key == "rdex.k") {
            plan.engine.k = parse_real(value, context);
        } else if (key == "rand1bin.population") {
            plan.rand1bin_population = parse_int(value, context);
        } else if (key == "rand1bin.f") {
            plan.rand1bin_f = parse_real(value, context);
        } else if (key == "rand1bin.cr") {
            plan.rand1bin_cr = parse_real(value, context);
        } else if (key == "shade_lite.population") {
            plan.shade_population = parse_int(value, context);
        } else {
            throw PlanError(context + ": unknown key '" + key + "'");
        }
    }
    if (plan.algorithms.empty()) {
        throw PlanError("plan lists no algorithms");
    }
    if (plan.runs < 1) throw PlanError("plan: runs must be >= 1");
    if (plan.dimension < 2) throw PlanError("plan: dimension must be >= 2");
    if (plan.budget_per_dim < 1 || plan.checkpoint_per_dim < 1) {
        throw PlanError("plan: budget_per_dim and checkpoint_per_dim must be >= 1");
    }
    return plan;
}

std::uint64_t stable_seed(std::uint64_t base_seed, const std::string& algorithm,
                          const std::string& function, int run) {
    auto fnv1a = [](std::uint64_t hash, const std::string& text) {
        for (const char c : text) {
            hash ^= std::uint64_t(static_cast<unsigned char>(c));
            hash *= 0x100000001b3ULL;
        }
        hash ^= 0x1fULL;
        hash *= 0x100000001b3ULL;
        return hash;
    };
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    hash = fnv1a(hash, std::to_string(base_seed));
    hash = fnv1a(hash, algorithm);
    hash = fnv1a(hash, function);
    hash = fnv1a(hash, std::to_string(run));
    return Rng::splitmix64(hash);
}

void write_manifest(const Manifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write manifest " + path);
    }
    out << "algorithm\tfunction\trun\tseed\tpath\tfinal\n";
    for (const auto& e : manifest.entries) {
        out << e.algorithm << '\t' << e.function << '\t' << e.run << '\t' << e.seed
            << '\t' << e.path << '\t' << format_double(e.final_value) << '\n';
    }
    if (!out) {
        throw IoError("write failed for manifest " + path);
    }
}

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingDataError("no manifest at " + path);
    }
    Manifest manifest;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, '\t')) {
            fields.push_back(field);
        }
        if (fields.size() != 6) {
            throw MissingDataError("malformed manifest row in " + path + ": " + line);
        }
        try {
            ManifestEntry e;
            e.algorithm = fields[0];
            e.function = fields[1];
            e.run = std::stoi(fields[2]);
            e.seed = std::stoull(fields[3]);
            e.path = fields[4];
            e.final_value = std::stod(fields[5]);
            manifest.entries.push_back(std::move(e));
        } catch (const std::exception&) {
            throw MissingDataError("malformed manifest row in " + path + ": " + line);
        }
    }
    return manifest;
}

namespace {

struct RunJob {
    std::string algorithm;
    std::string function_id;
    const BenchmarkFunction* objective = nullptr;
    int run = 0;
    std::uint64_t seed = 0;
    std::string trace_path;  // relative
};

std::string trace_filename(const std::string& algorithm, const std::string& function,
                           int run) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", run);
    return "traces/" + algorithm + "__" + function + "__r" + buf + ".trace";
}

void execute_one(const RunJob& job, const ExperimentPlan& plan,
                 const std::string& output_dir) {
    RunTrace trace;
    const std::string diag_path = output_dir + "/" + job.trace_path + ".diag";
    if (job.algorithm == "rdex") {
        EngineConfig cfg = plan.engine;
        cfg.seed = job.seed;
        GenObserver observer;
        std::ofstream diag;
        if (plan.diagnostics) {
            diag.open(diag_path);
            observer = [&diag](const GenerationRecord& rec) {
                diag << rec.generation << '\t' << rec.nfe << '\t' << rec.front_size
                     << '\t' << format_double(rec.sr) << '\t'
                     << format_double(rec.rho_eb) << '\t' << format_double(rec.best)
                     << '\n';
            };
        }
        trace = run_rdex(*job.objective, cfg, plan.budget(), plan.checkpoint_every(),
                         observer);
    } else {
        BaselineConfig cfg;
        if (job.algorithm == "rand1bin") {
            cfg.variant = BaselineVariant::rand1bin;
            // Storn-Price convention: NP = 10 D.
            cfg.population = plan.rand1bin_population > 0
                                 ? plan.rand1bin_population
                                 : std::max(20, 10 * plan.dimension);
            cfg.f = plan.rand1bin_f;
            cfg.cr = plan.rand1bin_cr;
        } else {
            cfg.variant = BaselineVariant::shade_lite;
            cfg.population = plan.shade_population > 0
                                 ? plan.shade_population
                                 : std::max(50, 18 * plan.dimension);
        }
        cfg.seed = job.seed;
        trace = run_baseline(*job.objective, cfg, plan.budget(), plan.checkpoint_every());
    }
    write_trace(trace, output_dir + "/" + job.trace_path);
}

}  // namespace

Manifest execute(const ExperimentPlan& plan, const std::string& output_dir,
                 int threads, const ProgressSink& progress) {
    const auto suite = default_suite(plan.dimension, plan.suite_seed);

    std::vector<const BenchmarkFunction*> selected;
    if (plan.functions.empty()) {
        for (const auto& fn : suite) selected.push_back(&fn);
    } else {
        for (const auto& name : plan.functions) {
            const auto it = std::find_if(suite.begin(), suite.end(),
                                         [&](const auto& fn) { return fn.id == name; });
            if (it == suite.end()) {
                throw PlanError("plan names unknown function '" + name +
                                "' (not in the generated suite)");
            }
            selected.push_back(&*it);
        }
    }

    // Full grid with collision-checked seeds.
    std::vector<RunJob> grid;
    std::unordered_set<std::uint64_t> seen_seeds;
    for (const auto& algorithm : plan.algorithms) {
        for (const auto* fn : selected) {
            for (int run = 0; run < plan.runs; ++run) {
                RunJob job;
                job.algorithm = algorithm;
                job.function_id = fn->id;
                job.objective = fn;
                job.run = run;
                job.seed = stable_seed(plan.base_seed, algorithm, fn->id, run);
                job.trace_path = trace_filename(algorithm, fn->id, run);
                if (!seen_seeds.insert(job.seed).second) {
                    throw PlanError("seed collision in plan at " + algorithm + "/" +
                                    fn->id + "/run " + std::to_string(run));
                }
                grid.push_back(std::move(job));
            }
        }
    }

    std::error_code ec;
    fs::create_directories(output_dir + "/traces", ec);
    if (ec) {
        throw IoError("cannot create output directory " + output_dir + ": " +
                      ec.message());
    }
    save_suite(suite, output_dir + "/suite", plan.suite_seed);

    // Completed runs are those listed in an existing manifest whose trace
    // file is still present.
    std::set<std::string> completed;
    const std::string manifest_path = output_dir + "/manifest.tsv";
    if (fs::exists(manifest_path)) {
        const Manifest existing = read_manifest(manifest_path);
        for (const auto& e : existing.entries) {
            if (fs::exists(output_dir + "/" + e.path)) {
                completed.insert(e.path);
            }
        }
    }

    std::vector<const RunJob*> pending;
    for (const auto& job : grid) {
        if (!completed.count(job.trace_path)) {
            pending.push_back(&job);
        }
    }

    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= pending.size()) break;
            const RunJob& job = *pending[index];
            try {
                execute_one(job, plan, output_dir);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(pending.size());
                break;
            }
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(job.algorithm + " " + job.function_id + " run " +
                         std::to_string(job.run) + " done");
            }
        }
    };

    const int n_workers = std::max(1, threads);
    if (n_workers == 1 || pending.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    // Manifest rows come from the trace files themselves, in grid order,
    // so re-execution rewrites identical bytes.
    Manifest manifest;
    for (const auto& job : grid) {
        const RunTrace trace = read_trace(output_dir + "/" + job.trace_path);
        ManifestEntry entry;
        entry.algorithm = job.algorithm;
        entry.function = job.function_id;
        entry.run = job.run;
        entry.seed = job.seed;
        entry.path = job.trace_path;
        entry.final_value = trace.final_value;
        manifest.entries.push_back(std::move(entry));
    }
    write_manifest(manifest, manifest_path);
    return manifest;
}

}  // namespace rdex
