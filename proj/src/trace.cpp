#include "rdex/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rdex/errors.hpp"
#include "rdex/text_io.hpp"

namespace rdex {

void write_trace(const RunTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write trace file " + path);
    }
    out << trace.algorithm << ',' << trace.function << ',' << trace.seed << ','
        << trace.dimension << ',' << trace.budget << ',' << trace.checkpoint_every
        << '\n';
    for (double v : trace.checkpoints) {
        out << format_double(v) << '\n';
    }
    if (!out) {
        throw IoError("write failed for trace file " + path);
    }
}

RunTrace read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read trace file " + path);
    }
    try {
        RunTrace trace;
        std::string header;
        if (!std::getline(in, header)) {
            throw std::runtime_error("no header line");
        }
        std::istringstream hs(header);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(hs, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 6) {
            throw std::runtime_error("malformed header");
        }
        trace.algorithm = fields[0];
        trace.function = fields[1];
        trace.seed = std::stoull(fields[2]);
        trace.dimension = std::stoi(fields[3]);
        trace.budget = std::stoull(fields[4]);
        trace.checkpoint_every = std::stoull(fields[5]);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            trace.checkpoints.push_back(std::stod(line));
        }
        if (trace.checkpoints.empty()) {
            throw std::runtime_error("no checkpoints");
        }
        trace.final_value = trace.checkpoints.back();
        return trace;
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw IoError("corrupt trace file " + path + ": " + e.what());
    }
}

}  // namespace rdex
