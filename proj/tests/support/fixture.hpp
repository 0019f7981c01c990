#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cbrdiag/codec.hpp"

namespace cbrdiag::testing {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(CBRDIAG_DATA_DIR) + "/" + name;
}

/// The engine case study: one target and three sources.
inline const CaseBase& engine_case_base() {
    static const CaseBase cb = decode_case_base(read_file(data_path("engine_case_base.json")));
    return cb;
}

inline const Case& engine_case(const std::string& id) {
    const Case* c = engine_case_base().find(id);
    if (!c) throw std::runtime_error("fixture has no case " + id);
    return *c;
}

/// Profile of the engine temperature descriptor.
inline FuzzyProfile temperature_profile() {
    return FuzzyProfile{"ds3", 0.0, 100.0, 80.0, 20.0, {{"A1", 60.0, 79.0}, {"A2", 81.0, 100.0}}};
}

} // namespace cbrdiag::testing
