#include "btm/budget.hpp"

#include <cstdlib>
#include <string>

#include "btm/errors.hpp"

namespace btm {

namespace {

unsigned long long parse_u64(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    unsigned long long out = 0;
    try {
        out = std::stoull(v, &pos);
    } catch (const std::exception&) {
        throw invalid_parameter("BTM_LAB_BUDGET: bad value for " + key + ": '" + v + "'");
    }
    if (pos != v.size() || v.empty())
        throw invalid_parameter("BTM_LAB_BUDGET: bad value for " + key + ": '" + v + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw invalid_parameter("BTM_LAB_BUDGET: bad value for " + key + ": '" + v + "'");
    }
    if (pos != v.size() || v.empty() || !(out > 0))
        throw invalid_parameter("BTM_LAB_BUDGET: bad value for " + key + ": '" + v + "'");
    return out;
}

// lazy so a malformed env var throws inside a catchable call, not during
// static initialization
Budget& storage() {
    static Budget b = Budget::from_env();
    return b;
}

} // namespace

Budget Budget::from_env() {
    const char* env = std::getenv("BTM_LAB_BUDGET");
    if (!env || !*env) return Budget{};
    return parse(env);
}

Budget Budget::parse(const std::string& s) { return parse(s, Budget{}); }

Budget Budget::parse(const std::string& s, Budget b) {
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        std::string item = s.substr(start, end - start);
        start = end + 1;
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw invalid_parameter("BTM_LAB_BUDGET: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (key == "landscape_sites")
            b.landscape_sites = parse_u64(key, val);
        else if (key == "eigen_n")
            b.eigen_n = parse_u64(key, val);
        else if (key == "uniformization_t_max")
            b.uniformization_t_max = parse_double(key, val);
        else if (key == "uniformization_steps")
            b.uniformization_steps = parse_u64(key, val);
        else if (key == "window_doublings")
            b.window_doublings = static_cast<int>(parse_u64(key, val));
        else if (key == "mc_paths")
            b.mc_paths = parse_u64(key, val);
        else
            throw invalid_parameter("BTM_LAB_BUDGET: unknown key '" + key + "'");
    }
    return b;
}

const Budget& budget() { return storage(); }

void set_budget(const Budget& b) { storage() = b; }

} // namespace btm
