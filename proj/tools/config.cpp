#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kpzlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") return HUGE_VAL;
    if (t == "-inf") return -HUGE_VAL;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0' || errno == ERANGE || std::isnan(v))
        throw config_error("key '" + key + "': '" + text + "' is not a number");
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0' || errno == ERANGE)
        throw config_error("key '" + key + "': '" + text + "' is not an integer");
    return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 0);
    if (t.empty() || t[0] == '-' || *end != '\0' || errno == ERANGE)
        throw config_error("key '" + key + "': '" + text + "' is not a seed");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string run_config::str(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string run_config::str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw config_error("missing key '" + key + "'");
    return it->second;
}

double run_config::num(const std::string& key, double fallback) const {
    return has(key) ? parse_double(key, str(key)) : fallback;
}

double run_config::num(const std::string& key) const { return parse_double(key, str(key)); }

std::int64_t run_config::integer(const std::string& key, std::int64_t fallback) const {
    return has(key) ? parse_int(key, str(key)) : fallback;
}

std::int64_t run_config::integer(const std::string& key) const { return parse_int(key, str(key)); }

std::vector<double> run_config::num_list(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& s : split_list(str(key))) out.push_back(parse_double(key, s));
    return out;
}

std::vector<std::int64_t> run_config::int_list(const std::string& key, std::vector<std::int64_t> fallback) const {
    if (!has(key)) return fallback;
    std::vector<std::int64_t> out;
    for (const auto& s : split_list(str(key))) out.push_back(parse_int(key, s));
    return out;
}

std::vector<std::string> run_config::str_list(const std::string& key, std::vector<std::string> fallback) const {
    return has(key) ? split_list(str(key)) : fallback;
}

std::uint64_t run_config::seed(std::uint64_t fallback) const {
    if (const char* env = std::getenv("KPZLAB_SEED"); env != nullptr && *env != '\0')
        return parse_seed("KPZLAB_SEED", env);
    return has("seed") ? parse_seed("seed", str("seed")) : fallback;
}

void run_config::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : values_)
        if (allowed.count(k) == 0) throw config_error("unknown key '" + k + "'");
}

void apply_override(run_config& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw config_error("expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) throw config_error("empty key in '" + assignment + "'");
    cfg.set(key, trim(assignment.substr(eq + 1)));
}

run_config parse_config_text(const std::string& text) {
    run_config cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
        if (cfg.has(key)) throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.set(key, trim(line.substr(eq + 1)));
    }
    return cfg;
}

run_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<region> parse_regions(const std::string& key, const std::string& text) {
    std::vector<region> out;
    for (const auto& item : split_list(text)) {
        std::vector<double> v;
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ':')) v.push_back(parse_double(key, part));
        if (v.size() != 4) throw config_error("key '" + key + "': region '" + item + "' needs x0:x1:s0:s1");
        out.push_back({v[0], v[1], v[2], v[3]});
    }
    if (out.empty()) throw config_error("key '" + key + "' lists no regions");
    return out;
}

maxineq_config to_maxineq(const run_config& cfg) {
    maxineq_config m;
    m.name = cfg.str("name", "maxineq");
    const std::string model = cfg.str("model", "exponential");
    if (model == "exponential") m.model = model_spec::exponential();
    else if (model == "geometric") m.model = model_spec::geometric(cfg.num("gamma", 1.0));
    else throw config_error("maximal inequality model must be exponential or geometric");
    m.rho = cfg.num("rho", 1.0);
    m.n = cfg.num("n", 128.0);
    m.xp = cfg.num("xp", 0.0);
    m.sp = cfg.num("sp", 0.0);
    m.xq = cfg.num("xq", 0.0);
    m.sq = cfg.num("sq", 1.0);
    m.A = parse_regions("A", cfg.str("A"));
    m.B = parse_regions("B", cfg.str("B"));
    m.c = cfg.num("c", 0.0);
    m.eps = cfg.num("eps", 0.25);
    m.trials = cfg.integer("trials", 4000);
    m.seed = cfg.seed(1);
    return m;
}

}  // namespace kpzlab::cli
