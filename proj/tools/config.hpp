#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpzlab/stats.hpp"

// Flat key=value run configuration: one key per line, '#' starts a comment,
// lists are written k=a,b,c.
namespace kpzlab::cli {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class run_config {
public:
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const { return values_; }

    std::string str(const std::string& key, const std::string& fallback) const;
    std::string str(const std::string& key) const;  // throws config_error when missing
    double num(const std::string& key, double fallback) const;
    double num(const std::string& key) const;
    std::int64_t integer(const std::string& key, std::int64_t fallback) const;
    std::int64_t integer(const std::string& key) const;
    std::vector<double> num_list(const std::string& key, std::vector<double> fallback) const;
    std::vector<std::int64_t> int_list(const std::string& key, std::vector<std::int64_t> fallback) const;
    std::vector<std::string> str_list(const std::string& key, std::vector<std::string> fallback) const;

    // Config seed, overridden by the KPZLAB_SEED environment variable.
    std::uint64_t seed(std::uint64_t fallback) const;

    // Throws config_error naming the first key outside `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

private:
    std::map<std::string, std::string> values_;
};

run_config parse_config_text(const std::string& text);
run_config load_config(const std::string& path);
// Applies one "key=value" override.
void apply_override(run_config& cfg, const std::string& assignment);

double parse_double(const std::string& key, const std::string& text);
std::int64_t parse_int(const std::string& key, const std::string& text);
std::uint64_t parse_seed(const std::string& key, const std::string& text);
std::vector<std::string> split_list(const std::string& text);

// Regions are written x0:x1:s0:s1 and separated by commas.
std::vector<region> parse_regions(const std::string& key, const std::string& text);

// Maximal-inequality experiment from keys model, gamma, rho, n, xp, sp, xq,
// sq, A, B, c, eps, trials, seed and name.
maxineq_config to_maxineq(const run_config& cfg);

}  // namespace kpzlab::cli
