#pragma once

#include <stdexcept>
#include <string>

namespace kpzlab {

class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define KPZLAB_ERROR(name)                                                   \
    class name : public error {                                              \
    public:                                                                  \
        explicit name(const std::string& what) : error(#name, what) {}       \
    }

KPZLAB_ERROR(cycle_error);
KPZLAB_ERROR(empty_ground_set);
KPZLAB_ERROR(unknown_point);
KPZLAB_ERROR(invalid_param);
KPZLAB_ERROR(out_of_window);
KPZLAB_ERROR(k_too_large);
KPZLAB_ERROR(unordered);
KPZLAB_ERROR(out_of_domain);
KPZLAB_ERROR(bad_box);
KPZLAB_ERROR(parity_error);
KPZLAB_ERROR(convention_error);
KPZLAB_ERROR(inadmissible_direction);
KPZLAB_ERROR(window_too_small);
KPZLAB_ERROR(boundary_breach);
KPZLAB_ERROR(empty_sample);
KPZLAB_ERROR(insufficient_data);
KPZLAB_ERROR(invalid_region);
KPZLAB_ERROR(k_range_too_large);
KPZLAB_ERROR(ties_detected);
KPZLAB_ERROR(contract_violation);
KPZLAB_ERROR(invariant_violation);

#undef KPZLAB_ERROR

}  // namespace kpzlab
