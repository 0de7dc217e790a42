#pragma once

#include <stdexcept>
#include <string>

namespace bnsf {

// Nonpositive specific volume or temperature. Positivity loss is a diagnostic
// signal, so it is always a hard error, never clamped.
struct PositivityError : std::domain_error {
    int node = -1;
    double value = 0.0;
    PositivityError(const std::string& what, int node_ = -1, double value_ = 0.0)
        : std::domain_error(what), node(node_), value(value_) {}
};

// The time stepper hit the dt floor without producing a converged positive state.
struct NoConvergence : std::runtime_error {
    double t_fail = 0.0;
    double dt_last = 0.0;
    NoConvergence(const std::string& what, double t, double dt)
        : std::runtime_error(what), t_fail(t), dt_last(dt) {}
};

// Malformed or unknown configuration input, with source context.
struct ConfigError : std::runtime_error {
    int line = 0;
    std::string key;
    ConfigError(const std::string& what, int line_ = 0, std::string key_ = "")
        : std::runtime_error(what), line(line_), key(std::move(key_)) {}
};

} // namespace bnsf
