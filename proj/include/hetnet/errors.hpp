#ifndef HETNET_ERRORS_HPP
#define HETNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hetnet {

// Invalid argument outside a function's mathematical domain.
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine failed to reach its accuracy target.
struct integration_error : std::runtime_error {
    explicit integration_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant was violated (sign of a bug, not of bad input).
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

// Simulation could not produce a valid sample (e.g. degenerate geometry).
struct simulation_error : std::runtime_error {
    explicit simulation_error(const std::string& what) : std::runtime_error(what) {}
};

// Experiment configuration is malformed or inconsistent.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A computational engine failed on a valid configuration; the message
// carries the grid point for context.
struct engine_error : std::runtime_error {
    explicit engine_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hetnet

#endif
