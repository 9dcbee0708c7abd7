#pragma once

#include <stdexcept>
#include <string>

namespace pwlab {

// Bad input file / schema / CLI usage. Mapped to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid config that violates a physics or discretization
// invariant (packet too narrow, momentum out of band, ...). Exit code 3.
struct PhysicsError : std::runtime_error {
    explicit PhysicsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pwlab
