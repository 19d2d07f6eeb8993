#pragma once

#include <stdexcept>
#include <string>

namespace lamehardy {

// Kernel or algebra evaluation at a point where the quantity is undefined
// (zero displacement, zero vector inverse).
struct singularity_error : std::domain_error {
    explicit singularity_error(const std::string& what) : std::domain_error(what) {}
};

// Off-surface evaluation requested closer to the surface (or to a volume
// grid point) than the quadrature can resolve.
struct near_boundary_error : std::runtime_error {
    explicit near_boundary_error(const std::string& what) : std::runtime_error(what) {}
};

// Trace-equation constants c1 = +/- c2: the gradient reconstruction map is
// structurally singular there and no output is meaningful.
struct degeneracy_error : std::runtime_error {
    explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

// A per-node linear solve lost rank; carries the node index in the message.
struct conditioning_error : std::runtime_error {
    explicit conditioning_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad run parameters, malformed input files, mesh mismatch. CLI exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lamehardy
