#pragma once

#include <stdexcept>
#include <string>

namespace qdm {

// Error taxonomy used across the library. Every failure mode callers are
// expected to handle gets its own type; messages carry the offending data.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAGroup : Error {
    explicit NotAGroup(const std::string& msg) : Error("NotAGroup: " + msg) {}
};

struct GroupMismatch : Error {
    explicit GroupMismatch(const std::string& msg) : Error("GroupMismatch: " + msg) {}
};

struct DecompositionFailed : Error {
    explicit DecompositionFailed(const std::string& msg) : Error("DecompositionFailed: " + msg) {}
};

struct TooSmall : Error {
    explicit TooSmall(const std::string& msg) : Error("TooSmall: " + msg) {}
};

struct EndpointMismatch : Error {
    explicit EndpointMismatch(const std::string& msg) : Error("EndpointMismatch: " + msg) {}
};

struct EdgeReuse : Error {
    explicit EdgeReuse(const std::string& msg) : Error("EdgeReuse: " + msg) {}
};

struct EmptyRibbon : Error {
    explicit EmptyRibbon(const std::string& msg) : Error("EmptyRibbon: " + msg) {}
};

struct BoundaryTouched : Error {
    explicit BoundaryTouched(const std::string& msg) : Error("BoundaryTouched: " + msg) {}
};

struct Stuck : Error {
    explicit Stuck(const std::string& msg) : Error("Stuck: " + msg) {}
};

struct DimensionBudgetExceeded : Error {
    explicit DimensionBudgetExceeded(const std::string& msg)
        : Error("DimensionBudgetExceeded: " + msg) {}
};

struct GeometryInfeasible : Error {
    explicit GeometryInfeasible(const std::string& msg) : Error("GeometryInfeasible: " + msg) {}
};

}  // namespace qdm
