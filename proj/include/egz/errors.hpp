#pragma once

#include <stdexcept>
#include <string>

namespace egz {

// Bad arguments, malformed files, out-of-domain parameters. CLI exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Work or memory budget exceeded. CLI exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Q >= 1, so E[Z] >= 1 at every N >= kn and the first-moment bound holds
// only in the vacuous regime N < kn.
class VacuousBoundError : public InputError {
public:
    explicit VacuousBoundError(const std::string& what) : InputError(what) {}
};

} // namespace egz
