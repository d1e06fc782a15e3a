#pragma once

#include <stdexcept>
#include <string>

namespace oapl {

// Malformed or schema-violating input (exit code 2 at the CLI).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested analysis cannot run on the data provided (exit code 3).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oapl
