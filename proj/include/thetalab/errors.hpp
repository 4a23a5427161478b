#pragma once

#include <stdexcept>
#include <string>

namespace thetalab {

/// An input violated an operation's precondition (CLI exit code 2).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A memory or size budget could not be met (CLI exit code 3).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thetalab
