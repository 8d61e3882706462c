#pragma once

#include <stdexcept>

namespace btm {

// Error taxonomy used across the library:
//   invalid_parameter      -- argument outside the documented domain
//   precondition_violation -- object state does not support the call
//                             (e.g. a site is not materialized)
//   resource_limit         -- the operation would exceed a configured budget
//   numerical_failure      -- a numerical routine could not deliver the
//                             requested accuracy

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct precondition_violation : std::logic_error {
    using std::logic_error::logic_error;
};

struct resource_limit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numerical_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace btm
