#pragma once

#include <stdexcept>
#include <string>

namespace kv {

// Operands live over different alphabets or carry different degree cuts.
class ContextMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A tensor-algebra element was expected to be a Lie element (or a group-like
// element with Lie logarithm) and is not.
class NotLieError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A degree-by-degree solver met an inconsistent linear system.  The message
// names the offending weight.
class InconsistentSystem : public std::runtime_error {
public:
    InconsistentSystem(int weight, const std::string& what)
        : std::runtime_error(what), weight_(weight)
    {
    }
    int weight() const noexcept { return weight_; }

private:
    int weight_;
};

}  // namespace kv
