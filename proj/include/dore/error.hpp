#ifndef DORE_ERROR_HPP
#define DORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dore {

// Base class for all engine errors. Everything thrown by the library
// derives from this so the CLI can map failures onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct RingMismatch : Error {
    using Error::Error;
};

// A rewrite ran past its step cap. For validated presentations this cannot
// happen; it signals an order-violating rule that slipped past validation.
struct NonTerminating : Error {
    using Error::Error;
};

struct IterationCap : Error {
    using Error::Error;
};

struct WellDefinednessFailure : Error {
    using Error::Error;
};

struct NotApplicable : Error {
    using Error::Error;
};

struct PreconditionFailure : Error {
    using Error::Error;
};

struct DecompositionMismatch : Error {
    using Error::Error;
};

struct SourceNotBuildable : Error {
    using Error::Error;
};

struct PoolTooLarge : Error {
    using Error::Error;
};

struct UnknownFixture : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(int line_, int column_, const std::string& what_)
        : Error("syntax error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + what_),
          line(line_), column(column_) {}
};

struct ResolutionError : Error {
    using Error::Error;
};

struct ArityError : Error {
    using Error::Error;
};

} // namespace dore

#endif
