#pragma once

#include <stdexcept>
#include <string>

namespace paco {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("parse error at line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct DanglingEndpoint : Error {
    using Error::Error;
};

struct NotSimple : Error {
    using Error::Error;
};

struct MissingLink : Error {
    using Error::Error;
};

struct NoPath : Error {
    using Error::Error;
};

struct NoWaypointPath : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct NotConcatenable : Error {
    using Error::Error;
};

struct PidSpaceExhausted : Error {
    int needed;
    int available;
    PidSpaceExhausted(int needed_, int available_)
        : Error("pid space exhausted: need " + std::to_string(needed_) + ", have " +
                std::to_string(available_)),
          needed(needed_), available(available_) {}
};

struct NoMatch : Error {
    using Error::Error;
};

struct LoopDetected : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

}  // namespace paco
