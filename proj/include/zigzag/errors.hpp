#pragma once

#include <stdexcept>
#include <string>

namespace zigzag {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Point outside a map's domain, malformed interval, bad index. */
struct DomainError : Error {
    using Error::Error;
};

/* compose(f,g) where the image of g escapes the domain of f. */
struct CompositionError : Error {
    using Error::Error;
};

/* A side of a pointed map is constant; contour machinery does not apply. */
struct DegenerateSideError : Error {
    using Error::Error;
};

/* L(y) requested where the right image does not cover t([y,0]). */
struct NotLiftableError : Error {
    using Error::Error;
};

/* A stated construction hypothesis fails; the message names which one. */
struct HypothesisError : Error {
    using Error::Error;
};

/* A constructed object failed its own certification. Always a bug
   (or an incomplete candidate search); carries a witness description. */
struct InvariantViolation : Error {
    using Error::Error;
};

/* Coordinate prefix is not a thread of the system. */
struct ThreadError : Error {
    ThreadError(const std::string& msg, int lvl) : Error(msg), level(lvl) {}
    int level;
};

/* Text format problems; carries the 1-based line number when known. */
struct ParseError : Error {
    ParseError(const std::string& msg, int ln = 0) : Error(msg), line(ln) {}
    int line;
};

/* Pigeonhole scheduling ran out of depth budget; message holds the census. */
struct BudgetError : Error {
    using Error::Error;
};

} // namespace zigzag
