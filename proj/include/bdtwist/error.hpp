#pragma once

#include <stdexcept>
#include <string>

namespace bdtwist {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BDTWIST_DEFINE_ERROR(name)                                   \
    struct name : Error {                                            \
        explicit name(const std::string& what) : Error(#name ": " + what) {} \
    }

BDTWIST_DEFINE_ERROR(NotAUnit);
BDTWIST_DEFINE_ERROR(NotLaurent);
BDTWIST_DEFINE_ERROR(DivisionByZero);
BDTWIST_DEFINE_ERROR(DomainError);
BDTWIST_DEFINE_ERROR(InvalidRootDatum);
BDTWIST_DEFINE_ERROR(InvalidTriple);
BDTWIST_DEFINE_ERROR(IncompatibleForm);
BDTWIST_DEFINE_ERROR(DegenerateRestriction);
BDTWIST_DEFINE_ERROR(LatticeViolation);
BDTWIST_DEFINE_ERROR(CalibrationFailed);
BDTWIST_DEFINE_ERROR(HeightCapExceeded);
BDTWIST_DEFINE_ERROR(NotInImage);
BDTWIST_DEFINE_ERROR(AmbiguousToral);
BDTWIST_DEFINE_ERROR(UnsupportedLetters);
BDTWIST_DEFINE_ERROR(RelationViolation);
BDTWIST_DEFINE_ERROR(BraidCheckFailed);
BDTWIST_DEFINE_ERROR(DegreeCapExceeded);
BDTWIST_DEFINE_ERROR(InverseCheckFailed);
BDTWIST_DEFINE_ERROR(QYBEFailed);
BDTWIST_DEFINE_ERROR(PreconditionFailed);
BDTWIST_DEFINE_ERROR(InputError);

#undef BDTWIST_DEFINE_ERROR

}  // namespace bdtwist
