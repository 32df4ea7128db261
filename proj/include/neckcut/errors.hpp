#pragma once

#include <stdexcept>
#include <string>

namespace neckcut {

// Common base so callers (CLI, bindings) can map any domain failure to a
// stable error name.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(msg.empty() ? name : name + ": " + msg),
          name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define NECKCUT_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& msg = "") : Error(#Name, msg) {} \
    }

// polynomial ring
NECKCUT_DEFINE_ERROR(VarTableMismatch);
NECKCUT_DEFINE_ERROR(UnknownVariable);
NECKCUT_DEFINE_ERROR(UnboundVariable);
NECKCUT_DEFINE_ERROR(ParseError);

// Frobenius systems
NECKCUT_DEFINE_ERROR(SystemMismatch);
NECKCUT_DEFINE_ERROR(InternalInconsistency);
NECKCUT_DEFINE_ERROR(RankTooSmall);
NECKCUT_DEFINE_ERROR(NotInvertible);
NECKCUT_DEFINE_ERROR(RootsNotDistinct);

// symmetric functions
NECKCUT_DEFINE_ERROR(TooManyParts);
NECKCUT_DEFINE_ERROR(NotSymmetric);
NECKCUT_DEFINE_ERROR(NvarsMismatch);
NECKCUT_DEFINE_ERROR(BOutOfRange);

// surface evaluation
NECKCUT_DEFINE_ERROR(MarkDegreeOutOfRange);
NECKCUT_DEFINE_ERROR(ClosedFormMismatch);

// skein calculator
NECKCUT_DEFINE_ERROR(PatternMismatch);
NECKCUT_DEFINE_ERROR(SizeBound);
NECKCUT_DEFINE_ERROR(RootNotRepeated);
NECKCUT_DEFINE_ERROR(ParamsInconsistent);

// generic misuse (bad arguments that are not a domain failure)
NECKCUT_DEFINE_ERROR(UsageError);

#undef NECKCUT_DEFINE_ERROR

} // namespace neckcut
