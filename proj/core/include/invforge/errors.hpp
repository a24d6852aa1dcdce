#ifndef INVFORGE_ERRORS_HPP
#define INVFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace invforge {

// Base of every error thrown by the library. `code()` is a stable
// machine-readable identifier; what() carries the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define INVFORGE_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
    }

// gf
INVFORGE_DEFINE_ERROR(NotPrime);
INVFORGE_DEFINE_ERROR(DegreeOutOfRange);
INVFORGE_DEFINE_ERROR(CapExceeded);
INVFORGE_DEFINE_ERROR(SpecMismatch);
INVFORGE_DEFINE_ERROR(DivisionByZero);

// mpoly
INVFORGE_DEFINE_ERROR(BadExponentArity);
INVFORGE_DEFINE_ERROR(NotDivisible);
INVFORGE_DEFINE_ERROR(NotSquare);
INVFORGE_DEFINE_ERROR(MissingAssignment);
INVFORGE_DEFINE_ERROR(GridMismatch);
INVFORGE_DEFINE_ERROR(ParseError);

// ratexpr
INVFORGE_DEFINE_ERROR(ZeroDenominator);
INVFORGE_DEFINE_ERROR(DegreeBoundOverflow);

// groups
INVFORGE_DEFINE_ERROR(OddSizeAlternate);
INVFORGE_DEFINE_ERROR(EvenCharForbidden);
INVFORGE_DEFINE_ERROR(SizeMismatch);
INVFORGE_DEFINE_ERROR(BudgetExceeded);
INVFORGE_DEFINE_ERROR(BadForm);
INVFORGE_DEFINE_ERROR(NotInGroup);

// invariants
INVFORGE_DEFINE_ERROR(IndexOutOfRange);
INVFORGE_DEFINE_ERROR(BadRemovedIndex);
INVFORGE_DEFINE_ERROR(ZeroCofactor);

// classical
INVFORGE_DEFINE_ERROR(KindParamMismatch);
INVFORGE_DEFINE_ERROR(WrongFieldForUnitary);
INVFORGE_DEFINE_ERROR(BranchUnsupported);

// cli
INVFORGE_DEFINE_ERROR(ConfigInvalid);

#undef INVFORGE_DEFINE_ERROR

} // namespace invforge

#endif
