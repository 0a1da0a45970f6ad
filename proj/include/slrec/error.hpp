#pragma once

#include <stdexcept>
#include <string>

namespace slrec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SLREC_ERROR(Name)                                   \
    class Name : public Error {                             \
    public:                                                 \
        explicit Name(const std::string& msg = #Name)       \
            : Error(std::string(#Name ": ") + msg) {}       \
    };

SLREC_ERROR(NotPrime)
SLREC_ERROR(ReducibleModulus)
SLREC_ERROR(DivisionByZero)
SLREC_ERROR(FactorizationTooLarge)
SLREC_ERROR(ShapeMismatch)
SLREC_ERROR(Singular)
SLREC_ERROR(AmbientMismatch)
SLREC_ERROR(DependentInput)
SLREC_ERROR(NotInvariant)
SLREC_ERROR(UninitializedSlotRead)
SLREC_ERROR(SingularInverse)
SLREC_ERROR(WiringIncomplete)
SLREC_ERROR(ParseError)
SLREC_ERROR(EmptyGenerators)
SLREC_ERROR(BudgetExhausted)
SLREC_ERROR(UnsupportedDegreeParity)
SLREC_ERROR(SolveFailed)
SLREC_ERROR(EliminationResidue)

#undef SLREC_ERROR

}  // namespace slrec
