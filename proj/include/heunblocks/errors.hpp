#ifndef HEUNBLOCKS_ERRORS_HPP
#define HEUNBLOCKS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heunblocks {

// Base for every library error. `code()` is a stable machine-readable tag
// used by the CLI to map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define HEUNBLOCKS_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                             \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

HEUNBLOCKS_DEFINE_ERROR(DivisionByZero);
HEUNBLOCKS_DEFINE_ERROR(ParameterSpaceMismatch);
HEUNBLOCKS_DEFINE_ERROR(UnknownSymbol);
HEUNBLOCKS_DEFINE_ERROR(GridMismatch);
HEUNBLOCKS_DEFINE_ERROR(OffsetMismatch);
HEUNBLOCKS_DEFINE_ERROR(LeadingCoefficientZero);
HEUNBLOCKS_DEFINE_ERROR(LeadingCoefficientNotOne);
HEUNBLOCKS_DEFINE_ERROR(NonSquareLeadingCoefficient);
HEUNBLOCKS_DEFINE_ERROR(NotLaurent);
HEUNBLOCKS_DEFINE_ERROR(DivergentLimit);
HEUNBLOCKS_DEFINE_ERROR(PoleInClassicalLimit);
HEUNBLOCKS_DEFINE_ERROR(NonrealClassicalCoefficient);
HEUNBLOCKS_DEFINE_ERROR(GramSingular);
HEUNBLOCKS_DEFINE_ERROR(NonlinearOrderEquation);
HEUNBLOCKS_DEFINE_ERROR(ResonantDenominator);
HEUNBLOCKS_DEFINE_ERROR(UnsupportedEquation);
HEUNBLOCKS_DEFINE_ERROR(EvenResidueNonzero);
HEUNBLOCKS_DEFINE_ERROR(NoBSRescaling);
HEUNBLOCKS_DEFINE_ERROR(ParseError);

#undef HEUNBLOCKS_DEFINE_ERROR

} // namespace heunblocks

#endif
