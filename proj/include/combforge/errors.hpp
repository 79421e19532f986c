#pragma once

#include <stdexcept>
#include <string>

namespace combforge {

// Base class for all recoverable errors raised by the library. The kind()
// tag is stable and machine-readable; the CLI emits it in error records.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define COMBFORGE_ERROR_CLASS(Name)                                  \
    class Name : public Error {                                      \
    public:                                                          \
        using Error::Error;                                          \
        const char* kind() const noexcept override { return #Name; } \
    }

COMBFORGE_ERROR_CLASS(ValidationError);   // a type invariant is violated
COMBFORGE_ERROR_CLASS(NonConvergence);    // iterative flux solve failed
COMBFORGE_ERROR_CLASS(InvalidGrid);       // time grid does not divide the drive period
COMBFORGE_ERROR_CLASS(NoPulses);          // pulse detection on an (almost) silent record
COMBFORGE_ERROR_CLASS(OutOfRange);        // switch-time arccos argument outside [-1, 1]
COMBFORGE_ERROR_CLASS(NonCommensurate);   // record does not span whole drive periods
COMBFORGE_ERROR_CLASS(BandwidthExceeded); // harmonic beyond the usable grid bandwidth
COMBFORGE_ERROR_CLASS(MixedConfig);       // spectra with incompatible parameters
COMBFORGE_ERROR_CLASS(BudgetExceeded);    // combined bin grid larger than the cap
COMBFORGE_ERROR_CLASS(ParseError);        // config file is not valid JSON
COMBFORGE_ERROR_CLASS(IoError);           // file system failure, message names the path

#undef COMBFORGE_ERROR_CLASS

} // namespace combforge
