#pragma once

#include <stdexcept>

namespace nilrep {

// A retry or search budget ran out without a verified result.
struct BudgetExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction that should certify by design failed its certification.
struct CertificationError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace nilrep
