// verdict.hpp -- three-valued outcomes of fuel-bounded procedures
#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

// Outcome of a semi-decision. Unknown means the budget (fuel or margin)
// was exhausted before either certificate was found; it is a valid result,
// not an error.
enum class Verdict { CertifiedYes, CertifiedNo, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedYes: return "certified_yes";
        case Verdict::CertifiedNo: return "certified_no";
        default: return "unknown";
    }
}

// Domain errors (bad documents, contract violations, mismatched contexts).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace symdyn
