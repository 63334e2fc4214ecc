#include "dabe/error.hpp"

namespace dabe {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InversionOfZero: return "InversionOfZero";
    case Errc::BackendMismatch: return "BackendMismatch";
    case Errc::UnsupportedBackend: return "UnsupportedBackend";
    case Errc::NotPrime: return "NotPrime";
    case Errc::MalformedEncoding: return "MalformedEncoding";
    case Errc::ParamMismatch: return "ParamMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case Errc::IndexNotInSet: return "IndexNotInSet";
    case Errc::EmptyAttributeSet: return "EmptyAttributeSet";
    case Errc::PolicyNotSatisfied: return "PolicyNotSatisfied";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MissingInput: return "MissingInput";
    case Errc::BadConfig: return "BadConfig";
    case Errc::UnassignedAttribute: return "UnassignedAttribute";
    case Errc::MissingState: return "MissingState";
    case Errc::ModelMismatch: return "ModelMismatch";
    case Errc::ForgedOrWrongKey: return "ForgedOrWrongKey";
    case Errc::ScriptExhausted: return "ScriptExhausted";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dabe
