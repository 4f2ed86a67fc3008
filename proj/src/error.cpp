#include "fuzzyfuse/error.hpp"

namespace fuzzyfuse {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::NoAdmissibleLambda: return "NoAdmissibleLambda";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonFiniteFitness: return "NonFiniteFitness";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::InvalidModel: return "InvalidModel";
  }
  return "Unknown";
}

}  // namespace fuzzyfuse
