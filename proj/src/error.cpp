#include "datainf/error.hpp"

namespace datainf {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonSquare: return "NonSquare";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotObservable: return "NotObservable";
    case Errc::NotSiso: return "NotSiso";
    case Errc::NoVectorRelativeDegree: return "NoVectorRelativeDegree";
    case Errc::NotMinimal: return "NotMinimal";
    case Errc::SingularG: return "SingularG";
    case Errc::InfeasibleConstraints: return "InfeasibleConstraints";
    case Errc::WindowTooLong: return "WindowTooLong";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DataTooShort: return "DataTooShort";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NotUnique: return "NotUnique";
    case Errc::NotPersistentlyExciting: return "NotPersistentlyExciting";
    case Errc::ContinuationNotUnique: return "ContinuationNotUnique";
    case Errc::DimensionMismatchZD: return "DimensionMismatchZD";
    case Errc::ShellMismatch: return "ShellMismatch";
    case Errc::NoBranchMatch: return "NoBranchMatch";
    case Errc::AmbiguousBranch: return "AmbiguousBranch";
    case Errc::DuplicateAlias: return "DuplicateAlias";
    case Errc::Defective: return "Defective";
    case Errc::NearSingularIntegral: return "NearSingularIntegral";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::RankDeficientHankel: return "RankDeficientHankel";
    case Errc::MarkovMismatch: return "MarkovMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace datainf
