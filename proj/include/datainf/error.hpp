#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace datainf {

enum class Errc {
  InvalidArgument,
  DimensionMismatch,
  NonSquare,
  RankDeficient,
  NotObservable,
  NotSiso,
  NoVectorRelativeDegree,
  NotMinimal,
  SingularG,
  InfeasibleConstraints,
  WindowTooLong,
  IndexOutOfRange,
  DataTooShort,
  Infeasible,
  NotUnique,
  NotPersistentlyExciting,
  ContinuationNotUnique,
  DimensionMismatchZD,
  ShellMismatch,
  NoBranchMatch,
  AmbiguousBranch,
  DuplicateAlias,
  Defective,
  NearSingularIntegral,
  ValidationFailed,
  RankDeficientHankel,
  MarkovMismatch,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// Single exception type of the library; `code()` names the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace datainf
