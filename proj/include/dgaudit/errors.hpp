// Typed error conditions shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace dgaudit {

enum class Errc {
  FieldMismatch,
  ShapeError,
  VariableMismatch,
  NotPrime,
  NotLocal,
  NotArtinian,
  InfiniteDimensional,
  CapExceeded,
  LiftFailure,
  AxiomFailure,
  ZeroModule,
  NotMinimal,
  MinimalityViolation,
  WindowInverted,
  AlgebraMismatch,
  InternalInconsistency,
  SyntaxError,
  NameError,
  Usage,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ShapeError: return "ShapeError";
    case Errc::VariableMismatch: return "VariableMismatch";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotLocal: return "NotLocal";
    case Errc::NotArtinian: return "NotArtinian";
    case Errc::InfiniteDimensional: return "InfiniteDimensional";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::LiftFailure: return "LiftFailure";
    case Errc::AxiomFailure: return "AxiomFailure";
    case Errc::ZeroModule: return "ZeroModule";
    case Errc::NotMinimal: return "NotMinimal";
    case Errc::MinimalityViolation: return "MinimalityViolation";
    case Errc::WindowInverted: return "WindowInverted";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NameError: return "NameError";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace dgaudit
