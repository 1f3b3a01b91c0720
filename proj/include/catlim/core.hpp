#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace catlim {

// Error kinds double as CLI exit-code selectors: overflow errors map to
// exit code 3, verification failures to 2.
enum class ErrorKind {
  Validation,
  SizeOverflow,
  ClosureOverflow,
  NoLift,
  Syntax,
  UnresolvedReference,
  UnsupportedCombination,
  TightnessViolation,
  ClosureViolation,
};

class CatError : public std::runtime_error {
 public:
  CatError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::ClosureOverflow: return "ClosureOverflow";
    case ErrorKind::NoLift: return "NoLift";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorKind::TightnessViolation: return "TightnessViolation";
    case ErrorKind::ClosureViolation: return "ClosureViolation";
  }
  return "CatError";
}

// Size guards for enumeration and saturation.  Every operation that can
// blow up takes a Caps (defaulted), so library calls stay pure.
struct Caps {
  std::size_t max_morphisms = 10000;   // saturation / quotient bound
  std::size_t max_objects = 100000;    // enumerated category object bound
  std::size_t max_search = 20000000;   // backtracking node bound
};

inline void check_object_cap(std::size_t n, const Caps& caps,
                             const std::string& where) {
  if (n > caps.max_objects)
    throw CatError(ErrorKind::SizeOverflow,
                   where + ": object count " + std::to_string(n) +
                       " exceeds cap " + std::to_string(caps.max_objects));
}

}  // namespace catlim
