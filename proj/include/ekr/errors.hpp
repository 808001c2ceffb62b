#pragma once

#include <stdexcept>
#include <string>

namespace ekr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// perm
struct DegreeMismatch : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// group
struct GroupTooLarge : Error {
  explicit GroupTooLarge(std::size_t cap)
      : Error("group closure exceeds cap " + std::to_string(cap)), cap(cap) {}
  std::size_t cap;
};
struct NeedsEnumeration : Error { using Error::Error; };
struct NotTransitive : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct NotMember : Error { using Error::Error; };

// dergraph / solver / gamma
struct BadConnectionSet : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct NotHomomorphism : Error { using Error::Error; };
struct BadWitness : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct BadFiber : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// construct
struct BadDivisor : Error { using Error::Error; };
struct NoUniqueBlock : Error { using Error::Error; };
struct InternalInvariantViolation : Error { using Error::Error; };

/// A post-hoc structural check on a constructed group failed; `law` names it.
struct ConstructionInvalid : Error {
  ConstructionInvalid(std::string law_name, const std::string& detail)
      : Error("construction invalid: " + law_name + ": " + detail), law(std::move(law_name)) {}
  std::string law;
};

}  // namespace ekr
