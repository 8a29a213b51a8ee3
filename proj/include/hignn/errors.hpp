#pragma once

#include <stdexcept>
#include <string>

namespace hignn {

struct Error : std::runtime_error {
  Error(const std::string& kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind(kind) {}
  std::string kind;
};

#define HIGNN_ERROR_KIND(Name)                          \
  struct Name : Error {                                 \
    explicit Name(const std::string& msg)               \
        : Error(#Name, msg) {}                          \
  }

HIGNN_ERROR_KIND(SyntaxError);
HIGNN_ERROR_KIND(UnclosedRing);
HIGNN_ERROR_KIND(ValenceError);
HIGNN_ERROR_KIND(AromaticityError);
HIGNN_ERROR_KIND(ShapeMismatch);
HIGNN_ERROR_KIND(DisconnectedSubset);
HIGNN_ERROR_KIND(NonScalarLoss);
HIGNN_ERROR_KIND(DoubleBackward);
HIGNN_ERROR_KIND(AllMasked);
HIGNN_ERROR_KIND(NoValidTask);
HIGNN_ERROR_KIND(EmptyFragmentSet);
HIGNN_ERROR_KIND(ConfigError);
HIGNN_ERROR_KIND(DataError);
HIGNN_ERROR_KIND(NumericError);

#undef HIGNN_ERROR_KIND

}  // namespace hignn
