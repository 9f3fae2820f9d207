#pragma once

#include <string>
#include <string_view>

#include "structure.hpp"

namespace dvw {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kExitPass = 0, kExitFailure = 1, kExitInputError = 2, kExitInternal = 3 };

struct RunOptions {
  Bounds bounds;
  bool json = true;
  /// Period of the universe for `maximal`; 0 means the fragment period.
  unsigned universe = 0;
};

struct RunResult {
  int exitCode = kExitPass;
  std::string output;
};

/// Verbs: check-proximity, check-morphism, check-extension, compose, ends,
/// dualize, roundtrip, equivalence, maximal, example-3-3.
RunResult runCommand(std::string_view verb, std::string_view input, const RunOptions& options);

bool knownVerb(std::string_view verb);

}  // namespace dvw
