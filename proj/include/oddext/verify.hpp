#pragma once

// Exact identity suite shared by the `verify` subcommand and the tests.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oddext {

struct VerifyOptions {
  int n = 3;
  int max_q = -1; ///< negative: all degrees 0..n
  int max_m = 2;
  int trials = 5;
  std::uint64_t seed = 1;
};

struct IdentityResult {
  std::string name;
  std::size_t checks = 0;
  bool passed = true;
  /// JSON of the first failing input, empty when passed.
  std::string witness;
};

struct VerifyReport {
  std::vector<IdentityResult> results;
  /// d* = s(n, q) * d * on q-forms, keyed by q.
  std::map<int, int> codifferential_signs;
  /// Hodge-dual system map for solutions: S(*v) = a * g and S*(*v) = b * f,
  /// keyed by (q, m), value (a, b).
  std::map<std::pair<int, int>, std::pair<int, int>> dual_system_signs;

  bool passed() const;
  std::string text() const;
};

/// Runs every identity over random exact instances in both backends.
/// trials = 0 yields an empty, passing report.
VerifyReport run_verify(const VerifyOptions& options);

} // namespace oddext
