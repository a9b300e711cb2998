#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "forksettle/charstring.hpp"

namespace forksettle {

/// Relative-margin implementation under test: μ_x(y).
using MarginFn = std::function<std::int64_t(const CharString& x, const CharString& y)>;

struct VerifyOptions {
  std::size_t max_len = 6;
  /// Defaults to relative_margin(); tests swap in a faulty one to check
  /// that the harness notices.
  MarginFn margin;
  bool check_canonical = true;
};

struct VerifyReport {
  std::size_t strings = 0;
  std::size_t split_checks = 0;
  std::size_t canonical_checks = 0;
};

/// For every w with |w| <= max_len and every split, compares ρ and μ_x(y)
/// against brute-force enumeration of closed forks, and checks the
/// canonical fork. Throws MismatchFound on the first disagreement and
/// TooLong if max_len exceeds the enumeration guard.
VerifyReport verify_recursion(const VerifyOptions& options);

/// Off-by-one relative margin used to exercise the harness.
std::int64_t corrupted_relative_margin(const CharString& x, const CharString& y);

}  // namespace forksettle
