#include "forksettle/verify.hpp"

#include <string>

#include "forksettle/adversary.hpp"
#include "forksettle/enumerate.hpp"
#include "forksettle/errors.hpp"
#include "forksettle/margin.hpp"

namespace forksettle {

std::int64_t corrupted_relative_margin(const CharString& x, const CharString& y) {
  const std::int64_t m = relative_margin(x, y);
  // Wrong only after a long adversarial tail, so short cases still agree.
  return (y.size() >= 2 && y[y.size() - 1] == 1 && y[y.size() - 2] == 1) ? m + 1 : m;
}

VerifyReport verify_recursion(const VerifyOptions& options) {
  if (options.max_len > kMaxEnumerationLength) {
    throw TooLong("verification is limited to length " + std::to_string(kMaxEnumerationLength));
  }
  const MarginFn margin = options.margin ? options.margin : MarginFn(relative_margin);
  VerifyReport rep;
  for (std::size_t n = 0; n <= options.max_len; ++n) {
    for (const auto& w : all_strings(n)) {
      ++rep.strings;
      const auto brute = brute_margins(w);
      if (brute.rho != rho(w)) {
        throw MismatchFound("rho(" + w.to_string() + "): recursion " + std::to_string(rho(w)) + ", brute force " +
                            std::to_string(brute.rho));
      }
      for (std::size_t m = 0; m <= n; ++m) {
        const auto got = margin(w.prefix(m), w.suffix_from(m));
        ++rep.split_checks;
        if (got != brute.relative[m]) {
          throw MismatchFound("relative margin of " + w.to_string() + " at split " + std::to_string(m) +
                              ": recursion " + std::to_string(got) + ", brute force " +
                              std::to_string(brute.relative[m]));
        }
      }
      if (options.check_canonical) {
        const auto report = verify_canonical(build_canonical_fork(w), w);
        ++rep.canonical_checks;
        if (!report.ok()) throw MismatchFound("canonical fork for " + w.to_string() + ": " + report.message);
      }
    }
  }
  return rep;
}

}  // namespace forksettle
