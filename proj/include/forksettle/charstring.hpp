#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace forksettle {

/// Leader-election outcome per slot: 0 = unique honest leader,
/// 1 = adversarial (or multiple) leaders.
///
/// Slots are 1-based. Slot 0 is the genesis slot and is never stored;
/// it only exists as the root label of a Fork.
class CharString {
 public:
  CharString() = default;
  explicit CharString(std::vector<std::uint8_t> bits);

  /// Parses ASCII '0'/'1' text; a single trailing newline is accepted.
  static CharString parse(std::string_view text);
  static CharString zeros(std::size_t n);
  static CharString ones(std::size_t n);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  /// 0-based bit access.
  int operator[](std::size_t i) const noexcept { return bits_[i]; }
  /// 1-based slot access; slot must lie in [1, size()].
  int slot(std::size_t t) const noexcept { return bits_[t - 1]; }
  bool honest(std::size_t t) const noexcept { return bits_[t - 1] == 0; }

  void push_back(int bit);
  CharString prefix(std::size_t m) const;
  CharString suffix_from(std::size_t m) const;
  CharString concat(const CharString& other) const;

  std::size_t count_ones() const noexcept;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::string to_string() const;

  friend bool operator==(const CharString&, const CharString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Pr[bit = 1] = alpha, independently per slot.
struct BernoulliParams {
  double alpha = 0.0;
  std::size_t n = 0;

  static BernoulliParams from_epsilon(double eps, std::size_t n) { return {(1.0 - eps) / 2.0, n}; }
};

/// Adversarially conditioned distribution: the callback maps a prefix to
/// Pr[next bit = 1 | prefix]. The callback must be a pure function of the
/// prefix so that draws replay from the seed alone.
struct MartingaleSource {
  std::function<double(const CharString&)> prob_one;
  double epsilon = 0.0;

  double bound() const noexcept { return (1.0 - epsilon) / 2.0; }
};

CharString sample_bernoulli(const BernoulliParams& params, std::uint64_t seed);

/// Throws MartingaleViolation as soon as the callback exceeds (1 - eps) / 2.
CharString sample_martingale(const MartingaleSource& source, std::size_t n, std::uint64_t seed);

/// Pointwise order: a <= b iff every 1 of a is a 1 of b. Throws LengthMismatch.
bool leq(const CharString& a, const CharString& b);

/// All 2^n strings of length n, in binary counting order (slot 1 is the
/// most significant bit).
std::vector<CharString> all_strings(std::size_t n);

}  // namespace forksettle
