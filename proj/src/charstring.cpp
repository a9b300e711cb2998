#include "forksettle/charstring.hpp"

#include <algorithm>
#include <numeric>

#include "forksettle/errors.hpp"
#include "forksettle/rng.hpp"

namespace forksettle {

CharString::CharString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw BadParams("characteristic string bits must be 0 or 1");
  }
}

CharString CharString::parse(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw ParseError(std::string("invalid characteristic-string symbol '") + c + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return CharString(std::move(bits));
}

CharString CharString::zeros(std::size_t n) { return CharString(std::vector<std::uint8_t>(n, 0)); }

CharString CharString::ones(std::size_t n) { return CharString(std::vector<std::uint8_t>(n, 1)); }

void CharString::push_back(int bit) {
  if (bit != 0 && bit != 1) throw BadParams("characteristic string bits must be 0 or 1");
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

CharString CharString::prefix(std::size_t m) const {
  if (m > bits_.size()) throw BadParams("prefix longer than string");
  return CharString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(m)));
}

CharString CharString::suffix_from(std::size_t m) const {
  if (m > bits_.size()) throw BadParams("split beyond end of string");
  return CharString(std::vector<std::uint8_t>(bits_.begin() + static_cast<std::ptrdiff_t>(m), bits_.end()));
}

CharString CharString::concat(const CharString& other) const {
  std::vector<std::uint8_t> out(bits_);
  out.insert(out.end(), other.bits_.begin(), other.bits_.end());
  return CharString(std::move(out));
}

std::size_t CharString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string CharString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

CharString sample_bernoulli(const BernoulliParams& params, std::uint64_t seed) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw BadParams("alpha must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::uint8_t> bits(params.n);
  for (auto& b : bits) b = rng.bernoulli(params.alpha) ? 1 : 0;
  return CharString(std::move(bits));
}

CharString sample_martingale(const MartingaleSource& source, std::size_t n, std::uint64_t seed) {
  if (!source.prob_one) throw BadParams("martingale source has no callback");
  if (!(source.epsilon > 0.0 && source.epsilon < 1.0)) throw BadParams("epsilon must lie in (0, 1)");
  // Rounding slack only; anything visibly above the bound is a model error.
  const double limit = source.bound() + 1e-12;
  Rng rng(seed);
  CharString w;
  for (std::size_t t = 0; t < n; ++t) {
    const double p = source.prob_one(w);
    if (!(p >= 0.0 && p <= 1.0)) throw BadParams("martingale callback returned a non-probability");
    if (p > limit) {
      throw MartingaleViolation("Pr[w_" + std::to_string(t + 1) + " = 1 | prefix] = " + std::to_string(p) +
                                " exceeds (1 - eps)/2 = " + std::to_string(source.bound()));
    }
    w.push_back(rng.bernoulli(p) ? 1 : 0);
  }
  return w;
}

bool leq(const CharString& a, const CharString& b) {
  if (a.size() != b.size()) throw LengthMismatch("leq needs strings of equal length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 1 && b[i] == 0) return false;
  }
  return true;
}

std::vector<CharString> all_strings(std::size_t n) {
  if (n > 24) throw BadParams("refusing to materialise more than 2^24 strings");
  std::vector<CharString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((code >> (n - 1 - i)) & 1U);
    out.emplace_back(std::move(bits));
  }
  return out;
}

}  // namespace forksettle
