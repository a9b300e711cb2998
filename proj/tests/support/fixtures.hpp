#pragma once

#include <cstdint>

#include "forksettle/charstring.hpp"
#include "forksettle/fork.hpp"

namespace fixtures {

// The introductory fork for w = 010100110: three tines of length 5, 5
// and 3 hanging off the genesis block.
inline forksettle::CharString intro_string() { return forksettle::CharString::parse("010100110"); }
forksettle::Fork intro_fork();

// Balanced fork for 010101 (tines 0-2-3-6 and 0-1-4-5).
inline forksettle::CharString balanced_string() { return forksettle::CharString::parse("010101"); }
forksettle::Fork balanced_fork();

// x-balanced fork for 000101 with x = 00.
inline forksettle::CharString x_balanced_string() { return forksettle::CharString::parse("000101"); }
forksettle::Fork x_balanced_fork();

// Chain 0 -> labels[0] -> labels[1] -> ...
forksettle::Fork chain(std::initializer_list<int> labels);

// A random fork satisfying F1-F4 for w. Adversarial slots receive 0-2
// vertices each (possibly leaves), so the result is usually not closed.
forksettle::Fork random_valid_fork(const forksettle::CharString& w, std::uint64_t seed);

}  // namespace fixtures
