#pragma once

// Published generator matrices and group orders for the example codes, kept
// verbatim for comparison against computed values.

#include <vector>

#include "cssaut/gf2.hpp"

namespace cssaut::reference {

/// Two generators of the logical action of the [[15,7,3]] code.
inline std::vector<BitMatrix> logical_generators_15() {
  return {BitMatrix::from_strings({"1001101", "1100100", "1110111", "1100010", "0100101", "0001101", "1100110"}),
          BitMatrix::from_strings({"1010010", "1111100", "0110110", "0101011", "1001000", "0100110", "0111101"})};
}

/// Two generators of the logical action of the [[22,8,4]] code.
inline std::vector<BitMatrix> logical_generators_22() {
  return {BitMatrix::from_strings({"11010110", "01111100", "01101101", "11100000", "10101100", "11011101",
                                   "00100100", "10100110"}),
          BitMatrix::from_strings({"11100001", "01011010", "01001011", "10101001", "11000011", "11101101",
                                   "00000010", "10110000"})};
}

/// Two generators of the symplectic representation for the [[8,3,3]] code,
/// in the basis (logical X | logical Z).
inline std::vector<BitMatrix> symplectic_generators_8() {
  return {BitMatrix::from_strings({"010000", "001000", "101000", "100010", "011101", "010100"}),
          BitMatrix::from_strings({"100000", "010000", "001000", "010100", "100010", "000001"})};
}

inline constexpr unsigned kAutOrder22 = 336;
inline constexpr unsigned kAutOrder31 = 155;
inline constexpr unsigned kAutOrder8 = 56;
/// The stated order of the automorphism group of the [15,4,8] simplex code.
/// |A8| = |GL(4,2)| = 20160, so this figure has two digits swapped.
inline constexpr unsigned kStatedAutOrder15 = 21600;
inline constexpr unsigned kAutOrder15 = 20160;

}  // namespace cssaut::reference
