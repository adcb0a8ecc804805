#pragma once

#include <cstdint>
#include <vector>

namespace sdq {

/// The 2L-level mid-rise alphabet {±(2j+1)δ/2 : j = 0..L-1}: symmetric about
/// zero, no zero element, spacing δ between neighbours.
struct Alphabet {
  std::int64_t levels = 1;  // L, half the number of elements
  double step = 1.0;        // δ
};

Alphabet make_alphabet(std::int64_t l, double delta);

/// Largest element magnitude, (2L-1)δ/2.
double alphabet_max(const Alphabet& a);

/// Nearest alphabet element to x. Ties go to the element of larger magnitude
/// (the x = 0 tie resolves to +δ/2); inputs beyond the extreme elements clamp.
double scalar_quantize(const Alphabet& a, double x);

/// All 2L elements in increasing order. Intended for small alphabets.
std::vector<double> alphabet_elements(const Alphabet& a);

}  // namespace sdq
