#include "sdq/alphabet.hpp"

#include <cmath>
#include <string>

#include "sdq/errors.hpp"

namespace sdq {

Alphabet make_alphabet(std::int64_t l, double delta) {
  if (l < 1) throw DomainError("alphabet: L must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw DomainError("alphabet: step must be positive and finite");
  return Alphabet{l, delta};
}

double alphabet_max(const Alphabet& a) {
  return (2.0 * static_cast<double>(a.levels) - 1.0) * a.step / 2.0;
}

double scalar_quantize(const Alphabet& a, double x) {
  const double ax = x < 0.0 ? -x : x;
  double j = std::floor(ax / a.step);
  const double jmax = static_cast<double>(a.levels - 1);
  if (j > jmax) j = jmax;
  const double q = (2.0 * j + 1.0) * a.step / 2.0;
  return x < 0.0 ? -q : q;
}

std::vector<double> alphabet_elements(const Alphabet& a) {
  if (a.levels > (1 << 20))
    throw DomainError("alphabet_elements: refusing to enumerate " +
                      std::to_string(2 * a.levels) + " levels");
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(2 * a.levels));
  for (std::int64_t j = a.levels - 1; j >= 0; --j)
    e.push_back(-(2.0 * static_cast<double>(j) + 1.0) * a.step / 2.0);
  for (std::int64_t j = 0; j < a.levels; ++j)
    e.push_back((2.0 * static_cast<double>(j) + 1.0) * a.step / 2.0);
  return e;
}

}  // namespace sdq
