#include "nctorus/random.hpp"

#include <cmath>
#include <numbers>

#include "nctorus/errors.hpp"

namespace nct {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ContractViolation("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

double Rng::normal() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

TorusElement random_element(const std::shared_ptr<const ThetaMatrix>& theta, int cap, int degree,
                            int terms, Rng& rng) {
  if (degree > cap) throw ContractViolation("random_element: degree exceeds cap");
  const int n = theta->dim();
  TorusElement out(theta, cap);
  if (terms == 0) {
    const ModeWindow box(n, degree);
    for (std::size_t i = 0; i < box.size(); ++i) out.set(box.mode(i), rng.complex_normal());
    return out;
  }
  for (int t = 0; t < terms; ++t) {
    Mode p(n);
    for (int j = 0; j < n; ++j) p[j] = static_cast<int>(rng.uniform_int(-degree, degree));
    out.add(p, rng.complex_normal());
  }
  return out;
}

}  // namespace nct
