#include <benchmark/benchmark.h>

#include "nctorus/random.hpp"
#include "nctorus/torus_element.hpp"

namespace {

using nct::Rational;

std::shared_ptr<const nct::ThetaMatrix> theta_for(int n) {
  if (n == 2) return std::make_shared<const nct::ThetaMatrix>(2, std::vector<Rational>{Rational(3, 7)});
  return std::make_shared<const nct::ThetaMatrix>(3, std::vector<Rational>{Rational(1, 3), Rational(-2, 5), Rational(5, 12)});
}

// Dense operands filling [-degree, degree]ⁿ inside a window of radius 2·degree.
template <bool Parallel>
void BM_mul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int degree = static_cast<int>(state.range(1));
  nct::Rng rng(11);
  const auto theta = theta_for(n);
  const auto a = nct::random_element(theta, 2 * degree, degree, 0, rng);
  const auto b = nct::random_element(theta, 2 * degree, degree, 0, rng);
  for (auto _ : state) {
    auto c = Parallel ? nct::mul(a, b) : nct::mul_reference(a, b);
    benchmark::DoNotOptimize(c);
  }
  state.counters["pairs"] = static_cast<double>(a.size() * b.size());
}

}  // namespace

BENCHMARK_TEMPLATE(BM_mul, true)->Args({2, 8})->Args({2, 16})->Args({3, 3})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_mul, false)->Args({2, 8})->Args({2, 16})->Args({3, 3})->Args({3, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
