// Copyright 2026 The casmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "generators.hpp"
#include "helpers.hpp"

using namespace casmat;

TEST_SUITE("measure") {
  TEST_CASE("counting weights sum to the node count") {
    const auto s = MeasureSpace::make_quadrature({1, 1, 1, 1});
    CHECK(s.total_mass() == 4.0);
    CHECK(s.is_counting());
    CHECK(MeasureSpace::counting(7).total_mass() == 7.0);
  }

  TEST_CASE("uniform circle weights total 2 pi") {
    for (std::size_t n : {3u, 17u, 240u, 1000u}) {
      const auto s = MeasureSpace::make_quadrature(std::vector<double>(n, 2 * kPi / static_cast<double>(n)));
      CHECK(std::fabs(s.total_mass() - 2 * kPi) <= 1e-12);
    }
  }

  TEST_CASE("non-positive and non-finite weights are rejected with the index") {
    CHECK_THROWS_WITH_AS(MeasureSpace::make_quadrature({1, 0, 1}), doctest::Contains("weight 1 "), Error);
    CHECK_THROWS_AS(MeasureSpace::make_quadrature({1, -2}), Error);
    CHECK_THROWS_AS(MeasureSpace::make_quadrature({1, NAN}), Error);
    CHECK_THROWS_AS(MeasureSpace::make_quadrature({INFINITY}), Error);
    CHECK_THROWS_AS(MeasureSpace::make_quadrature({}), Error);
    CHECK_THROWS_AS(MeasureSpace::counting(0), Error);
  }

  TEST_CASE("coordinates must match the node count") {
    CHECK_THROWS_AS(MeasureSpace::make_quadrature({1, 1}, Coordinates{2, {0, 0, 1}}), Error);
    const auto s = MeasureSpace::make_quadrature({1, 1}, Coordinates{2, {0, 1, 2, 3}});
    CHECK(s.coordinates().point(1)[0] == 2);
  }

  TEST_CASE("integrate constants and length checks") {
    const auto s = MeasureSpace::counting(5);
    const std::vector<Complex> ones(5, 1.0);
    CHECK(integrate(ones, s) == Complex(5, 0));
    const auto w = MeasureSpace::make_quadrature({0.5, 1.5, 2.0});
    const std::vector<Complex> c(3, Complex(2, -1));
    CHECK(std::abs(integrate(c, w) - Complex(2, -1) * 4.0) <= 1e-15);
    CHECK_THROWS_AS(integrate(std::vector<Complex>(4), s), Error);
  }

  TEST_CASE("cosine integrates to zero on the uniform circle") {
    for (std::size_t n = 3; n <= 64; ++n) {
      const auto s = MeasureSpace::make_quadrature(std::vector<double>(n, 2 * kPi / static_cast<double>(n)));
      std::vector<double> f(n);
      double direct = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        f[y] = std::cos(2 * kPi * static_cast<double>(y) / static_cast<double>(n));
        direct += s.weight(y) * f[y];
      }
      CHECK(std::fabs(integrate(f, s)) <= 1e-12);
      CHECK(std::fabs(direct) <= 1e-12);
    }
  }

  TEST_CASE("product_integrate examples") {
    const auto s = MeasureSpace::make_quadrature({0.5, 1.0, 2.5});
    CHECK(std::abs(product_integrate(std::vector<Complex>(9, 1.0), s) - Complex(16, 0)) <= 1e-12);
    const auto c = MeasureSpace::counting(6);
    CHECK(product_integrate(entries_of(Kernel::diagonal(c)), c) == Complex(6, 0));
    CHECK_THROWS_AS(product_integrate(std::vector<Complex>(8), s), Error);
  }

  TEST_CASE("property: A . conj(A) integrates to the flattened squared L2 norm") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = gen::weights(rng, 2 + trial % 7);
      const Kernel a = gen::kernel(rng, s);
      const Complex v = product_integrate(hadamard(a, conjugate(a)).entries(), s);
      double flat = 0.0;
      const std::size_t n = s.size();
      for (std::size_t p = 0; p < n * n; ++p) flat += s.weight(p / n) * s.weight(p % n) * std::norm(a.entries()[p]);
      CHECK(v.real() >= 0.0);
      CHECK(std::fabs(v.imag()) <= 1e-12);
      CHECK(std::fabs(v.real() - flat) <= 1e-12 * flat);
    }
  }

  TEST_CASE("property: linearity, Fubini and monotonicity") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + trial % 13;
      const auto s = gen::weights(rng, n);
      const auto f = gen::vector(rng, n), g = gen::vector(rng, n);
      const Complex alpha(gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2));
      const Complex beta(gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2));
      std::vector<Complex> h(n);
      for (std::size_t i = 0; i < n; ++i) h[i] = alpha * f[i] + beta * g[i];
      const Complex lhs = integrate(h, s);
      const Complex rhs = alpha * integrate(f, s) + beta * integrate(g, s);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));

      const Kernel k = gen::kernel(rng, s);
      std::vector<Complex> inner(n);
      for (std::size_t x = 0; x < n; ++x) inner[x] = integrate(k.row(x), s);
      const Complex fubini = integrate(inner, s);
      const Complex whole = product_integrate(k.entries(), s);
      CHECK(std::abs(fubini - whole) <= 1e-12 * (1.0 + std::abs(whole)));

      std::vector<double> lo(n), hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = gen::uniform(rng, -1, 1);
        hi[i] = lo[i] + gen::uniform(rng, 0, 1);
      }
      CHECK(integrate(hi, s) >= integrate(lo, s) - 1e-12 * s.total_mass());
    }
  }

  TEST_CASE("spaces compare by identity") {
    const auto a = MeasureSpace::counting(3);
    const auto b = MeasureSpace::counting(3);
    const auto a2 = a;
    CHECK(same_space(a, a2));
    CHECK_FALSE(same_space(a, b));
  }
}
