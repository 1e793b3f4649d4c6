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

TEST_SUITE("kernel") {
  TEST_CASE("construction validates shape and finiteness") {
    const auto s = MeasureSpace::counting(2);
    CHECK_THROWS_AS(Kernel(s, std::vector<Complex>(3)), Error);
    CHECK_THROWS_AS(Kernel(s, {1, 2, Complex(NAN, 0), 4}), Error);
    CHECK_THROWS_AS(Kernel(s, {1, 2, Complex(0, INFINITY), 4}), Error);
    CHECK(Kernel(s).entries()[3] == Complex(0, 0));
  }

  TEST_CASE("J o J = m J") {
    const auto s = MeasureSpace::make_quadrature({0.25, 1.0, 3.0, 0.75});
    const Kernel jj = matmul(Kernel::ones(s), Kernel::ones(s));
    CHECK(sup_distance(jj, Kernel::constant(s, s.total_mass())) <= 1e-15);
  }

  TEST_CASE("Id o A = A exactly under counting measure") {
    std::mt19937_64 rng(1);
    const auto s = MeasureSpace::counting(9);
    const Kernel a = gen::kernel(rng, s);
    CHECK(sup_distance(matmul(Kernel::diagonal(s), a), a) == 0.0);
    CHECK(sup_distance(matmul(a, Kernel::diagonal(s)), a) == 0.0);
  }

  TEST_CASE("squared adjacency of the 5-cycle counts two-step walks") {
    const auto s = MeasureSpace::counting(5);
    const auto rel = oracle::cyclic(5);
    const Kernel a = Kernel::from_function(s, [&](std::size_t x, std::size_t y) { return rel[x * 5 + y] == 1 ? 1.0 : 0.0; });
    const Kernel aa = matmul(a, a);
    const auto p = oracle::intersection_numbers(rel, std::vector<double>(5, 1.0), 5);
    for (std::size_t x = 0; x < 5; ++x) {
      for (std::size_t z = 0; z < 5; ++z) CHECK(aa(x, z).real() == p(1, 1, rel[x * 5 + z]));
    }
  }

  TEST_CASE("matmul agrees with the naive triple loop") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = gen::weights(rng, 1 + trial * 3);
      const Kernel a = gen::kernel(rng, s), b = gen::kernel(rng, s);
      const auto ref = oracle::matmul(entries_of(a), entries_of(b), std::vector<double>(s.weights().begin(), s.weights().end()));
      const Kernel c = matmul(a, b);
      for (std::size_t p = 0; p < ref.size(); ++p) CHECK(std::abs(c.entries()[p] - ref[p]) <= 1e-12);
    }
  }

  TEST_CASE("operations reject kernels over different spaces") {
    const auto s = MeasureSpace::counting(3), t = MeasureSpace::counting(3);
    CHECK_THROWS_AS(matmul(Kernel::ones(s), Kernel::ones(t)), Error);
    CHECK_THROWS_AS(hadamard(Kernel::ones(s), Kernel::ones(t)), Error);
    CHECK_THROWS_AS(Kernel::ones(s) + Kernel::ones(t), Error);
  }

  TEST_CASE("hadamard examples") {
    std::mt19937_64 rng(3);
    const auto s = gen::weights(rng, 6);
    const Kernel a = gen::kernel(rng, s);
    CHECK(sup_distance(hadamard(a, Kernel::ones(s)), a) == 0.0);
    const Kernel aa = hadamard(a, conjugate(a));
    for (Complex v : aa.entries()) {
      CHECK(v.real() >= 0.0);
      CHECK(v.imag() == 0.0);
    }
    const Scheme h = hamming_scheme(2, 3);
    const auto basis = algebra_of_scheme(h);
    CHECK(sup_norm(hadamard(basis.member(1), basis.member(2))) == 0.0);
  }

  TEST_CASE("transpose, conjugate and sup norm") {
    std::mt19937_64 rng(4);
    const auto s = gen::weights(rng, 5);
    const Kernel a = gen::kernel(rng, s);
    CHECK(sup_distance(transpose(transpose(a)), a) == 0.0);
    CHECK(transpose(a)(1, 3) == a(3, 1));
    CHECK(conjugate(a)(2, 4) == std::conj(a(2, 4)));
    CHECK(sup_norm(Kernel::ones(s)) == 1.0);
    Kernel b(s);
    b(2, 1) = Complex(3, 4);
    CHECK(sup_norm(b) == 5.0);
  }

  TEST_CASE("row integrals equal a column of A o J") {
    std::mt19937_64 rng(5);
    const auto s = gen::weights(rng, 7);
    const Kernel a = gen::kernel(rng, s);
    const auto r = row_integrals(a);
    const Kernel aj = matmul(a, Kernel::ones(s));
    for (std::size_t x = 0; x < 7; ++x) CHECK(std::abs(r[x] - aj(x, 3)) <= 1e-14);
  }

  TEST_CASE("property: algebraic identities of the kernel operations") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 25; ++trial) {
      const auto s = gen::weights(rng, 1 + trial % 11);
      const Kernel a = gen::kernel(rng, s), b = gen::kernel(rng, s), c = gen::kernel(rng, s);
      const double m = s.total_mass();
      // norm bound from the integral definition
      CHECK(sup_norm(matmul(a, b)) <= sup_norm(a) * sup_norm(b) * m * (1 + 1e-12));
      // associativity
      const double scale = sup_norm(a) * sup_norm(b) * sup_norm(c) * m * m;
      CHECK(sup_distance(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) <= 1e-10 * scale);
      // exact identities
      CHECK(sup_distance(transpose(matmul(a, b)), matmul(transpose(b), transpose(a))) == 0.0);
      CHECK(sup_distance(conjugate(matmul(a, b)), matmul(conjugate(a), conjugate(b))) == 0.0);
      CHECK(sup_distance(hadamard(a, b), hadamard(b, a)) == 0.0);
      CHECK(sup_distance(hadamard(hadamard(a, b), c), hadamard(a, hadamard(b, c))) <= 1e-15);
    }
  }

  TEST_CASE("approximate identity: the unit gives zero residuals") {
    std::mt19937_64 rng(7);
    const auto s = MeasureSpace::counting(6);
    const std::vector<Kernel> family{Kernel::diagonal(s)};
    const std::vector<Kernel> probes{gen::kernel(rng, s), gen::kernel(rng, s)};
    const auto r = check_approximate_identity(family, probes, s, 1e-12);
    CHECK(r.final_max_residual == 0.0);
    CHECK(r.final_below_tolerance);
    CHECK(r.all_non_increasing());
  }

  TEST_CASE("approximate identity: J / m averages and fails") {
    const auto s = MeasureSpace::counting(6);
    const std::vector<Kernel> family{(1.0 / s.total_mass()) * Kernel::ones(s)};
    const std::vector<Kernel> probes{Kernel::from_function(s, [](std::size_t x, std::size_t y) {
      return Complex(std::cos(static_cast<double>(x) - static_cast<double>(y)), 0.0);
    })};
    const auto r = check_approximate_identity(family, probes, s, 1e-6);
    CHECK(r.final_max_residual > 1e-6);
    CHECK_FALSE(r.final_below_tolerance);
  }

  TEST_CASE("approximate identity: hat family on the circle") {
    const Scheme c = circle_scheme(240, 60, true);
    std::vector<Kernel> family;
    for (double width : {kPi / 4, kPi / 8, kPi / 16}) {
      const auto bump = circle_hat_bump(c, width);
      family.push_back(build_approximate_identity(c, bump_support(bump), bump));
    }
    const auto theta = c.space().coordinates();
    const std::vector<Kernel> probes{Kernel::from_function(c.space(), [&](std::size_t x, std::size_t z) {
      return Complex(std::cos(theta.values[x] - theta.values[z]), 0.0);
    })};
    const auto r = check_approximate_identity(family, probes, c.space(), 0.05);
    CHECK(r.all_non_increasing());
    CHECK(r.strictly_decreasing[0]);
    CHECK(r.final_below_tolerance);
  }

  TEST_CASE("approximate identity: empty family and space mismatch are rejected") {
    const auto s = MeasureSpace::counting(3);
    const std::vector<Kernel> none;
    const std::vector<Kernel> probes{Kernel::ones(s)};
    CHECK_THROWS_AS(check_approximate_identity(none, probes, s, 0.1), Error);
    const std::vector<Kernel> family{Kernel::diagonal(MeasureSpace::counting(3))};
    CHECK_THROWS_AS(check_approximate_identity(family, probes, s, 0.1), Error);
  }
}
