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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casmat/casmat.hpp"
#include "casmat/cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace casmat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

oracle::Table table_of(const Scheme& s) { return {s.relation().begin(), s.relation().end()}; }

bool exact_cas(const Scheme& s, Outcome& o, const std::string& name) {
  const CasReport r = verify_cas(s, BorelFamily::singletons(s.label_count()));
  const bool ok = r.passed() && r.cas2_max_deviation == 0.0 && r.cas4_max_deviation == 0.0 &&
                  r.transpose_identity_deviation == 0.0 && r.pushforward_deviation == 0.0 &&
                  r.row_valency_deviation == 0.0;
  o.require(ok, name + " deviations not exactly 0 (cas2 " + fmt(r.cas2_max_deviation) + ")");
  return ok;
}

// 1. Finite exactness.
Outcome finite_exactness() {
  Outcome o;
  for (const auto& [name, make] : std::vector<std::pair<std::string, std::function<Scheme()>>>{
           {"cyclic(12)", [] { return cyclic_scheme(12); }}, {"hamming(3,2)", [] { return hamming_scheme(3, 2); }}}) {
    const auto start = std::chrono::steady_clock::now();
    const Scheme s = make();
    exact_cas(s, o, name);
    const double t = seconds_since(start);
    o.require(t < 1.0, name + " took " + fmt(t) + " s");
  }
  const Scheme h = hamming_scheme(3, 2);
  const oracle::Table ref = oracle::hamming(3, 2);
  o.require(table_of(h) == ref, "hamming relation differs from the explicit-word oracle");
  const auto p = oracle::intersection_numbers(ref, std::vector<double>(8, 1.0), 4);
  const auto sc = structure_constants(algebra_of_scheme(h));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        if (sc(i, j, k) != Complex(p(i, j, k), 0.0)) {
          o.require(false, "structure constant (" + std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(k) + ") differs from oracle");
        }
      }
    }
  }
  o.require(sc.residual == 0.0, "structure constant residual " + fmt(sc.residual));
  return o;
}

// 2. Symmetric schemes are commutative.
Outcome symmetric_commutative() {
  Outcome o;
  const auto cube = oracle::graph_distance(oracle::cube_graph(3));
  std::vector<double> metric(cube.begin(), cube.end());
  const std::vector<std::pair<std::string, Scheme>> cases = {
      {"hamming(3,2)", hamming_scheme(3, 2)},
      {"circle(240,60,unsigned)", circle_scheme(240, 60, false)},
      {"sphere(400,12)", sphere_scheme(400, 12)},
      {"delsarte(cube)", delsarte_scheme(metric, std::vector<double>(8, 1.0), 0)},
  };
  for (const auto& [name, s] : cases) {
    const CasReport r = verify_cas(s, BorelFamily::singletons(s.label_count()));
    o.require(r.symmetric, name + " is not symmetric");
    o.require(r.cas4_max_deviation <= 2.0 * r.cas2_max_deviation,
              name + " cas4 " + fmt(r.cas4_max_deviation) + " > 2 * cas2 " + fmt(r.cas2_max_deviation));
  }
  return o;
}

// 3. Circle grid exactness.
Outcome circle_exactness() {
  Outcome o;
  const Scheme s = circle_scheme(240, 60, true);
  CasOptions opt;
  opt.tolerance = 1e-12;
  opt.diagonal_slack = 240 * (240 / 60 - 1);
  const CasReport r = verify_cas(s, BorelFamily::singletons(s.label_count()), opt);
  o.require(r.passed(), "verify_cas failed");
  o.require(r.cas2_max_deviation <= 1e-12, "cas2 " + fmt(r.cas2_max_deviation));
  o.require(r.transpose_identity_deviation <= 1e-12, "transpose identity " + fmt(r.transpose_identity_deviation));
  o.require(r.pushforward_deviation == 0.0 && r.row_valency_deviation == 0.0,
            "pushforward " + fmt(r.pushforward_deviation) + ", row valency " + fmt(r.row_valency_deviation));
  return o;
}

// 4. Approximate identity convergence.
Outcome approximate_identity() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Scheme s = circle_scheme(240, 60, true);
  const auto theta = s.space().coordinates().values;
  const Kernel a = Kernel::from_function(s.space(), [&](std::size_t x, std::size_t z) {
    return Complex(std::cos(theta[x] - theta[z]), 0.0);
  });
  std::vector<double> residuals;
  for (double width : {std::numbers::pi / 4, std::numbers::pi / 8, std::numbers::pi / 16}) {
    const auto bump = circle_hat_bump(s, width);
    const Kernel id = build_approximate_identity(s, bump_support(bump), bump);
    double row_error = 0.0;
    for (const Complex& v : row_integrals(id)) row_error = std::max(row_error, std::abs(v - 1.0));
    o.require(row_error <= 1e-10, "row integral off by " + fmt(row_error));
    residuals.push_back(sup_distance(matmul(id, a), a));
  }
  for (std::size_t i = 1; i < residuals.size(); ++i) {
    o.require(residuals[i] < residuals[i - 1], "residuals not strictly decreasing");
  }
  o.require(residuals.back() <= 0.05, "final residual " + fmt(residuals.back()));
  const double t = seconds_since(start);
  o.require(t < 10.0, "took " + fmt(t) + " s");
  std::string seq;
  for (double r : residuals) seq += (seq.empty() ? "" : " ") + fmt(r);
  o.detail = "residuals " + seq + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 5. Sphere constancy at mesh scale.
Outcome sphere_constancy() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  constexpr std::size_t kBins = 40;
  const Scheme s = sphere_scheme(5000, kBins);
  CasOptions opt;
  opt.tolerance = 1.0;
  opt.max_pairs_per_label = 48;
  const CasReport r = verify_cas(s, BorelFamily::singletons(s.label_count()), opt);
  o.require(r.surjective, "sphere scheme is not surjective");
  o.require(r.cas2_relative_deviation <= 0.10, "relative cas2 " + fmt(r.cas2_relative_deviation));

  const double t_top = 1.0 - 2.0 / kBins;
  Label top = kNoLabel;
  for (std::size_t i = 0; i < s.label_count(); ++i) {
    const auto& b = s.labels().bin(static_cast<Label>(i));
    if (b && b->lo >= t_top - 1e-12 && b->hi >= 1.0 && i != *s.labels().identity()) top = static_cast<Label>(i);
  }
  o.require(top != kNoLabel, "no top bin");
  if (top != kNoLabel) {
    const Label i0 = *s.labels().identity();
    const LabelSet cap = LabelSet::singleton(s.label_count(), top);
    const auto p = intersection_number(s, cap, cap, i0);
    const double expected = 2.0 * std::numbers::pi * (1.0 - t_top);
    const double rel = std::fabs(p.value - expected) / expected;
    o.require(rel <= 0.05, "cap mass " + fmt(p.value) + " vs " + fmt(expected));
    o.detail = "relative cas2 " + fmt(r.cas2_relative_deviation) + ", cap error " + fmt(rel) +
               (o.detail.empty() ? "" : "; " + o.detail);
  }
  const double t = seconds_since(start);
  o.require(t < 120.0, "took " + fmt(t) + " s");
  return o;
}

// 6. Correspondence round-trip.
Outcome roundtrip() {
  Outcome o;
  const std::vector<std::pair<std::string, Scheme>> cases = {
      {"cyclic(12)", cyclic_scheme(12)},
      {"hamming(3,2)", hamming_scheme(3, 2)},
      {"S4 natural", group_action_scheme(symmetric_group_generators(4))},
      {"sphere(500,20)", sphere_scheme(500, 20)},
  };
  for (const auto& [name, s] : cases) {
    const RoundtripReport r = roundtrip_check(s, 1e-9);
    o.require(r.passed(), name + ": " + r.failure);
    o.require(r.bijection.size() == s.label_count(), name + ": no bijection reported");
    // independent partition comparison
    const Scheme back = scheme_of_algebra(algebra_of_scheme(s), 1e-9);
    std::vector<std::uint32_t> bijection;
    o.require(oracle::same_partition(table_of(s), table_of(back), &bijection), name + ": partitions differ");
    if (bijection.size() == s.label_count()) {
      const Label i0 = *s.labels().identity();
      o.require(back.labels().identity() && *back.labels().identity() == bijection[i0], name + ": i0 mismatch");
      for (std::size_t i = 0; i < s.label_count(); ++i) {
        if (back.labels().transpose(bijection[i]) != bijection[s.labels().transpose(static_cast<Label>(i))]) {
          o.require(false, name + ": involution mismatch at label " + std::to_string(i));
          break;
        }
      }
    }
  }
  return o;
}

// 7. Hypergroup identities.
Outcome hypergroup_identities() {
  Outcome o;
  for (const auto& [name, s] : std::vector<std::pair<std::string, Scheme>>{{"hamming(3,2)", hamming_scheme(3, 2)},
                                                                           {"cyclic(6)", cyclic_scheme(6)}}) {
    const HypergroupData hg = kernel_of_scheme(s);
    const auto probes = random_label_function_pairs(s.label_count(), 10, 7);
    const auto tests = random_node_functions(s.node_count(), 5, 8);
    const HypergroupReport r = verify_strong_cas(hg, probes, tests, {1e-12, false});
    for (const char* id : {"pullback_convolution", "T2", "anti_automorphism"}) {
      const IdentityResidual* res = r.find(id);
      o.require(res && res->residual <= 1e-12, name + " " + id + " " + (res ? fmt(res->residual) : "missing"));
    }
    const IdentityResidual* unit = r.find("convolution_identity");
    o.require(unit && unit->residual == 0.0, name + " convolution identity not exact");
    o.require(r.passed(), name + " hypergroup report failed");
    if (name == "hamming(3,2)") {
      o.require(r.haar_weights == std::vector<double>{1.0, 3.0, 3.0, 1.0}, "Haar weights are not (1,3,3,1)");
    }
  }
  return o;
}

// 8. Negative control.
Outcome negative_control() {
  Outcome o;
  std::mt19937_64 rng(8);
  const Scheme s = gen::random_relabeling(rng, 8, 4);
  const CasReport r = verify_cas(s, BorelFamily::singletons(s.label_count()));
  o.require(!r.passed(), "random relabeling passed verify_cas");
  bool witnessed = false;
  for (const Witness& w : r.witnesses) witnessed = witnessed || ((w.check == "CAS2" || w.check == "CAS3") && !w.pairs.empty());
  o.require(witnessed, "no CAS2/CAS3 witness");

  const auto path = std::filesystem::temp_directory_path() / "casmat_acceptance_random8.scheme";
  std::ofstream(path) << io::scheme_to_string(s);
  std::ostringstream out, err;
  const int code = cli::run({"verify", path.string()}, out, err);
  o.require(code == cli::kExitCheckFailed, "verify exited " + std::to_string(code));
  std::filesystem::remove(path);
  return o;
}

// 9. Degenerate algebra.
Outcome degenerate_algebra() {
  Outcome o;
  const auto space = MeasureSpace::counting(6);
  try {
    scheme_of_algebra(AlgebraBasis({Kernel::ones(space)}), 1e-9);
    o.require(false, "span(J) produced a scheme");
  } catch (const CorrespondenceError& e) {
    o.require(e.kind() == CorrespondenceError::Kind::diagonal_contaminated,
              std::string("wrong error kind ") + to_string(e.kind()));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"finite exactness", finite_exactness},
      {"symmetric schemes commute", symmetric_commutative},
      {"circle grid exactness", circle_exactness},
      {"approximate identity convergence", approximate_identity},
      {"sphere constancy at mesh scale", sphere_constancy},
      {"correspondence round-trip", roundtrip},
      {"hypergroup identities", hypergroup_identities},
      {"negative control", negative_control},
      {"degenerate algebra rejection", degenerate_algebra},
  };
  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", static_cast<int>(c + 1), criteria[c].first.c_str(),
                seconds_since(start), o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
