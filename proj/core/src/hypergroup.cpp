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

#include "casmat/hypergroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "casmat/kernel.hpp"

namespace casmat {

HypergroupData::HypergroupData(Scheme scheme, std::vector<std::vector<KappaEntry>> kappa,
                               std::vector<double> haar_weights)
    : scheme_(std::move(scheme)), kappa_(std::move(kappa)), haar_(std::move(haar_weights)) {
  const std::size_t n = scheme_.node_count();
  const std::size_t l = scheme_.label_count();
  const auto i0 = scheme_.labels().identity();
  if (!i0) throw Error("hypergroup data needs a scheme with an identity label");
  if (kappa_.size() != n * l) throw Error("Markov kernel must have node_count x label_count entries");
  if (haar_.size() != l) throw Error("Haar weights must have one entry per label");

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < l; ++i) {
      long double total = 0.0L;
      for (const KappaEntry& e : kappa_[x * l + i]) {
        if (e.node >= n) throw Error("Markov kernel references an unknown node");
        if (!std::isfinite(e.mass) || e.mass < 0.0) throw Error("Markov kernel has a negative or non-finite mass");
        if (e.mass > 0.0 && scheme_(x, e.node) != i) {
          throw Error("kappa(" + std::to_string(x) + "," + std::to_string(i) + ") charges node " +
                      std::to_string(e.node) + " outside its row fiber");
        }
        total += e.mass;
      }
      if (std::fabs(static_cast<double>(total) - 1.0) > 1e-12) {
        throw Error("kappa(" + std::to_string(x) + "," + std::to_string(i) + ") is not a probability measure");
      }
    }
    const auto point = kappa_[x * l + *i0];
    const bool is_dirac = std::all_of(point.begin(), point.end(), [&](const KappaEntry& e) {
      return e.mass == 0.0 || (e.node == x && e.mass == 1.0);
    });
    if (!is_dirac) throw Error("kappa(x, i_0) must be the point mass at x");
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (!std::isfinite(haar_[i]) || !(haar_[i] > 0.0)) throw Error("Haar weights must be positive and finite");
    const double t = haar_[scheme_.labels().transpose(static_cast<Label>(i))];
    if (std::fabs(t - haar_[i]) > 1e-12 * std::max(1.0, std::fabs(haar_[i]))) {
      throw Error("Haar weights are not invariant under the involution at label " + std::to_string(i));
    }
  }
}

double HypergroupData::haar_total() const noexcept {
  long double t = 0.0L;
  for (double h : haar_) t += h;
  return static_cast<double>(t);
}

HypergroupData kernel_of_scheme(const Scheme& scheme, double tolerance) {
  const std::size_t n = scheme.node_count();
  const std::size_t l = scheme.label_count();
  const auto v = row_masses(scheme);
  const auto w = scheme.space().weights();
  std::vector<long double> mean(l, 0.0L);
  for (std::size_t i = 0; i < l; ++i) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t x = 0; x < n; ++x) {
      const double vi = v[x * l + i];
      if (!(vi > 0.0)) {
        throw Error("row fiber of node " + std::to_string(x) + " at label " + std::to_string(i) + " is empty");
      }
      lo = std::min(lo, vi);
      hi = std::max(hi, vi);
      mean[i] += vi;
    }
    if (hi - lo > tolerance) {
      throw Error("row-fiber masses of label " + std::to_string(i) + " vary across nodes; no invariant measure");
    }
  }
  std::vector<std::vector<KappaEntry>> kappa(n * l);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Label i = scheme(x, y);
      kappa[x * l + i].push_back({y, w[y] / v[x * l + i]});
    }
  }
  std::vector<double> haar(l);
  for (std::size_t i = 0; i < l; ++i) haar[i] = static_cast<double>(mean[i] / static_cast<long double>(n));
  return HypergroupData(scheme, std::move(kappa), std::move(haar));
}

namespace {

// Up to 8 pairs per fiber, evenly spaced through the row-major fiber order.
std::vector<std::vector<NodePair>> representatives(const Scheme& scheme) {
  constexpr std::size_t kMaxRepresentatives = 8;
  const std::size_t n = scheme.node_count();
  const std::size_t l = scheme.label_count();
  std::vector<std::size_t> size(l, 0);
  for (Label v : scheme.relation()) ++size[v];
  std::vector<std::vector<std::size_t>> wanted(l);
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t count = std::min(kMaxRepresentatives, size[i]);
    for (std::size_t r = 0; r < count; ++r) wanted[i].push_back(r * size[i] / count);
  }
  std::vector<std::vector<NodePair>> reps(l);
  std::vector<std::size_t> seen(l, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Label i = scheme(x, y);
      const std::size_t idx = seen[i]++;
      if (reps[i].size() < wanted[i].size() && wanted[i][reps[i].size()] == idx) reps[i].emplace_back(x, y);
    }
  }
  return reps;
}

PointMassConvolution convolve_with(const HypergroupData& hg, std::span<const NodePair> reps, Label j) {
  const Scheme& scheme = hg.scheme();
  const std::size_t l = hg.label_count();
  PointMassConvolution out;
  out.representatives = reps.size();
  out.measure.assign(l, 0.0);
  if (reps.empty()) return out;
  std::vector<double> lo(l, INFINITY), hi(l, -INFINITY);
  std::vector<long double> sum(l, 0.0L);
  std::vector<double> nu(l);
  for (const auto& [x, z] : reps) {
    std::fill(nu.begin(), nu.end(), 0.0);
    for (const KappaEntry& e : hg.kappa(z, j)) nu[scheme(x, e.node)] += e.mass;
    for (std::size_t k = 0; k < l; ++k) {
      sum[k] += nu[k];
      lo[k] = std::min(lo[k], nu[k]);
      hi[k] = std::max(hi[k], nu[k]);
    }
  }
  for (std::size_t k = 0; k < l; ++k) {
    out.measure[k] = static_cast<double>(sum[k] / static_cast<long double>(reps.size()));
    out.spread = std::max(out.spread, hi[k] - lo[k]);
  }
  return out;
}

void require_label(const HypergroupData& hg, Label i) {
  if (i >= hg.label_count()) throw Error("unknown label " + std::to_string(i));
}

}  // namespace

PointMassConvolution convolve_point_masses(const HypergroupData& hg, Label i, Label j, double tolerance) {
  require_label(hg, i);
  require_label(hg, j);
  const auto reps = representatives(hg.scheme());
  if (reps[i].empty()) throw Error("fiber of label " + std::to_string(i) + " is empty");
  auto out = convolve_with(hg, reps[i], j);
  if (out.spread > tolerance) {
    throw ConvolutionError(i, j, out.spread,
                           "delta_" + std::to_string(i) + " * delta_" + std::to_string(j) +
                               " depends on the representative pair (spread " + std::to_string(out.spread) + ")");
  }
  return out;
}

ConvolutionTable convolution_table(const HypergroupData& hg, double tolerance) {
  const std::size_t l = hg.label_count();
  const auto reps = representatives(hg.scheme());
  ConvolutionTable t;
  t.labels = l;
  t.table.assign(l * l * l, 0.0);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const auto c = convolve_with(hg, reps[i], static_cast<Label>(j));
      if (c.spread > tolerance) {
        throw ConvolutionError(static_cast<Label>(i), static_cast<Label>(j), c.spread,
                               "point-mass convolution depends on the representative pair");
      }
      t.max_spread = std::max(t.max_spread, c.spread);
      std::copy(c.measure.begin(), c.measure.end(), t.table.begin() + static_cast<std::ptrdiff_t>((i * l + j) * l));
    }
  }
  return t;
}

std::vector<Complex> convolve_functions(const ConvolutionTable& table, const HypergroupData& hg,
                                        std::span<const Complex> f, std::span<const Complex> g) {
  const std::size_t l = hg.label_count();
  if (f.size() != l || g.size() != l) throw Error("label functions must have one value per label");
  const auto haar = hg.haar_weights();
  std::vector<Complex> out(l);
  for (std::size_t i = 0; i < l; ++i) {
    Complex acc{};
    for (std::size_t ip = 0; ip < l; ++ip) {
      Complex inner{};
      for (std::size_t k = 0; k < l; ++k) inner += table(i, ip, k) * f[k];
      acc += haar[ip] * inner * g[hg.transpose(static_cast<Label>(ip))];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> convolve_functions(const HypergroupData& hg, std::span<const Complex> f,
                                        std::span<const Complex> g, double tolerance) {
  return convolve_functions(convolution_table(hg, tolerance), hg, f, g);
}

namespace {

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Complex> random_vector(std::mt19937_64& rng, std::size_t size) {
  std::vector<Complex> v(size);
  for (auto& c : v) {
    const double re = 2.0 * unit_interval(rng) - 1.0;
    const double im = 2.0 * unit_interval(rng) - 1.0;
    c = Complex(re, im);
  }
  return v;
}

Kernel pullback(const Scheme& scheme, std::span<const Complex> f) {
  const std::size_t n = scheme.node_count();
  Kernel k(scheme.space());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) k(x, y) = f[scheme(x, y)];
  }
  return k;
}

}  // namespace

std::vector<LabelFunctionPair> random_label_function_pairs(std::size_t labels, std::size_t count,
                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LabelFunctionPair> out(count);
  for (auto& p : out) {
    p.f = random_vector(rng, labels);
    p.g = random_vector(rng, labels);
  }
  return out;
}

std::vector<std::vector<Complex>> random_node_functions(std::size_t nodes, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Complex>> out(count);
  for (auto& v : out) v = random_vector(rng, nodes);
  return out;
}

const IdentityResidual* HypergroupReport::find(const std::string& name) const {
  for (const auto& r : residuals) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

bool HypergroupReport::passed() const noexcept {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const IdentityResidual& r) { return !r.gating || r.ok(); });
}

HypergroupReport verify_strong_cas(const HypergroupData& hg, std::span<const LabelFunctionPair> probes,
                                   std::span<const std::vector<Complex>> test_functions,
                                   const HypergroupOptions& options) {
  const Scheme& scheme = hg.scheme();
  const std::size_t n = scheme.node_count();
  const std::size_t l = hg.label_count();
  const double tol = options.tolerance;
  const auto haar = hg.haar_weights();
  const auto weights = scheme.space().weights();
  for (const auto& p : probes) {
    if (p.f.size() != l || p.g.size() != l) throw Error("probe label functions must have one value per label");
  }
  for (const auto& phi : test_functions) {
    if (phi.size() != n) throw Error("test functions must have one value per node");
  }

  HypergroupReport report;
  report.haar_weights.assign(haar.begin(), haar.end());
  report.haar_total = hg.haar_total();

  const auto table = convolution_table(hg, std::numeric_limits<double>::infinity());
  report.residuals.push_back({"T1", table.max_spread, tol, true, l * l});

  // R^*f ∘ R^*g = R^*(f * g)
  {
    double worst = 0.0;
    for (const auto& p : probes) {
      const Kernel lhs = matmul(pullback(scheme, p.f), pullback(scheme, p.g));
      const auto fg = convolve_functions(table, hg, p.f, p.g);
      worst = std::max(worst, sup_distance(lhs, pullback(scheme, fg)));
    }
    report.residuals.push_back({"pullback_convolution", worst, tol, true, probes.size()});
  }

  // ∫_i f(i) ∫φ dκ(x,i) dμ_I = ∫_y R^*f(x,y) φ(y) dμ_X
  {
    double worst = 0.0;
    std::size_t samples = 0;
    for (const auto& p : probes) {
      for (const auto& phi : test_functions) {
        ++samples;
        for (std::size_t x = 0; x < n; ++x) {
          Complex lhs{};
          for (std::size_t i = 0; i < l; ++i) {
            Complex inner{};
            for (const KappaEntry& e : hg.kappa(x, static_cast<Label>(i))) inner += e.mass * phi[e.node];
            lhs += p.f[i] * haar[i] * inner;
          }
          Complex rhs{};
          for (std::size_t y = 0; y < n; ++y) rhs += weights[y] * p.f[scheme(x, y)] * phi[y];
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
    report.residuals.push_back({"T2", worst, tol, true, samples});
  }

  // (δ_i * δ_j)^⊤ = δ_{j^⊤} * δ_{i^⊤}
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < l; ++j) {
        const std::size_t it = hg.transpose(static_cast<Label>(i));
        const std::size_t jt = hg.transpose(static_cast<Label>(j));
        for (std::size_t k = 0; k < l; ++k) {
          const std::size_t kt = hg.transpose(static_cast<Label>(k));
          worst = std::max(worst, std::fabs(table(i, j, k) - table(jt, it, kt)));
        }
      }
    }
    report.residuals.push_back({"anti_automorphism", worst, tol, true, l * l});
  }

  // δ_{i_0} is a two-sided unit.
  {
    const std::size_t i0 = hg.identity();
    double worst = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t k = 0; k < l; ++k) {
        const double expect = i == k ? 1.0 : 0.0;
        worst = std::max({worst, std::fabs(table(i0, i, k) - expect), std::fabs(table(i, i0, k) - expect)});
      }
    }
    report.residuals.push_back({"convolution_identity", worst, tol, true, 2 * l});
  }

  // Total variation between δ_i * δ_j and δ_j * δ_i.
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = i + 1; j < l; ++j) {
        double tv = 0.0;
        for (std::size_t k = 0; k < l; ++k) tv += std::fabs(table(i, j, k) - table(j, i, k));
        worst = std::max(worst, 0.5 * tv);
      }
    }
    report.residuals.push_back({"commutativity", worst, tol, options.declared_commutative, l * (l - 1) / 2});
    CasOptions cas;
    cas.tolerance = tol;
    report.scheme_cas4_deviation = verify_cas(scheme, BorelFamily::singletons(l), cas).cas4_max_deviation;
  }
  return report;
}

}  // namespace casmat
