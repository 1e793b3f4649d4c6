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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>

namespace oracle {

Table cyclic(std::size_t n) {
  Table t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<std::uint32_t>((y + n - x) % n);
  }
  return t;
}

Table hamming(std::size_t d, std::size_t q) {
  std::vector<std::vector<std::size_t>> words{{}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : words) {
      for (std::size_t s = 0; s < q; ++s) {
        auto v = w;
        v.push_back(s);
        next.push_back(v);
      }
    }
    words = next;
  }
  const std::size_t n = words.size();
  Table t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::uint32_t dist = 0;
      for (std::size_t i = 0; i < d; ++i) dist += words[x][i] != words[y][i];
      t[x * n + y] = dist;
    }
  }
  return t;
}

Table graph_distance(const std::vector<std::vector<std::size_t>>& adjacency) {
  const std::size_t n = adjacency.size();
  Table t(n * n, 0xFFFFFFFFu);
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> queue{s};
    t[s * n + s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adjacency[u]) {
        if (t[s * n + v] == 0xFFFFFFFFu) {
          t[s * n + v] = t[s * n + u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return t;
}

std::vector<std::vector<std::size_t>> cube_graph(std::size_t d) {
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t b = 0; b < d; ++b) adj[x].push_back(x ^ (std::size_t{1} << b));
  }
  return adj;
}

Table orbitals(const std::vector<std::vector<std::size_t>>& gens) {
  const std::size_t m = gens.front().size();
  std::vector<std::size_t> id(m);
  for (std::size_t i = 0; i < m; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> group{id};
  std::deque<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty()) {
    const auto g = frontier.front();
    frontier.pop_front();
    for (const auto& h : gens) {
      std::vector<std::size_t> gh(m);
      for (std::size_t i = 0; i < m; ++i) gh[i] = h[g[i]];
      if (group.insert(gh).second) frontier.push_back(gh);
    }
  }
  Table t(m * m, 0xFFFFFFFFu);
  std::uint32_t next = 0;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (t[x * m + y] != 0xFFFFFFFFu) continue;
      for (const auto& g : group) t[g[x] * m + g[y]] = next;
      ++next;
    }
  }
  return t;
}

Intersection intersection_numbers(const Table& rel, const std::vector<double>& w, std::size_t labels) {
  const std::size_t n = w.size();
  const std::size_t l = labels;
  Intersection out;
  out.labels = l;
  out.p.assign(l * l * l, 0.0);
  std::vector<double> lo(l * l * l, INFINITY), hi(l * l * l, -INFINITY);
  std::vector<bool> seen(l, false);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      const std::size_t k = rel[x * n + z];
      std::vector<double> m(l * l, 0.0);
      for (std::size_t y = 0; y < n; ++y) m[rel[x * n + y] * l + rel[y * n + z]] += w[y];
      for (std::size_t ij = 0; ij < l * l; ++ij) {
        const std::size_t idx = ij * l + k;
        lo[idx] = std::min(lo[idx], m[ij]);
        hi[idx] = std::max(hi[idx], m[ij]);
        if (!seen[k]) out.p[idx] = m[ij];
      }
      seen[k] = true;
    }
  }
  for (std::size_t idx = 0; idx < lo.size(); ++idx) {
    if (std::isfinite(lo[idx])) out.max_deviation = std::max(out.max_deviation, hi[idx] - lo[idx]);
  }
  return out;
}

std::vector<Cx> matmul(const std::vector<Cx>& a, const std::vector<Cx>& b, const std::vector<double>& w) {
  const std::size_t n = w.size();
  std::vector<Cx> c(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      Cx s = 0;
      for (std::size_t y = 0; y < n; ++y) s += w[y] * a[x * n + y] * b[y * n + z];
      c[x * n + z] = s;
    }
  }
  return c;
}

bool same_partition(const Table& a, const Table& b, std::vector<std::uint32_t>* bijection) {
  if (a.size() != b.size()) return false;
  std::map<std::uint32_t, std::uint32_t> fwd, back;
  for (std::size_t p = 0; p < a.size(); ++p) {
    const auto [it, fresh] = fwd.emplace(a[p], b[p]);
    if (!fresh && it->second != b[p]) return false;
    const auto [jt, fresh2] = back.emplace(b[p], a[p]);
    if (!fresh2 && jt->second != a[p]) return false;
  }
  if (bijection) {
    bijection->assign(fwd.empty() ? 0 : fwd.rbegin()->first + 1, 0xFFFFFFFFu);
    for (const auto& [k, v] : fwd) (*bijection)[k] = v;
  }
  return true;
}

double cap_area_monte_carlo(double t, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double a = normal(rng), b = normal(rng), c = normal(rng);
    if (c / std::sqrt(a * a + b * b + c * c) >= t) ++hits;
  }
  return 4.0 * std::numbers::pi * static_cast<double>(hits) / static_cast<double>(samples);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
