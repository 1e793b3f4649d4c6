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

#include "casmat/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "casmat/error.hpp"

namespace casmat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Label> identity_involution(std::size_t count) {
  std::vector<Label> inv(count);
  std::iota(inv.begin(), inv.end(), Label{0});
  return inv;
}

void require_degree(std::size_t n, const char* what) {
  if (n > kMaxGroupActionDegree) {
    throw Error(std::string(what) + " node count " + std::to_string(n) + " exceeds the cap " +
                std::to_string(kMaxGroupActionDegree));
  }
}

}  // namespace

Scheme cyclic_scheme(std::size_t n) {
  if (n < 2) throw Error("cyclic scheme needs n >= 2");
  require_degree(n, "cyclic scheme");
  std::vector<Label> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = static_cast<Label>((n - i) % n);
  std::vector<Label> rel(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) rel[x * n + y] = static_cast<Label>((y + n - x) % n);
  }
  return Scheme(MeasureSpace::counting(n), LabelSpace(std::move(inv), Label{0}), std::move(rel));
}

Scheme hamming_scheme(std::size_t d, std::size_t q) {
  if (d < 1 || q < 2) throw Error("Hamming scheme needs d >= 1 and q >= 2");
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (n > kMaxHammingNodes / q) {
      throw Error("Hamming scheme q^d exceeds the cap " + std::to_string(kMaxHammingNodes));
    }
    n *= q;
  }
  std::vector<Label> rel(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t a = x, b = y;
      Label dist = 0;
      for (std::size_t i = 0; i < d; ++i) {
        dist += (a % q) != (b % q);
        a /= q;
        b /= q;
      }
      rel[x * n + y] = dist;
    }
  }
  return Scheme(MeasureSpace::counting(n), LabelSpace(identity_involution(d + 1), Label{0}), std::move(rel));
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Scheme group_action_scheme(std::span<const Permutation> generators) {
  if (generators.empty()) throw Error("group action needs at least one generator");
  const std::size_t m = generators.front().size();
  if (m == 0) throw Error("group action on an empty set");
  require_degree(m, "group action");
  for (const Permutation& g : generators) {
    if (g.size() != m) throw Error("generators have different degrees");
    std::vector<bool> hit(m, false);
    for (std::size_t v : g) {
      if (v >= m || hit[v]) throw Error("generator is not a permutation of 0..m-1");
      hit[v] = true;
    }
  }
  UnionFind points(m);
  for (const Permutation& g : generators) {
    for (std::size_t x = 0; x < m; ++x) points.unite(x, g[x]);
  }
  for (std::size_t x = 1; x < m; ++x) {
    if (points.find(x) != points.find(0)) {
      throw Error("group action is not transitive: point " + std::to_string(x) + " is not in the orbit of 0");
    }
  }
  // The group is finite, so orbits of the generated monoid on pairs are the
  // orbits of the group.
  UnionFind pairs(m * m);
  for (const Permutation& g : generators) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) pairs.unite(x * m + y, g[x] * m + g[y]);
    }
  }
  std::vector<Label> label_of_root(m * m, kNoLabel);
  std::vector<Label> rel(m * m);
  Label next = 0;
  for (std::size_t p = 0; p < m * m; ++p) {
    Label& id = label_of_root[pairs.find(p)];
    if (id == kNoLabel) id = next++;
    rel[p] = id;
  }
  std::vector<Label> inv(next);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) inv[rel[x * m + y]] = rel[y * m + x];
  }
  const Label diagonal = rel[0];
  return Scheme(MeasureSpace::counting(m), LabelSpace(std::move(inv), diagonal), std::move(rel));
}

std::vector<Permutation> symmetric_group_generators(std::size_t m) {
  if (m == 0) throw Error("degree must be positive");
  Permutation cycle(m), swap(m);
  for (std::size_t i = 0; i < m; ++i) {
    cycle[i] = (i + 1) % m;
    swap[i] = i;
  }
  if (m >= 2) std::swap(swap[0], swap[1]);
  return {swap, cycle};
}

std::vector<Permutation> cyclic_group_generators(std::size_t m) {
  if (m == 0) throw Error("degree must be positive");
  Permutation cycle(m);
  for (std::size_t i = 0; i < m; ++i) cycle[i] = (i + 1) % m;
  return {cycle};
}

std::vector<Permutation> dihedral_group_generators(std::size_t m) {
  if (m == 0) throw Error("degree must be positive");
  Permutation cycle(m), reflection(m);
  for (std::size_t i = 0; i < m; ++i) {
    cycle[i] = (i + 1) % m;
    reflection[i] = (m - i) % m;
  }
  return {cycle, reflection};
}

Scheme circle_scheme(std::size_t n_nodes, std::size_t n_bins, bool signed_bins) {
  if (n_bins < 2) throw Error("circle scheme needs at least 2 bins");
  if (n_nodes < 2 || n_nodes % n_bins != 0) throw Error("circle scheme needs n_bins to divide n_nodes");
  require_degree(n_nodes, "circle scheme");
  const std::size_t n = n_nodes;
  const std::size_t bins = n_bins;
  const std::size_t r = n / bins;

  // Label of a cell offset a = c(y) - c(x) mod bins.
  auto label_of_offset = [&](std::size_t a) -> Label {
    return static_cast<Label>(signed_bins ? a : std::min(a, bins - a));
  };
  const std::size_t count = signed_bins ? bins : bins / 2 + 1;

  std::vector<Label> inv(count);
  std::vector<std::optional<BinInterval>> meta(count);
  const double half = std::numbers::pi / static_cast<double>(bins);
  for (std::size_t a = 0; a < count; ++a) {
    inv[a] = signed_bins ? static_cast<Label>((bins - a) % bins) : static_cast<Label>(a);
    // shared edges (2a ± 1)π/B so neighbouring bins meet exactly
    meta[a] = BinInterval{half * (2.0 * static_cast<double>(a) - 1.0), half * (2.0 * static_cast<double>(a) + 1.0),
                          true, false};
  }

  std::vector<Label> rel(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t cx = x / r;
    for (std::size_t y = 0; y < n; ++y) rel[x * n + y] = label_of_offset((y / r + bins - cx) % bins);
  }

  Coordinates coords{1, std::vector<double>(n)};
  for (std::size_t x = 0; x < n; ++x) coords.values[x] = kTwoPi * static_cast<double>(x) / static_cast<double>(n);
  auto space = MeasureSpace::make_quadrature(std::vector<double>(n, kTwoPi / static_cast<double>(n)), std::move(coords));
  return Scheme(std::move(space), LabelSpace(std::move(inv), Label{0}, std::move(meta)), std::move(rel));
}

std::vector<double> circle_hat_bump(const Scheme& circle, double width) {
  if (!(width > 0.0)) throw Error("bump width must be positive");
  const LabelSpace& labels = circle.labels();
  std::vector<double> bump(labels.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels.identity() && *labels.identity() == i) {
      bump[i] = 1.0;
      continue;
    }
    if (!labels.has_bins() || !labels.bin(static_cast<Label>(i))) continue;
    const double c = std::fmod(std::fabs(labels.bin(static_cast<Label>(i))->midpoint()), kTwoPi);
    const double d = std::min(c, kTwoPi - c);
    bump[i] = std::max(0.0, 1.0 - d / width);
  }
  return bump;
}

MeasureSpace random_sphere_quadrature(std::size_t count, std::uint64_t seed) {
  if (count < 2) throw Error("sphere quadrature needs at least 2 nodes");
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Coordinates coords{3, std::vector<double>(3 * count)};
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 2.0 * unit() - 1.0;
    const double phi = kTwoPi * unit();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    coords.values[3 * i] = rho * std::cos(phi);
    coords.values[3 * i + 1] = rho * std::sin(phi);
    coords.values[3 * i + 2] = z;
  }
  const double w = 4.0 * std::numbers::pi / static_cast<double>(count);
  return MeasureSpace::make_quadrature(std::vector<double>(count, w), std::move(coords));
}

Scheme sphere_scheme(const MeasureSpace& nodes, std::size_t n_bins) {
  if (n_bins < 2) throw Error("sphere scheme needs at least 2 bins");
  const Coordinates& c = nodes.coordinates();
  if (c.dim != 3) throw Error("sphere nodes must carry 3-d coordinates");
  const std::size_t n = nodes.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto p = c.point(x);
    const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (std::fabs(norm - 1.0) > 1e-9) throw Error("sphere node " + std::to_string(x) + " is not a unit vector");
  }
  const auto bins = static_cast<double>(n_bins);
  std::vector<std::uint32_t> bin(n * n, 0);
  std::vector<bool> used(n_bins, false);
  for (std::size_t x = 0; x < n; ++x) {
    const auto p = c.point(x);
    for (std::size_t y = x + 1; y < n; ++y) {
      const auto q = c.point(y);
      const double t = std::clamp(p[0] * q[0] + p[1] * q[1] + p[2] * q[2], -1.0, 1.0);
      const auto b = std::min<std::size_t>(n_bins - 1, static_cast<std::size_t>(std::floor((t + 1.0) * 0.5 * bins)));
      bin[x * n + y] = bin[y * n + x] = static_cast<std::uint32_t>(b);
      used[b] = true;
    }
  }
  std::vector<Label> label_of_bin(n_bins, kNoLabel);
  std::vector<std::optional<BinInterval>> meta{std::nullopt};
  Label next = 1;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (!used[b]) continue;
    label_of_bin[b] = next++;
    const double lo = -1.0 + 2.0 * static_cast<double>(b) / bins;
    const double hi = b + 1 == n_bins ? 1.0 : -1.0 + 2.0 * static_cast<double>(b + 1) / bins;
    meta.push_back(BinInterval{lo, hi, true, b + 1 == n_bins});
  }
  std::vector<Label> rel(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) rel[x * n + y] = x == y ? Label{0} : label_of_bin[bin[x * n + y]];
  }
  return Scheme(nodes, LabelSpace(identity_involution(next), Label{0}, std::move(meta)), std::move(rel));
}

Scheme sphere_scheme(std::size_t count, std::size_t n_bins, std::uint64_t seed) {
  return sphere_scheme(random_sphere_quadrature(count, seed), n_bins);
}

Scheme delsarte_scheme(std::span<const double> metric, std::vector<double> weights, std::size_t n_bins,
                       std::optional<double> max_squared) {
  const std::size_t n = weights.size();
  if (n == 0 || metric.size() != n * n) throw Error("metric table must be node_count x node_count");
  auto space = MeasureSpace::make_quadrature(std::move(weights));
  auto witness = [](std::size_t x, std::size_t y) {
    return " at (" + std::to_string(x) + "," + std::to_string(y) + ")";
  };
  std::vector<double> squared(n * n, 0.0);
  double largest = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    if (metric[x * n + x] != 0.0) throw Error("metric is nonzero on the diagonal" + witness(x, x));
    for (std::size_t y = 0; y < n; ++y) {
      const double d = metric[x * n + y];
      if (d != metric[y * n + x]) throw Error("metric is not symmetric" + witness(x, y));
      if (x != y && !(std::isfinite(d) && d > 0.0)) {
        throw Error("off-diagonal distance must be positive and finite" + witness(x, y));
      }
      squared[x * n + y] = d * d;
      largest = std::max(largest, d * d);
    }
  }

  std::vector<Label> rel(n * n, 0);
  std::vector<std::optional<BinInterval>> meta{std::nullopt};
  if (n_bins == 0) {
    std::vector<double> values;
    for (std::size_t p = 0; p < n * n; ++p) {
      if (p / n != p % n) values.push_back(squared[p]);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t p = 0; p < n * n; ++p) {
      if (p / n == p % n) continue;
      rel[p] = static_cast<Label>(std::lower_bound(values.begin(), values.end(), squared[p]) - values.begin()) + 1;
    }
    for (double v : values) meta.push_back(BinInterval{v, v, true, true});
  } else {
    const double top = max_squared.value_or(largest);
    if (!(top > 0.0) || largest > top) throw Error("squared distances exceed the binning range");
    const auto bins = static_cast<double>(n_bins);
    std::vector<std::size_t> bin(n * n, 0);
    std::vector<bool> used(n_bins, false);
    for (std::size_t p = 0; p < n * n; ++p) {
      if (p / n == p % n) continue;
      const auto b = std::min<std::size_t>(n_bins - 1, static_cast<std::size_t>(std::floor(squared[p] / top * bins)));
      bin[p] = b;
      used[b] = true;
    }
    std::vector<Label> label_of_bin(n_bins, kNoLabel);
    Label next = 1;
    for (std::size_t b = 0; b < n_bins; ++b) {
      if (!used[b]) continue;
      label_of_bin[b] = next++;
      // bin 0 is open at 0, which belongs to the diagonal
      meta.push_back(BinInterval{top * static_cast<double>(b) / bins, top * static_cast<double>(b + 1) / bins,
                                 b != 0, b + 1 == n_bins});
    }
    for (std::size_t p = 0; p < n * n; ++p) {
      if (p / n != p % n) rel[p] = label_of_bin[bin[p]];
    }
  }
  const std::size_t count = meta.size();
  return Scheme(std::move(space), LabelSpace(identity_involution(count), Label{0}, std::move(meta)), std::move(rel));
}

std::vector<double> hamming_metric(std::size_t d, std::size_t q) {
  const Scheme h = hamming_scheme(d, q);
  std::vector<double> m(h.relation().size());
  std::transform(h.relation().begin(), h.relation().end(), m.begin(), [](Label v) { return static_cast<double>(v); });
  return m;
}

std::vector<double> chordal_metric(const MeasureSpace& nodes) {
  const Coordinates& c = nodes.coordinates();
  if (c.dim != 3) throw Error("chordal metric needs 3-d coordinates");
  const std::size_t n = nodes.size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const auto p = c.point(x);
      const auto q = c.point(y);
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
      m[x * n + y] = m[y * n + x] = std::sqrt(s);
    }
  }
  return m;
}

const char* to_string(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::cyclic: return "cyclic";
    case RecipeKind::hamming: return "hamming";
    case RecipeKind::group_action: return "group_action";
    case RecipeKind::circle: return "circle";
    case RecipeKind::sphere: return "sphere";
    case RecipeKind::delsarte: return "delsarte";
  }
  return "unknown";
}

std::optional<RecipeKind> parse_recipe_kind(std::string_view name) {
  for (RecipeKind k : {RecipeKind::cyclic, RecipeKind::hamming, RecipeKind::group_action, RecipeKind::circle,
                       RecipeKind::sphere, RecipeKind::delsarte}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string SchemeRecipe::to_string() const {
  std::string out = casmat::to_string(kind);
  for (const auto& [k, v] : params) out += " " + k + "=" + v;
  return out;
}

SchemeRecipe SchemeRecipe::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) throw Error("empty recipe");
  const auto kind = parse_recipe_kind(token);
  if (!kind) throw Error("unknown recipe kind '" + token + "'");
  SchemeRecipe r;
  r.kind = *kind;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("recipe parameter '" + token + "' is not key=value");
    r.params[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return r;
}

namespace {

std::size_t parse_count(std::string_view text, const std::string& key) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error("recipe parameter " + key + "='" + std::string(text) + "' is not a nonnegative integer");
  }
  return v;
}

struct RecipeParams {
  const SchemeRecipe& recipe;

  const std::string* find(const std::string& key) const {
    const auto it = recipe.params.find(key);
    return it == recipe.params.end() ? nullptr : &it->second;
  }
  std::size_t count(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw Error(std::string(to_string(recipe.kind)) + " recipe needs " + key + "=");
    return parse_count(*v, key);
  }
  std::size_t count_or(const std::string& key, std::size_t fallback) const {
    return find(key) ? count(key) : fallback;
  }
  std::string text_or(const std::string& key, std::string fallback) const {
    const auto* v = find(key);
    return v ? *v : fallback;
  }
};

std::vector<Permutation> parse_generators(const std::string& text) {
  std::vector<Permutation> gens;
  std::stringstream all(text);
  std::string chunk;
  while (std::getline(all, chunk, ';')) {
    Permutation g;
    std::stringstream one(chunk);
    std::string v;
    while (std::getline(one, v, ',')) g.push_back(parse_count(v, "gens"));
    gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace

Scheme materialize(const SchemeRecipe& recipe) {
  const RecipeParams p{recipe};
  switch (recipe.kind) {
    case RecipeKind::cyclic: return cyclic_scheme(p.count("n"));
    case RecipeKind::hamming: return hamming_scheme(p.count("d"), p.count("q"));
    case RecipeKind::group_action: {
      if (const auto* gens = p.find("gens")) return group_action_scheme(parse_generators(*gens));
      const std::string group = p.text_or("group", "symmetric");
      const std::size_t m = p.count("m");
      if (group == "symmetric") return group_action_scheme(symmetric_group_generators(m));
      if (group == "cyclic") return group_action_scheme(cyclic_group_generators(m));
      if (group == "dihedral") return group_action_scheme(dihedral_group_generators(m));
      throw Error("unknown group '" + group + "'");
    }
    case RecipeKind::circle: return circle_scheme(p.count("nodes"), p.count("bins"), p.count_or("signed", 1) != 0);
    case RecipeKind::sphere: return sphere_scheme(p.count("nodes"), p.count("bins"), p.count_or("seed", kDefaultSphereSeed));
    case RecipeKind::delsarte: {
      const std::string metric = p.text_or("metric", "hamming");
      if (metric == "hamming") {
        const std::size_t d = p.count("d"), q = p.count("q");
        const auto table = hamming_metric(d, q);
        const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(table.size()))));
        return delsarte_scheme(table, std::vector<double>(n, 1.0), p.count_or("bins", 0));
      }
      if (metric == "sphere") {
        const auto nodes = random_sphere_quadrature(p.count("nodes"), p.count_or("seed", kDefaultSphereSeed));
        const auto w = nodes.weights();
        return delsarte_scheme(chordal_metric(nodes), std::vector<double>(w.begin(), w.end()), p.count("bins"), 4.0);
      }
      throw Error("unknown delsarte metric '" + metric + "'");
    }
  }
  throw Error("unknown recipe kind");
}

}  // namespace casmat
