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

#include "casmat/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "casmat/error.hpp"
#include "casmat/parallel.hpp"

namespace casmat {

LabelSpace::LabelSpace(std::vector<Label> involution, std::optional<Label> identity,
                       std::vector<std::optional<BinInterval>> bins)
    : involution_(std::move(involution)), identity_(identity), bins_(std::move(bins)) {
  const std::size_t n = involution_.size();
  if (n == 0) throw Error("label space is empty");
  for (std::size_t i = 0; i < n; ++i) {
    const Label t = involution_[i];
    if (t >= n) throw Error("involution maps label " + std::to_string(i) + " outside the label space");
    if (involution_[t] != i) throw Error("label map is not an involution at label " + std::to_string(i));
  }
  if (identity_) {
    if (*identity_ >= n) throw Error("identity label out of range");
    if (involution_[*identity_] != *identity_) throw Error("involution moves the identity label");
  }
  if (!bins_.empty()) {
    if (bins_.size() != n) throw Error("bin descriptors do not match label count");
    std::vector<BinInterval> present;
    for (const auto& b : bins_) {
      if (!b) continue;
      if (!(b->lo <= b->hi)) throw Error("bin interval has lo > hi");
      present.push_back(*b);
    }
    std::sort(present.begin(), present.end(),
              [](const BinInterval& a, const BinInterval& b) { return a.lo < b.lo; });
    for (std::size_t k = 1; k < present.size(); ++k) {
      const BinInterval& a = present[k - 1];
      const BinInterval& b = present[k];
      if (a.hi > b.lo || (a.hi == b.lo && a.closed_hi && b.closed_lo)) {
        throw Error("bin intervals overlap");
      }
    }
  }
}

LabelSpace LabelSpace::symmetric(std::size_t count, std::optional<Label> identity) {
  std::vector<Label> inv(count);
  for (std::size_t i = 0; i < count; ++i) inv[i] = static_cast<Label>(i);
  return LabelSpace(std::move(inv), identity);
}

bool LabelSpace::involution_is_identity() const noexcept {
  for (std::size_t i = 0; i < involution_.size(); ++i) {
    if (involution_[i] != i) return false;
  }
  return true;
}

Scheme::Scheme(MeasureSpace space, LabelSpace labels, std::vector<Label> relation)
    : space_(std::move(space)), labels_(std::move(labels)), relation_(std::move(relation)) {
  const std::size_t n = space_.size();
  if (relation_.size() != n * n) throw Error("relation table is not node_count x node_count");
  const std::size_t l = labels_.size();
  for (std::size_t p = 0; p < relation_.size(); ++p) {
    if (relation_[p] >= l) {
      throw Error("relation entry (" + std::to_string(p / n) + ", " + std::to_string(p % n) +
                  ") names an unknown label");
    }
  }
}

LabelSet::LabelSet(std::size_t label_count, std::initializer_list<Label> members)
    : mask_(label_count, 0) {
  for (Label i : members) insert(i);
}

LabelSet LabelSet::singleton(std::size_t label_count, Label i) {
  LabelSet s(label_count);
  s.insert(i);
  return s;
}

LabelSet LabelSet::all(std::size_t label_count) {
  LabelSet s(label_count);
  std::fill(s.mask_.begin(), s.mask_.end(), 1);
  return s;
}

std::vector<Label> LabelSet::members() const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(static_cast<Label>(i));
  }
  return out;
}

bool LabelSet::empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](unsigned char c) { return c != 0; });
}

LabelSet LabelSet::transposed(const LabelSpace& labels) const {
  if (labels.size() != mask_.size()) throw Error("label set universe does not match label space");
  LabelSet out(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.insert(labels.transpose(static_cast<Label>(i)));
  }
  return out;
}

BorelFamily BorelFamily::singletons(std::size_t label_count) {
  BorelFamily f;
  f.descriptor = "singletons(" + std::to_string(label_count) + ")";
  for (std::size_t i = 0; i < label_count; ++i) {
    f.sets.push_back(LabelSet::singleton(label_count, static_cast<Label>(i)));
  }
  return f;
}

BorelFamily BorelFamily::pairs(std::size_t label_count) {
  BorelFamily f = singletons(label_count);
  f.descriptor = "singletons+pairs(" + std::to_string(label_count) + ")";
  for (std::size_t i = 0; i < label_count; ++i) {
    for (std::size_t j = i + 1; j < label_count; ++j) {
      f.sets.push_back(LabelSet(label_count, {static_cast<Label>(i), static_cast<Label>(j)}));
    }
  }
  return f;
}

std::vector<NodePair> fiber(const Scheme& scheme, Label i) {
  if (i >= scheme.label_count()) throw Error("unknown label " + std::to_string(i));
  const std::size_t n = scheme.node_count();
  std::vector<NodePair> out;
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = scheme.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (row[y] == i) out.emplace_back(x, y);
    }
  }
  if (out.empty()) throw Error("fiber of label " + std::to_string(i) + " is empty: relation is not surjective");
  return out;
}

namespace {

// Column-major copy of the relation so that R(·, z) is contiguous.
std::vector<Label> transposed_relation(const Scheme& scheme) {
  const std::size_t n = scheme.node_count();
  std::vector<Label> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) t[y * n + x] = scheme(x, y);
  }
  return t;
}

void profile_into(const Scheme& scheme, std::span<const Label> columns, std::size_t x, std::size_t z,
                  std::span<double> out) {
  const std::size_t n = scheme.node_count();
  const std::size_t l = scheme.label_count();
  std::fill(out.begin(), out.end(), 0.0);
  const auto w = scheme.space().weights();
  const auto row = scheme.row(x);
  const Label* col = columns.data() + z * n;
  // Sums of equal weights in y order; exact for counting measure.
  for (std::size_t y = 0; y < n; ++y) out[row[y] * l + col[y]] += w[y];
}

}  // namespace

std::vector<double> intersection_profile(const Scheme& scheme, std::size_t x, std::size_t z) {
  const std::size_t n = scheme.node_count();
  if (x >= n || z >= n) throw Error("node index out of range");
  const std::size_t l = scheme.label_count();
  std::vector<double> out(l * l, 0.0);
  const auto w = scheme.space().weights();
  for (std::size_t y = 0; y < n; ++y) out[scheme(x, y) * l + scheme(y, z)] += w[y];
  return out;
}

std::vector<double> row_masses(const Scheme& scheme) {
  const std::size_t n = scheme.node_count();
  const std::size_t l = scheme.label_count();
  const auto w = scheme.space().weights();
  std::vector<double> v(n * l, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = scheme.row(x);
    double* vx = v.data() + x * l;
    for (std::size_t y = 0; y < n; ++y) vx[row[y]] += w[y];
  }
  return v;
}

IntersectionNumber intersection_number(const Scheme& scheme, const LabelSet& w,
                                       const LabelSet& w_prime, Label k) {
  const std::size_t l = scheme.label_count();
  if (w.universe() != l || w_prime.universe() != l) throw Error("label set universe does not match scheme");
  const auto pairs = fiber(scheme, k);
  const auto weights = scheme.space().weights();
  const std::size_t n = scheme.node_count();
  long double sum = 0.0L;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& [x, z] : pairs) {
    double m = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (w.contains(scheme(x, y)) && w_prime.contains(scheme(y, z))) m += weights[y];
    }
    sum += m;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return {static_cast<double>(sum / static_cast<long double>(pairs.size())), hi - lo};
}

bool CasReport::passed() const noexcept {
  return surjective && cas1_ok && cas3_ok && cas2_ok && pushforward_ok &&
         transpose_identity_deviation <= tolerance;
}

namespace {

std::string set_text(const LabelSet& s) {
  std::string out = "{";
  bool first = true;
  for (Label i : s.members()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

// Pairs examined per label, sorted; sampled fibers are closed under
// transposition across labels.
std::vector<std::vector<NodePair>> examined_pairs(const Scheme& scheme, const CasOptions& options,
                                                  bool& sampled) {
  const std::size_t n = scheme.node_count();
  const std::size_t l = scheme.label_count();
  std::vector<std::vector<NodePair>> per_label(l);
  std::vector<std::size_t> seen(l, 0);
  const std::size_t cap = options.max_pairs_per_label;
  std::mt19937_64 rng(options.seed);
  sampled = false;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Label k = scheme(x, y);
      auto& bucket = per_label[k];
      const std::size_t count = ++seen[k];
      if (cap == 0 || bucket.size() < cap) {
        bucket.emplace_back(x, y);
        continue;
      }
      sampled = true;
      // reservoir sampling
      const std::uint64_t r = rng() % count;
      if (r < cap) bucket[r] = {x, y};
    }
  }
  if (sampled) {
    std::vector<std::set<NodePair>> closed(l);
    for (std::size_t k = 0; k < l; ++k) {
      for (const auto& [x, y] : per_label[k]) {
        closed[k].emplace(x, y);
        closed[scheme(y, x)].emplace(y, x);
      }
    }
    for (std::size_t k = 0; k < l; ++k) per_label[k].assign(closed[k].begin(), closed[k].end());
  }
  for (auto& bucket : per_label) std::sort(bucket.begin(), bucket.end());
  return per_label;
}

}  // namespace

CasReport verify_cas(const Scheme& scheme, const BorelFamily& family, const CasOptions& options) {
  if (family.sets.empty()) throw Error("Borel family is empty");
  if (!(options.tolerance >= 0.0)) throw Error("tolerance must be nonnegative");
  const std::size_t n = scheme.node_count();
  const std::size_t l = scheme.label_count();
  for (const LabelSet& s : family.sets) {
    if (s.universe() != l) throw Error("Borel family set does not match the label count");
  }
  const LabelSpace& labels = scheme.labels();
  const double tol = options.tolerance;
  const double total = scheme.space().total_mass();

  CasReport report;
  report.tolerance = tol;
  report.borel_family_descriptor = family.descriptor;
  auto add_witness = [&](Witness w) {
    if (report.witnesses.size() < options.max_witnesses) report.witnesses.push_back(std::move(w));
  };

  // Surjectivity.
  std::vector<std::size_t> fiber_size(l, 0);
  for (Label v : scheme.relation()) ++fiber_size[v];
  for (std::size_t i = 0; i < l; ++i) {
    if (fiber_size[i] == 0) report.missing_labels.push_back(static_cast<Label>(i));
  }
  report.surjective = report.missing_labels.empty();
  if (!report.surjective) {
    add_witness({"surjectivity", {}, "label " + std::to_string(report.missing_labels.front()) + " has an empty fiber"});
  }

  // CAS1.
  report.cas1_ok = labels.identity().has_value();
  if (!report.cas1_ok) add_witness({"CAS1", {}, "no identity label"});
  if (const auto i0 = labels.identity()) {
    bool diag_ok = true;
    for (std::size_t x = 0; x < n; ++x) {
      if (scheme(x, x) != *i0) {
        if (diag_ok) add_witness({"CAS1", {{x, x}}, "diagonal pair outside the identity fiber"});
        diag_ok = false;
      }
    }
    std::optional<NodePair> first_off;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && scheme(x, y) == *i0) {
          ++report.offdiagonal_in_identity_fiber;
          if (!first_off) first_off = NodePair{x, y};
        }
      }
    }
    const bool slack_ok = report.offdiagonal_in_identity_fiber <= options.diagonal_slack;
    if (!slack_ok) {
      add_witness({"CAS1", {*first_off},
                   std::to_string(report.offdiagonal_in_identity_fiber) +
                       " off-diagonal pairs in the identity fiber, slack " +
                       std::to_string(options.diagonal_slack)});
    }
    report.cas1_ok = diag_ok && slack_ok;
  }

  // CAS3.
  report.cas3_ok = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (scheme(y, x) != labels.transpose(scheme(x, y))) {
        add_witness({"CAS3", {{x, y}, {y, x}},
                     "R(y,x)=" + std::to_string(scheme(y, x)) + " but R(x,y)^T=" +
                         std::to_string(labels.transpose(scheme(x, y)))});
        report.cas3_ok = false;
        break;
      }
    }
  }

  report.symmetric = report.cas3_ok && labels.involution_is_identity();

  // Row masses: valency constancy and the pushforward identity. The identity
  // deviation for reference row r is |Σ_x w_x (v_x - v_r)|, extremal at the
  // rows of smallest and largest valency; constant valencies give exactly 0.
  {
    const auto v = row_masses(scheme);
    const auto w = scheme.space().weights();
    double worst = 0.0;
    NodePair worst_at{0, 0};
    for (std::size_t i = 0; i < l; ++i) {
      std::size_t lo_x = 0, hi_x = 0;
      for (std::size_t x = 1; x < n; ++x) {
        if (v[x * l + i] < v[lo_x * l + i]) lo_x = x;
        if (v[x * l + i] > v[hi_x * l + i]) hi_x = x;
      }
      report.row_valency_deviation = std::max(report.row_valency_deviation, v[hi_x * l + i] - v[lo_x * l + i]);
      for (std::size_t r : {lo_x, hi_x}) {
        long double acc = 0.0L;
        for (std::size_t x = 0; x < n; ++x) acc += static_cast<long double>(w[x]) * (v[x * l + i] - v[r * l + i]);
        const double d = std::fabs(static_cast<double>(acc));
        if (d > worst) {
          worst = d;
          worst_at = {r, i};
        }
      }
    }
    report.pushforward_deviation = worst;
    report.pushforward_ok = worst <= tol * total;
    if (!report.pushforward_ok) {
      add_witness({"pushforward", {{worst_at.first, worst_at.first}},
                   "row " + std::to_string(worst_at.first) + " label " + std::to_string(worst_at.second) +
                       " deviates by " + std::to_string(worst)});
    }
  }

  // CAS2 over the generating family.
  const auto pairs = examined_pairs(scheme, options, report.sampled);
  const auto columns = transposed_relation(scheme);
  const std::size_t m = family.sets.size();
  std::vector<std::vector<Label>> members(m);
  bool singleton_identity = m == l;
  for (std::size_t s = 0; s < m; ++s) {
    members[s] = family.sets[s].members();
    if (!(members[s].size() == 1 && members[s][0] == s)) singleton_identity = false;
  }

  struct Extreme {
    double lo = INFINITY, hi = -INFINITY;
    NodePair lo_at{}, hi_at{};
  };
  std::vector<std::vector<long double>> mean_profile(l, std::vector<long double>(l * l, 0.0L));
  std::vector<Extreme> extremes(l * m * m);
  const std::size_t block = 128;
  std::vector<double> profiles;
  std::vector<double> family_values(m * m);
  std::vector<double> partial(m * l);

  for (std::size_t k = 0; k < l; ++k) {
    const auto& bucket = pairs[k];
    report.pairs_examined += bucket.size();
    for (std::size_t start = 0; start < bucket.size(); start += block) {
      const std::size_t count = std::min(block, bucket.size() - start);
      profiles.assign(count * l * l, 0.0);
      parallel_for(0, count, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
          const auto [x, z] = bucket[start + p];
          profile_into(scheme, columns, x, z, {profiles.data() + p * l * l, l * l});
        }
      });
      for (std::size_t p = 0; p < count; ++p) {
        const double* h = profiles.data() + p * l * l;
        auto& mean = mean_profile[k];
        for (std::size_t c = 0; c < l * l; ++c) mean[c] += h[c];
        const double* values = h;
        if (!singleton_identity) {
          for (std::size_t s = 0; s < m; ++s) {
            double* r = partial.data() + s * l;
            std::fill(r, r + l, 0.0);
            for (Label a : members[s]) {
              for (std::size_t b = 0; b < l; ++b) r[b] += h[a * l + b];
            }
          }
          for (std::size_t s = 0; s < m; ++s) {
            for (std::size_t t = 0; t < m; ++t) {
              double acc = 0.0;
              for (Label b : members[t]) acc += partial[s * l + b];
              family_values[s * m + t] = acc;
            }
          }
          values = family_values.data();
        }
        Extreme* ext = extremes.data() + k * m * m;
        const NodePair at = bucket[start + p];
        for (std::size_t c = 0; c < m * m; ++c) {
          if (values[c] < ext[c].lo) {
            ext[c].lo = values[c];
            ext[c].lo_at = at;
          }
          if (values[c] > ext[c].hi) {
            ext[c].hi = values[c];
            ext[c].hi_at = at;
          }
        }
      }
    }
    if (!bucket.empty()) {
      for (auto& c : mean_profile[k]) c /= static_cast<long double>(bucket.size());
    }
  }

  struct Violation {
    double deviation;
    std::size_t k, s, t;
  };
  std::vector<Violation> violations;
  for (std::size_t k = 0; k < l; ++k) {
    if (pairs[k].empty()) continue;
    for (std::size_t c = 0; c < m * m; ++c) {
      const Extreme& e = extremes[k * m * m + c];
      const double dev = e.hi - e.lo;
      if (dev > report.cas2_max_deviation) report.cas2_max_deviation = dev;
      if (dev > tol) violations.push_back({dev, k, c / m, c % m});
    }
  }
  report.cas2_relative_deviation = report.cas2_max_deviation / total;
  report.cas2_ok = report.cas2_max_deviation <= tol;
  std::stable_sort(violations.begin(), violations.end(),
                   [](const Violation& a, const Violation& b) { return a.deviation > b.deviation; });
  for (const auto& v : violations) {
    if (report.witnesses.size() >= options.max_witnesses) break;
    const Extreme& e = extremes[v.k * m * m + v.s * m + v.t];
    std::ostringstream detail;
    detail << "p_{W,W'}^k with W=" << set_text(family.sets[v.s]) << " W'=" << set_text(family.sets[v.t])
           << " k=" << v.k << " ranges over [" << e.lo << ", " << e.hi << "] on the fiber";
    add_witness({"CAS2", {e.lo_at, e.hi_at}, detail.str()});
  }

  // Mean intersection numbers through the mean profiles (linear in the
  // profile), used for CAS4 and the transpose identity.
  auto mean_value = [&](std::size_t k, const std::vector<Label>& a_set, const std::vector<Label>& b_set) {
    long double acc = 0.0L;
    for (Label a : a_set) {
      for (Label b : b_set) acc += mean_profile[k][a * l + b];
    }
    return static_cast<double>(acc);
  };
  std::vector<std::vector<Label>> transposed_members(m);
  for (std::size_t s = 0; s < m; ++s) transposed_members[s] = family.sets[s].transposed(labels).members();
  for (std::size_t k = 0; k < l; ++k) {
    if (pairs[k].empty()) continue;
    const Label kt = labels.transpose(static_cast<Label>(k));
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t t = 0; t < m; ++t) {
        const double p = mean_value(k, members[s], members[t]);
        if (t > s) {
          const double q = mean_value(k, members[t], members[s]);
          report.cas4_max_deviation = std::max(report.cas4_max_deviation, std::fabs(p - q));
        }
        if (!pairs[kt].empty()) {
          const double r = mean_value(kt, transposed_members[t], transposed_members[s]);
          report.transpose_identity_deviation = std::max(report.transpose_identity_deviation, std::fabs(p - r));
        }
      }
    }
  }
  report.commutative = report.cas4_max_deviation <= tol;
  return report;
}

}  // namespace casmat
