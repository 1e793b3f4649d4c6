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

#include "casmat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "casmat/casmat.hpp"
#include "report.hpp"

namespace casmat::cli {

namespace {

constexpr std::size_t kBmaNodeLimit = 1024;
constexpr std::size_t kRandomBmaProbes = 3;

// Usage and I/O problems; mapped to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw UsageError("cannot read '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  out.close();
  if (!out) throw UsageError("cannot write '" + path + "'");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CASMAT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 0);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("CASMAT_SEED='") + env + "' is not an unsigned integer");
  }
  return kDefaultSeed;
}

struct LoadedScheme {
  std::string digest;
  Scheme scheme;
};

LoadedScheme load_scheme(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    auto file = io::scheme_from_string(bytes);
    return {sha256_hex(bytes), std::move(file.scheme)};
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

BorelFamily load_family(const std::string& source, std::size_t labels) {
  if (source == "singletons") return BorelFamily::singletons(labels);
  if (source == "pairs") return BorelFamily::pairs(labels);
  const std::string text = read_file(source);
  BorelFamily family{"file:" + source, {}};
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    LabelSet set(labels);
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || v >= labels) {
        throw UsageError(source + ":" + std::to_string(number) + ": '" + token + "' is not a label id");
      }
      set.insert(static_cast<Label>(v));
    }
    if (!set.empty()) family.sets.push_back(std::move(set));
  }
  if (family.sets.empty()) throw UsageError(source + ": no label sets");
  return family;
}

void emit(const Report& report, const std::string& path, std::ostream& out) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (path.empty()) out << text;
  else write_file(path, text);
}

void summarize(const Report& report, std::ostream& err) {
  err << report.command << ": " << (report.passed() ? "pass" : "FAIL");
  for (const CheckRecord& c : report.checks) {
    if (c.gating && !c.passed()) err << ' ' << c.name;
  }
  err << '\n';
}

void add_cas_witnesses(CheckRecord& check, const CasReport& cas, std::string_view tag) {
  for (const Witness& w : cas.witnesses) {
    if (w.check == tag) check.witnesses.push_back({w.pairs, w.detail});
  }
}

// A coarse identity fiber makes the indicator of i_0 an averaging operator
// rather than a unit, so BMA1a is reported without gating.
void run_bma(Report& report, const Scheme& scheme, double tolerance, std::uint64_t seed, bool coarse_identity) {
  const std::size_t labels = scheme.label_count();
  std::optional<AlgebraBasis> algebra;
  try {
    algebra.emplace(algebra_of_scheme(scheme));
  } catch (const Error& e) {
    report.add("BMA", 1.0, 0.0).witnesses.push_back({{}, e.what()});
    return;
  }
  std::vector<Kernel> identity;
  if (const auto i0 = scheme.labels().identity()) {
    std::vector<double> bump(labels, 0.0);
    bump[*i0] = 1.0;
    try {
      identity.push_back(build_approximate_identity(scheme, LabelSet::singleton(labels, *i0), bump));
    } catch (const Error& e) {
      report.details["bma_identity_skipped"] = e.what();
    }
  }
  std::vector<Kernel> probes(algebra->members().begin(), algebra->members().end());
  std::mt19937_64 rng(seed);
  for (std::size_t p = 0; p < kRandomBmaProbes; ++p) {
    probes.push_back(Kernel::from_function(scheme.space(), [&](std::size_t, std::size_t) {
      const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      return Complex(re, im);
    }));
  }
  BmaReport bma;
  try {
    bma = verify_bma(*algebra, identity, probes, tolerance);
  } catch (const Error& e) {
    report.add("BMA", 1.0, 0.0).witnesses.push_back({{}, e.what()});
    return;
  }
  if (!identity.empty()) {
    report.add("BMA1a", bma.bma1a.final_max_residual, bma.bma1a.tolerance, !coarse_identity);
  }
  report.add("BMA1b", bma.bma1b_deviation, tolerance);
  report.add("BMA2", bma.bma2_residual, tolerance);
  report.add("BMA3", bma.bma3_residual, tolerance);
  report.add("BMA4_commutative", bma.commutative_residual, tolerance, false);
  report.add("BMA5_symmetric", bma.symmetric_residual, tolerance, false);
  report.details["bma_probe_policy"] = bma.probe_policy;
}

int cmd_verify(const std::string& path, double tol, const std::string& family_source, std::size_t slack,
               std::size_t max_pairs, std::uint64_t seed, double bma_tol, bool skip_bma, Report& report) {
  const auto loaded = load_scheme(path);
  const Scheme& scheme = loaded.scheme;
  report.input_digest = loaded.digest;
  const BorelFamily family = load_family(family_source, scheme.label_count());

  CasOptions options;
  options.tolerance = tol;
  options.diagonal_slack = slack;
  options.max_pairs_per_label = max_pairs;
  options.seed = seed;
  const CasReport cas = verify_cas(scheme, family, options);

  add_cas_witnesses(report.add("surjectivity", static_cast<double>(cas.missing_labels.size()), 0.0), cas,
                    "surjectivity");
  add_cas_witnesses(report.add("CAS1", cas.cas1_ok ? 0.0 : 1.0, 0.0), cas, "CAS1");
  add_cas_witnesses(report.add("CAS3", cas.cas3_ok ? 0.0 : 1.0, 0.0), cas, "CAS3");
  add_cas_witnesses(report.add("CAS2", cas.cas2_max_deviation, tol), cas, "CAS2");
  report.add("transpose_identity", cas.transpose_identity_deviation, tol);
  add_cas_witnesses(report.add("pushforward", cas.pushforward_deviation, tol * scheme.space().total_mass()), cas,
                    "pushforward");
  report.add("commutativity", cas.cas4_max_deviation, tol, false);
  report.add("symmetry", cas.symmetric ? 0.0 : 1.0, 0.0, false);

  auto& d = report.details;
  d["node_count"] = scheme.node_count();
  d["label_count"] = scheme.label_count();
  d["borel_family"] = cas.borel_family_descriptor;
  d["pairs_examined"] = cas.pairs_examined;
  d["sampled"] = cas.sampled;
  d["cas1_ok"] = cas.cas1_ok;
  d["cas3_ok"] = cas.cas3_ok;
  d["cas2_max_deviation"] = cas.cas2_max_deviation;
  d["cas2_relative_deviation"] = cas.cas2_relative_deviation;
  d["cas4_max_deviation"] = cas.cas4_max_deviation;
  d["row_valency_deviation"] = cas.row_valency_deviation;
  d["symmetric"] = cas.symmetric;
  d["commutative"] = cas.commutative;

  if (skip_bma || scheme.node_count() > kBmaNodeLimit) {
    d["bma"] = skip_bma ? "skipped (--no-bma)" : "skipped (node count above " + std::to_string(kBmaNodeLimit) + ")";
  } else {
    run_bma(report, scheme, bma_tol, seed, cas.offdiagonal_in_identity_fiber > 0);
  }
  return report.passed() ? kExitPass : kExitCheckFailed;
}

// Positional parameter names per recipe kind.
std::vector<std::string> positional_keys(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::cyclic: return {"n"};
    case RecipeKind::hamming: return {"d", "q"};
    case RecipeKind::group_action: return {"group", "m"};
    case RecipeKind::circle: return {"nodes", "bins", "signed"};
    case RecipeKind::sphere: return {"nodes", "bins", "seed"};
    case RecipeKind::delsarte: return {"metric"};
  }
  return {};
}

int cmd_catalog(const std::string& kind_name, const std::vector<std::string>& params, const std::string& out_path,
                bool recipe_only, Report& report, std::ostream& out) {
  const auto kind = parse_recipe_kind(kind_name);
  if (!kind) throw UsageError("unknown catalog kind '" + kind_name + "'");
  SchemeRecipe recipe;
  recipe.kind = *kind;
  const auto keys = positional_keys(*kind);
  std::size_t next = 0;
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq != std::string::npos) {
      recipe.params[p.substr(0, eq)] = p.substr(eq + 1);
    } else {
      if (next >= keys.size()) throw UsageError("too many positional parameters for " + kind_name);
      recipe.params[keys[next++]] = p;
    }
  }
  std::string text;
  try {
    if (recipe_only) {
      (void)materialize(recipe);
      text = "#casmat-scheme v1\nrecipe " + recipe.to_string() + "\n";
    } else {
      text = io::scheme_to_string(materialize(recipe), recipe);
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (out_path.empty()) {
    out << text;
    return kExitPass;
  }
  write_file(out_path, text);
  report.input_digest = sha256_hex(text);
  report.details["recipe"] = recipe.to_string();
  report.details["path"] = out_path;
  return kExitPass;
}

int cmd_correspond(const std::string& path, double tol, Report& report) {
  const auto loaded = load_scheme(path);
  report.input_digest = loaded.digest;
  RoundtripReport rt;
  try {
    rt = roundtrip_check(loaded.scheme, tol);
  } catch (const CorrespondenceError& e) {
    report.add("roundtrip", 1.0, 0.0).witnesses.push_back({{e.witness()}, e.what()});
    return kExitCheckFailed;
  } catch (const Error& e) {
    report.add("roundtrip", 1.0, 0.0).witnesses.push_back({{}, e.what()});
    return kExitCheckFailed;
  }
  auto add_flag = [&](const char* name, bool ok) {
    auto& c = report.add(name, ok ? 0.0 : 1.0, 0.0);
    if (!ok) {
      WitnessRecord w{{}, rt.failure};
      if (rt.mismatch) w.pairs.push_back(*rt.mismatch);
      c.witnesses.push_back(std::move(w));
    }
  };
  add_flag("partition_match", rt.partition_match);
  add_flag("involution_match", rt.involution_match);
  add_flag("identity_match", rt.identity_match);
  add_flag("algebra_match", rt.algebra_match);
  report.details["original_labels"] = rt.original_labels;
  report.details["recovered_labels"] = rt.recovered_labels;
  nlohmann::ordered_json bijection = nlohmann::ordered_json::array();
  for (Label l : rt.bijection) {
    if (l == kNoLabel) bijection.push_back(nullptr);
    else bijection.push_back(l);
  }
  report.details["bijection"] = bijection;
  report.details["cell_sizes"] = rt.cell_sizes;
  return report.passed() ? kExitPass : kExitCheckFailed;
}

int cmd_hypergroup(const std::string& path, std::size_t probes, std::size_t test_functions, double tol,
                   bool declared_commutative, std::uint64_t seed, Report& report) {
  const auto loaded = load_scheme(path);
  report.input_digest = loaded.digest;
  const Scheme& scheme = loaded.scheme;
  try {
    const HypergroupData hg = kernel_of_scheme(scheme);
    const auto pairs = random_label_function_pairs(scheme.label_count(), probes, seed);
    const auto tests = random_node_functions(scheme.node_count(), test_functions, seed + 1);
    HypergroupOptions options;
    options.tolerance = tol;
    options.declared_commutative = declared_commutative;
    const HypergroupReport hr = verify_strong_cas(hg, pairs, tests, options);
    for (const IdentityResidual& r : hr.residuals) report.add(r.name, r.residual, r.tolerance, r.gating);
    report.details["haar_weights"] = hr.haar_weights;
    report.details["haar_total"] = hr.haar_total;
    report.details["scheme_cas4_deviation"] = hr.scheme_cas4_deviation;
    report.details["probes"] = probes;
    report.details["test_functions"] = test_functions;
  } catch (const ConvolutionError& e) {
    report.add("T1", 1.0, tol).witnesses.push_back({{}, e.what()});
  } catch (const Error& e) {
    report.add("hypergroup", 1.0, 0.0).witnesses.push_back({{}, e.what()});
  }
  return report.passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"casmat: compact association scheme toolkit", "casmat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CASMAT_VERSION);

  std::string scheme_path, report_path, family = "singletons", kind, out_path;
  std::vector<std::string> params;
  double tol = 1e-9, bma_tol = 1e-9, grouping_tol = 1e-9, hg_tol = 1e-12;
  std::size_t slack = 0, max_pairs = 0, probes = 10, test_functions = 5;
  std::optional<std::uint64_t> seed_flag;
  bool skip_bma = false, recipe_only = false, commutative = false;

  auto* verify = app.add_subcommand("verify", "Check the scheme axioms and the adjacency algebra");
  verify->add_option("scheme", scheme_path, "Scheme file")->required();
  verify->add_option("--tol", tol, "Absolute tolerance for intersection numbers")->check(CLI::NonNegativeNumber);
  verify->add_option("--borel-family", family, "singletons, pairs, or a file with one label set per line");
  verify->add_option("--diagonal-slack", slack, "Off-diagonal pairs allowed in the identity fiber");
  verify->add_option("--max-pairs", max_pairs, "Sample at most this many pairs per fiber (0 = all)");
  verify->add_option("--bma-tol", bma_tol, "Tolerance for the algebra checks")->check(CLI::NonNegativeNumber);
  verify->add_flag("--no-bma", skip_bma, "Skip the algebra checks");
  verify->add_option("--seed", seed_flag, "Seed for sampling and random probes");
  verify->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  auto* catalog = app.add_subcommand("catalog", "Write a catalog scheme file");
  catalog->add_option("kind", kind, "cyclic, hamming, group_action, circle, sphere or delsarte")->required();
  catalog->add_option("params", params, "Parameters, positional or key=value");
  catalog->add_option("--out", out_path, "Output scheme file (default stdout)");
  catalog->add_flag("--recipe-only", recipe_only, "Write only the recipe stanza");
  catalog->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  auto* correspond = app.add_subcommand("correspond", "Round-trip a scheme through its algebra");
  correspond->add_option("scheme", scheme_path, "Scheme file")->required();
  correspond->add_option("--tol", grouping_tol, "Character grouping tolerance")->check(CLI::NonNegativeNumber);
  correspond->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  auto* hypergroup = app.add_subcommand("hypergroup", "Check the hypergroup identities of a strong scheme");
  hypergroup->add_option("scheme", scheme_path, "Scheme file")->required();
  hypergroup->add_option("--probes", probes, "Number of random label-function pairs");
  hypergroup->add_option("--test-functions", test_functions, "Number of random node functions");
  hypergroup->add_option("--tol", hg_tol, "Residual tolerance")->check(CLI::NonNegativeNumber);
  hypergroup->add_flag("--commutative", commutative, "Treat commutativity as a requirement");
  hypergroup->add_option("--seed", seed_flag, "Seed for random probes");
  hypergroup->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Report report;
  report.arguments = args;
  int code = kExitUsage;
  try {
    const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
    if (*verify) {
      report.command = "verify";
      code = cmd_verify(scheme_path, tol, family, slack, max_pairs, seed, bma_tol, skip_bma, report);
    } else if (*catalog) {
      report.command = "catalog";
      code = cmd_catalog(kind, params, out_path, recipe_only, report, out);
      if (out_path.empty()) return code;
    } else if (*correspond) {
      report.command = "correspond";
      code = cmd_correspond(scheme_path, grouping_tol, report);
    } else {
      report.command = "hypergroup";
      code = cmd_hypergroup(scheme_path, probes, test_functions, hg_tol, commutative, seed, report);
    }
  } catch (const UsageError& e) {
    err << "casmat: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    report.add("error", 1.0, 0.0).witnesses.push_back({{}, e.what()});
    code = kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "casmat: " << e.what() << '\n';
    return kExitUsage;
  }

  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    emit(report, report_path, out);
  } catch (const UsageError& e) {
    err << "casmat: " << e.what() << '\n';
    return kExitUsage;
  }
  summarize(report, err);
  return code;
}

}  // namespace casmat::cli
