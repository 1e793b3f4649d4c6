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

#include "report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>

#include "casmat/error.hpp"

namespace casmat::cli {

CheckRecord& Report::add(std::string name, double residual, double tolerance, bool gating) {
  checks.push_back(CheckRecord{std::move(name), residual, tolerance, gating, {}});
  return checks.back();
}

bool Report::passed() const noexcept {
  for (const CheckRecord& c : checks) {
    if (c.gating && !c.passed()) return false;
  }
  return true;
}

namespace {

// JSON has no representation for non-finite numbers.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

nlohmann::ordered_json Report::to_json() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["tool_version"] = CASMAT_VERSION;
  doc["command"] = command;
  doc["arguments"] = arguments;
  doc["input_digest"] = input_digest;
  doc["status"] = passed() ? "pass" : "fail";
  ordered_json list = ordered_json::array();
  for (const CheckRecord& c : checks) {
    ordered_json item;
    item["name"] = c.name;
    item["status"] = c.passed() ? "pass" : "fail";
    item["gating"] = c.gating;
    item["residual"] = number(c.residual);
    item["tolerance"] = number(c.tolerance);
    ordered_json ws = ordered_json::array();
    std::vector<WitnessRecord> witnesses = c.witnesses;
    if (!c.passed() && witnesses.empty()) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "residual %.17g exceeds tolerance %.17g", c.residual, c.tolerance);
      witnesses.push_back({{}, buf});
    }
    for (const WitnessRecord& w : witnesses) {
      ordered_json wj;
      ordered_json pairs = ordered_json::array();
      for (const auto& [x, y] : w.pairs) pairs.push_back({x, y});
      wj["pairs"] = pairs;
      wj["detail"] = w.detail;
      ws.push_back(wj);
    }
    item["witnesses"] = ws;
    list.push_back(item);
  }
  doc["checks"] = list;
  doc["details"] = details;
  doc["wall_time_seconds"] = wall_time_seconds;
  return doc;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace casmat::cli
