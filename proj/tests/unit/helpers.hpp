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

#pragma once

#include <numbers>

#include "casmat/casmat.hpp"
#include "doctest.h"
#include "oracles.hpp"

inline oracle::Table table_of(const casmat::Scheme& s) {
  return oracle::Table(s.relation().begin(), s.relation().end());
}

inline std::vector<double> weights_of(const casmat::Scheme& s) {
  return std::vector<double>(s.space().weights().begin(), s.space().weights().end());
}

inline std::vector<oracle::Cx> entries_of(const casmat::Kernel& k) {
  return std::vector<oracle::Cx>(k.entries().begin(), k.entries().end());
}

inline constexpr double kPi = std::numbers::pi;
