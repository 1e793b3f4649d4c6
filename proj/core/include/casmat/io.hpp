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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casmat/catalog.hpp"
#include "casmat/kernel.hpp"
#include "casmat/measure.hpp"
#include "casmat/scheme.hpp"

namespace casmat::io {

// `#casmat-quadrature v1`, then one line per node: weight [coordinates...].
void write_quadrature(std::ostream& out, const MeasureSpace& space);
MeasureSpace read_quadrature(std::istream& in);

// `#casmat-kernel v1 n=<n>`, then n CSV rows of re,im pairs.
void write_kernel(std::ostream& out, const Kernel& kernel);
// Reads a kernel over `space`; the dimension must match.
Kernel read_kernel(std::istream& in, const MeasureSpace& space);

// `#casmat-basis v1 count=<m>` followed by m kernel dumps.
void write_basis(std::ostream& out, const std::vector<Kernel>& basis);
std::vector<Kernel> read_basis(std::istream& in, const MeasureSpace& space);

struct SchemeFile {
  std::optional<SchemeRecipe> recipe;
  Scheme scheme;
};

// `#casmat-scheme v1` text format. A file holding only a recipe stanza is
// materialized through the catalog. write(read(bytes)) == bytes for files
// produced by write_scheme.
void write_scheme(std::ostream& out, const Scheme& scheme,
                  const std::optional<SchemeRecipe>& recipe = std::nullopt);
SchemeFile read_scheme(std::istream& in);

std::string scheme_to_string(const Scheme& scheme,
                             const std::optional<SchemeRecipe>& recipe = std::nullopt);
SchemeFile scheme_from_string(const std::string& text);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace casmat::io
