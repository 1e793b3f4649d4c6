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

#include "casmat/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "casmat/error.hpp"

namespace casmat::io {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, ptr);
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) fail(std::string("unexpected end of input, expected ") + what);
    return line;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, number_); }
  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view text, const LineReader& r) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    r.fail("'" + std::string(text) + "' is not a number");
  }
  return v;
}

std::size_t parse_size(std::string_view text, const LineReader& r) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    r.fail("'" + std::string(text) + "' is not a nonnegative integer");
  }
  return v;
}

// "key=<n>" → n
std::size_t parse_keyed(std::string_view text, std::string_view key, const LineReader& r) {
  if (text.size() <= key.size() + 1 || text.substr(0, key.size()) != key || text[key.size()] != '=') {
    r.fail("expected " + std::string(key) + "=<n>");
  }
  return parse_size(text.substr(key.size() + 1), r);
}

void expect_header(LineReader& r, std::string_view header, std::vector<std::string_view>* rest,
                   std::string& storage) {
  storage = r.require("header");
  const auto w = words(storage);
  const auto hw = words(header);
  if (w.size() < hw.size() || !std::equal(hw.begin(), hw.end(), w.begin())) {
    r.fail("expected header '" + std::string(header) + "'");
  }
  if (rest) rest->assign(w.begin() + static_cast<std::ptrdiff_t>(hw.size()), w.end());
  else if (w.size() != hw.size()) r.fail("unexpected text after header");
}

void write_kernel_rows(std::ostream& out, const Kernel& k) {
  const std::size_t n = k.space().size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Complex v = k(x, y);
      if (y) out << ',';
      out << format_double(v.real()) << ',' << format_double(v.imag());
    }
    out << '\n';
  }
}

Kernel read_kernel_body(LineReader& r, const MeasureSpace& space, std::string_view header_line) {
  const auto w = words(header_line);
  if (w.size() != 3 || w[0] != "#casmat-kernel" || w[1] != "v1") r.fail("expected '#casmat-kernel v1 n=<n>'");
  const std::size_t n = parse_keyed(w[2], "n", r);
  if (n != space.size()) {
    r.fail("kernel dimension " + std::to_string(n) + " does not match the " + std::to_string(space.size()) +
           "-node space");
  }
  std::vector<Complex> entries(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::string line = r.require("kernel row");
    const auto cells = split(line, ',');
    if (cells.size() != 2 * n) {
      r.fail("kernel row has " + std::to_string(cells.size()) + " fields, expected " + std::to_string(2 * n));
    }
    for (std::size_t y = 0; y < n; ++y) {
      entries[x * n + y] = {parse_double(cells[2 * y], r), parse_double(cells[2 * y + 1], r)};
    }
  }
  try {
    return Kernel(space, std::move(entries));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

}  // namespace

void write_quadrature(std::ostream& out, const MeasureSpace& space) {
  out << "#casmat-quadrature v1\n";
  const Coordinates& c = space.coordinates();
  for (std::size_t x = 0; x < space.size(); ++x) {
    out << format_double(space.weight(x));
    for (std::size_t k = 0; k < c.dim; ++k) out << ' ' << format_double(c.values[x * c.dim + k]);
    out << '\n';
  }
}

MeasureSpace read_quadrature(std::istream& in) {
  LineReader r(in);
  std::string header;
  expect_header(r, "#casmat-quadrature v1", nullptr, header);
  std::vector<double> weights;
  Coordinates coords;
  std::optional<std::size_t> fields;
  std::string line;
  while (r.next(line)) {
    const auto w = words(line);
    if (!fields) {
      fields = w.size();
      coords.dim = w.size() - 1;
    } else if (w.size() != *fields) {
      r.fail("node has " + std::to_string(w.size()) + " fields, expected " + std::to_string(*fields));
    }
    weights.push_back(parse_double(w[0], r));
    for (std::size_t k = 1; k < w.size(); ++k) coords.values.push_back(parse_double(w[k], r));
  }
  if (weights.empty()) r.fail("quadrature has no nodes");
  try {
    return MeasureSpace::make_quadrature(std::move(weights), std::move(coords));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

void write_kernel(std::ostream& out, const Kernel& kernel) {
  out << "#casmat-kernel v1 n=" << kernel.space().size() << '\n';
  write_kernel_rows(out, kernel);
}

Kernel read_kernel(std::istream& in, const MeasureSpace& space) {
  LineReader r(in);
  const std::string header = r.require("kernel header");
  return read_kernel_body(r, space, header);
}

void write_basis(std::ostream& out, const std::vector<Kernel>& basis) {
  out << "#casmat-basis v1 count=" << basis.size() << '\n';
  for (const Kernel& k : basis) write_kernel(out, k);
}

std::vector<Kernel> read_basis(std::istream& in, const MeasureSpace& space) {
  LineReader r(in);
  std::vector<std::string_view> rest;
  std::string header;
  expect_header(r, "#casmat-basis v1", &rest, header);
  if (rest.size() != 1) r.fail("expected count=<m>");
  const std::size_t m = parse_keyed(rest[0], "count", r);
  std::vector<Kernel> basis;
  basis.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string kh = r.require("kernel header");
    basis.push_back(read_kernel_body(r, space, kh));
  }
  std::string extra;
  if (r.next(extra)) r.fail("unexpected text after the last kernel");
  return basis;
}

void write_scheme(std::ostream& out, const Scheme& scheme, const std::optional<SchemeRecipe>& recipe) {
  out << "#casmat-scheme v1\n";
  if (recipe) out << "recipe " << recipe->to_string() << '\n';
  const MeasureSpace& space = scheme.space();
  const std::size_t n = scheme.node_count();
  out << "nodes " << n << '\n';
  out << "weights";
  if (space.is_counting()) {
    out << " counting\n";
  } else {
    out << '\n';
    for (double w : space.weights()) out << format_double(w) << '\n';
  }
  const Coordinates& c = space.coordinates();
  if (c.dim > 0) {
    out << "coordinates " << c.dim << '\n';
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t k = 0; k < c.dim; ++k) {
        if (k) out << ' ';
        out << format_double(c.values[x * c.dim + k]);
      }
      out << '\n';
    }
  }
  const LabelSpace& labels = scheme.labels();
  out << "labels " << labels.size() << " identity ";
  if (labels.identity()) out << *labels.identity();
  else out << "none";
  out << '\n';
  for (Label i = 0; i < labels.size(); ++i) {
    out << i << ' ' << labels.transpose(i);
    if (labels.has_bins() && labels.bin(i)) {
      const BinInterval& b = *labels.bin(i);
      out << ' ' << format_double(b.lo) << ' ' << format_double(b.hi) << ' ' << int{b.closed_lo} << ' '
          << int{b.closed_hi};
    }
    out << '\n';
  }
  out << "relation\n";
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = scheme.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (y) out << ' ';
      out << row[y];
    }
    out << '\n';
  }
}

SchemeFile read_scheme(std::istream& in) {
  LineReader r(in);
  std::string header;
  expect_header(r, "#casmat-scheme v1", nullptr, header);

  std::optional<SchemeRecipe> recipe;
  std::string line;
  if (!r.next(line)) r.fail("scheme file is empty");
  if (line.rfind("recipe ", 0) == 0) {
    try {
      recipe = SchemeRecipe::parse(std::string_view(line).substr(7));
    } catch (const Error& e) {
      r.fail(e.what());
    }
    if (!r.next(line)) {
      try {
        return SchemeFile{recipe, materialize(*recipe)};
      } catch (const Error& e) {
        r.fail(e.what());
      }
    }
  }

  auto w = words(line);
  if (w.size() != 2 || w[0] != "nodes") r.fail("expected 'nodes <n>'");
  const std::size_t n = parse_size(w[1], r);
  if (n == 0) r.fail("scheme has no nodes");

  line = r.require("weights");
  w = words(line);
  std::vector<double> weights;
  bool counting = false;
  if (w.size() == 2 && w[0] == "weights" && w[1] == "counting") {
    counting = true;
  } else if (w.size() == 1 && w[0] == "weights") {
    weights.reserve(n);
    for (std::size_t x = 0; x < n; ++x) weights.push_back(parse_double(r.require("weight"), r));
  } else {
    r.fail("expected 'weights' or 'weights counting'");
  }

  line = r.require("labels");
  w = words(line);
  Coordinates coords;
  if (!w.empty() && w[0] == "coordinates") {
    if (w.size() != 2) r.fail("expected 'coordinates <dim>'");
    coords.dim = parse_size(w[1], r);
    for (std::size_t x = 0; x < n; ++x) {
      const std::string row = r.require("coordinates");
      const auto cells = words(row);
      if (cells.size() != coords.dim) r.fail("coordinate row has the wrong dimension");
      for (auto cell : cells) coords.values.push_back(parse_double(cell, r));
    }
    line = r.require("labels");
    w = words(line);
  }

  MeasureSpace space = MeasureSpace::counting(1);
  try {
    space = counting && coords.dim == 0 ? MeasureSpace::counting(n)
                                        : MeasureSpace::make_quadrature(counting ? std::vector<double>(n, 1.0)
                                                                                 : std::move(weights),
                                                                        std::move(coords));
  } catch (const Error& e) {
    r.fail(e.what());
  }

  if (w.size() != 4 || w[0] != "labels" || w[2] != "identity") r.fail("expected 'labels <L> identity <i|none>'");
  const std::size_t count = parse_size(w[1], r);
  std::optional<Label> identity;
  if (w[3] != "none") identity = static_cast<Label>(parse_size(w[3], r));
  std::vector<Label> involution(count);
  std::vector<std::optional<BinInterval>> bins(count);
  bool any_bin = false;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string row = r.require("label row");
    const auto cells = words(row);
    if (cells.size() != 2 && cells.size() != 6) r.fail("label row needs 'id involution [lo hi closed_lo closed_hi]'");
    if (parse_size(cells[0], r) != i) r.fail("label rows must be listed in order");
    involution[i] = static_cast<Label>(parse_size(cells[1], r));
    if (cells.size() == 6) {
      bins[i] = BinInterval{parse_double(cells[2], r), parse_double(cells[3], r), parse_size(cells[4], r) != 0,
                            parse_size(cells[5], r) != 0};
      any_bin = true;
    }
  }
  if (!any_bin) bins.clear();
  std::optional<LabelSpace> labels;
  try {
    labels.emplace(std::move(involution), identity, std::move(bins));
  } catch (const Error& e) {
    r.fail(e.what());
  }

  line = r.require("relation");
  if (words(line) != std::vector<std::string_view>{"relation"}) r.fail("expected 'relation'");
  std::vector<Label> relation;
  relation.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::string row = r.require("relation row");
    const auto cells = words(row);
    if (cells.size() != n) {
      r.fail("relation row has " + std::to_string(cells.size()) + " entries, expected " + std::to_string(n));
    }
    for (auto cell : cells) {
      const std::size_t v = parse_size(cell, r);
      if (v >= count) r.fail("label " + std::to_string(v) + " is out of range");
      relation.push_back(static_cast<Label>(v));
    }
  }
  std::string extra;
  if (r.next(extra)) r.fail("unexpected text after the relation table");
  try {
    return SchemeFile{recipe, Scheme(std::move(space), std::move(*labels), std::move(relation))};
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

std::string scheme_to_string(const Scheme& scheme, const std::optional<SchemeRecipe>& recipe) {
  std::ostringstream out;
  write_scheme(out, scheme, recipe);
  return out.str();
}

SchemeFile scheme_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_scheme(in);
}

}  // namespace casmat::io
