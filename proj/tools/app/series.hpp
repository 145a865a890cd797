// Copyright 2026 The epitb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace epitb::app {

struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// 17 significant digits, general notation.
std::string format_double(double v);

/// Shortest text that reads back bit-identically.
std::string format_short(double v);

/// RFC-4180 field quoting: fields with a comma, quote or line break are quoted
/// and embedded quotes doubled.
std::string csv_field(const std::string& s);

std::string render_csv(const Series& s);

/// Writes the CSV and a `<path>.meta.json` sidecar. Throws std::runtime_error
/// if the path cannot be written.
void emit_series(const Series& s, const std::filesystem::path& path, const std::string& digest);

/// Parses a file produced by render_csv. Quoted fields are supported.
Series parse_csv(const std::string& text);

}  // namespace epitb::app
