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

#include "app/series.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "app/version.hpp"
#include "json.hpp"

namespace epitb::app {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string render_csv(const Series& s) {
  std::string out;
  for (std::size_t c = 0; c < s.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_field(s.columns[c]);
  }
  out += "\r\n";
  for (const auto& row : s.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += "\r\n";
  }
  return out;
}

void emit_series(const Series& s, const std::filesystem::path& path, const std::string& digest) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << render_csv(s);
  if (!f) throw std::runtime_error("write failed: " + path.string());

  nlohmann::ordered_json meta;
  meta["file"] = path.filename().string();
  meta["digest"] = digest;
  meta["tool"] = "epitb";
  meta["version"] = kVersion;
  meta["columns"] = s.columns;
  meta["rows"] = s.rows.size();
  std::ofstream m(path.string() + ".meta.json", std::ios::binary);
  if (!m) throw std::runtime_error("cannot write " + path.string() + ".meta.json");
  m << meta.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cur += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && pos < text.size() && text[pos] == '\n') ++pos;
      break;
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

Series parse_csv(const std::string& text) {
  Series s;
  std::size_t pos = 0;
  if (text.empty()) return s;
  s.columns = split_record(text, pos);
  while (pos < text.size()) {
    const auto fields = split_record(text, pos);
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc()) throw std::runtime_error("bad number: " + f);
      row.push_back(v);
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

}  // namespace epitb::app
