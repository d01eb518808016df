// SPDX-License-Identifier: Apache-2.0
//
// sparray: sparse active planar arrays, co-arrays and imaging under coupling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// File formats:
//   element set   JSON {"lx": int, "ly": int, "elements": [[x, y], ...]},
//                 elements sorted lexicographically
//   co-array      CSV "x,y,multiplicity", sorted lexicographically
//   image         CSV "re,im" per pixel, row-major; PGM (P5) of the magnitude
//                 in dB relative to the peak, floored at -60 dB
//
// Floating-point numbers are written in the shortest form that reads back
// to the same double, so files are reproducible byte for byte.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sparray/errors.hpp"
#include "sparray/geometry.hpp"
#include "sparray/imaging.hpp"

namespace sparray {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw InvariantViolation("format_double: conversion failed");
  return std::string(buf.data(), end);
}

inline Json to_json(const ElementSet& d) {
  Json elements = Json::array();
  for (auto p : d) elements.push_back({p.x, p.y});
  return Json{{"lx", d.lx()}, {"ly", d.ly()}, {"elements", elements}};
}

inline ElementSet element_set_from_json(const Json& j) {
  auto require_int = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
      throw ParseError(std::string("element set: field '") + key + "' missing or not an integer");
    }
    return j.at(key).get<int>();
  };
  if (!j.is_object()) throw ParseError("element set: expected a JSON object");
  const int lx = require_int("lx");
  const int ly = require_int("ly");
  if (!j.contains("elements") || !j.at("elements").is_array()) {
    throw ParseError("element set: field 'elements' missing or not an array");
  }
  std::vector<GridPoint> pts;
  std::size_t index = 0;
  for (const auto& e : j.at("elements")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ParseError("element set: elements[" + std::to_string(index) + "] is not an [x, y] integer pair");
    }
    pts.push_back({e[0].get<int>(), e[1].get<int>()});
    ++index;
  }
  try {
    return ElementSet(lx, ly, std::move(pts));
  } catch (const UsageError& err) {
    throw ParseError(std::string("element set: ") + err.what());
  }
}

/// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (byte " + std::to_string(e.byte) + ")");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline ElementSet read_element_set(const std::string& path) {
  return element_set_from_json(parse_json_text(read_text_file(path), path));
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw UsageError("failed writing '" + path + "'");
}

inline std::string coarray_csv(const CoArray& c) {
  std::string out = "x,y,multiplicity\n";
  for (const auto& [p, w] : c.weights())
    out += std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(w) + "\n";
  return out;
}

inline std::string image_csv(const CMatrix& y) {
  std::string out = "re,im\n";
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      out += format_double(y(i, j).real()) + "," + format_double(y(i, j).imag()) + "\n";
  return out;
}

/// 8-bit binary PGM of 20 log10(|y| / max|y|), with -60 dB mapped to 0 and
/// 0 dB to 255. One image row per scan row.
inline std::string image_pgm(const CMatrix& y, double floor_db = -60.0) {
  const double peak = y.cwiseAbs().maxCoeff();
  std::string out = "P5\n" + std::to_string(y.cols()) + " " + std::to_string(y.rows()) + "\n255\n";
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      const double mag = std::abs(y(i, j));
      double db = (peak > 0.0 && mag > 0.0) ? 20.0 * std::log10(mag / peak) : floor_db;
      db = std::clamp(db, floor_db, 0.0);
      const long level = std::lround(255.0 * (db - floor_db) / -floor_db);
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0L, 255L))));
    }
  }
  return out;
}

}  // namespace sparray
