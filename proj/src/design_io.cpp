/*
 * Copyright 2026 The mabd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mabd/design_io.hpp"

#include <cctype>
#include <charconv>
#include <set>

namespace mabd {

namespace {

[[noreturn]] void parse_fail(std::size_t column, const std::string& msg) {
  throw Error(Errc::Parse, "column " + std::to_string(column) + ": " + msg);
}

}  // namespace

std::vector<TextField> split_fields(std::string_view line) {
  std::vector<TextField> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::string_view tok = line.substr(start, i - start);
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      parse_fail(start + 1, "expected key=value, got '" + std::string(tok) + "'");
    }
    out.push_back(TextField{std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)),
                            start + 1});
  }
  return out;
}

int parse_int_field(const TextField& f) {
  int v = 0;
  const char* b = f.value.data();
  const char* e = b + f.value.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || f.value.empty()) {
    parse_fail(f.column + f.key.size() + 1, "'" + f.key + "' needs an integer, got '" + f.value + "'");
  }
  return v;
}

std::vector<Label> parse_label_list(const TextField& f) {
  std::vector<Label> out;
  const std::string& v = f.value;
  std::size_t pos = 0;
  const std::size_t base = f.column + f.key.size() + 1;
  if (v.empty()) return out;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const auto end = comma == std::string::npos ? v.size() : comma;
    Label x = 0;
    auto [ptr, ec] = std::from_chars(v.data() + pos, v.data() + end, x);
    if (ec != std::errc() || ptr != v.data() + end || end == pos) {
      parse_fail(base + pos, "bad label '" + v.substr(pos, end - pos) + "' in '" + f.key + "'");
    }
    if (x == 0) parse_fail(base + pos, "labels start at 1");
    out.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

TreatmentSpec DesignInput::treatment_spec() const {
  return TreatmentSpec::from_labels(s, m, treatment, convention);
}

std::optional<BlockScheme> DesignInput::block_scheme() const {
  if (block.empty()) return std::nullopt;
  return BlockScheme::from_labels(s, m, block, convention);
}

DesignInput design_from_fields(const std::vector<TextField>& fields, bool allow_extra) {
  DesignInput d;
  std::set<std::string> seen;
  for (const auto& f : fields) {
    if (!seen.insert(f.key).second && (f.key == "s" || f.key == "m" || f.key == "t" ||
                                       f.key == "b" || f.key == "labels")) {
      parse_fail(f.column, "duplicate key '" + f.key + "'");
    }
    if (f.key == "s") d.s = parse_int_field(f);
    else if (f.key == "m") d.m = parse_int_field(f);
    else if (f.key == "t") d.treatment = parse_label_list(f);
    else if (f.key == "b") d.block = parse_label_list(f);
    else if (f.key == "labels") {
      try {
        d.convention = parse_label_convention(f.value);
      } catch (const Error& e) {
        parse_fail(f.column, e.what());
      }
    } else if (!allow_extra) {
      parse_fail(f.column, "unknown key '" + f.key + "'");
    }
  }
  for (const char* k : {"s", "m", "t"}) {
    if (!seen.count(k)) throw Error(Errc::Parse, std::string("missing key '") + k + "'");
  }
  return d;
}

DesignInput parse_design_text(std::string_view line) { return design_from_fields(split_fields(line)); }

std::string join_labels(const std::vector<Label>& labels, char sep) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(labels[i]);
  }
  return out;
}

std::string format_design_text(const DesignInput& d) {
  std::string out = "s=" + std::to_string(d.s) + " m=" + std::to_string(d.m) +
                    " t=" + join_labels(d.treatment);
  if (!d.block.empty()) out += " b=" + join_labels(d.block);
  if (d.convention != LabelConvention::Yates) out += std::string(" labels=") + to_string(d.convention);
  return out;
}

nlohmann::json design_to_json(const DesignInput& d) {
  nlohmann::json j;
  j["s"] = d.s;
  j["m"] = d.m;
  j["treatment_labels"] = d.treatment;
  j["block_labels"] = d.block;
  if (d.convention != LabelConvention::Yates) j["label_convention"] = to_string(d.convention);
  return j;
}

DesignInput design_from_json(const nlohmann::json& j) {
  try {
    DesignInput d;
    d.s = j.at("s").get<int>();
    d.m = j.at("m").get<int>();
    d.treatment = j.at("treatment_labels").get<std::vector<Label>>();
    if (j.contains("block_labels")) d.block = j.at("block_labels").get<std::vector<Label>>();
    if (j.contains("label_convention")) {
      d.convention = parse_label_convention(j.at("label_convention").get<std::string>());
    }
    for (Label l : d.treatment) {
      if (l == 0) throw Error(Errc::Parse, "labels start at 1");
    }
    for (Label l : d.block) {
      if (l == 0) throw Error(Errc::Parse, "labels start at 1");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("bad design JSON: ") + e.what());
  }
}

DesignInput design_input(const TreatmentSpec& t, const BlockScheme* b, LabelConvention conv) {
  DesignInput d;
  d.s = t.s();
  d.m = t.m();
  d.treatment = t.labels(conv);
  if (b) d.block = b->labels(conv);
  d.convention = conv;
  return d;
}

}  // namespace mabd
