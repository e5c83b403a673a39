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

// Text and JSON forms of a design:
//   s=<int> m=<int> t=<label,...> [b=<label,...>] [labels=yates|msb|lsb]

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mabd/design.hpp"

namespace mabd {

/// One `key=value` token with the 1-based column where the key starts.
struct TextField {
  std::string key;
  std::string value;
  std::size_t column = 0;
};

/// Splits a line on whitespace into key=value tokens. Throws Parse on a
/// token without '='.
std::vector<TextField> split_fields(std::string_view line);

std::vector<Label> parse_label_list(const TextField& field);
int parse_int_field(const TextField& field);

struct DesignInput {
  int s = 2;
  int m = 1;
  std::vector<Label> treatment;
  std::vector<Label> block;
  LabelConvention convention = LabelConvention::Yates;

  TreatmentSpec treatment_spec() const;
  std::optional<BlockScheme> block_scheme() const;

  bool operator==(const DesignInput&) const = default;
};

/// Parses the design keys of `fields`; unknown keys are left to the caller
/// when `allow_extra` is set and rejected otherwise.
DesignInput design_from_fields(const std::vector<TextField>& fields, bool allow_extra = false);
DesignInput parse_design_text(std::string_view line);
std::string format_design_text(const DesignInput& d);

nlohmann::json design_to_json(const DesignInput& d);
DesignInput design_from_json(const nlohmann::json& j);

/// Input in the design's column order (independent columns first when the
/// source listed them first).
DesignInput design_input(const TreatmentSpec& t, const BlockScheme* b,
                         LabelConvention conv = LabelConvention::Yates);

std::string join_labels(const std::vector<Label>& labels, char sep = ',');

}  // namespace mabd
