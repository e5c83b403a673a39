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

#include "mabd/catalog.hpp"

#include <set>

namespace mabd {

namespace {

std::vector<BigInt> parse_counts(const TextField& f) {
  // Counts may be zero, which label lists reject.
  std::vector<BigInt> out;
  std::size_t pos = 0;
  const std::string& v = f.value;
  if (v.empty()) return out;
  while (true) {
    const auto comma = v.find(',', pos);
    const std::string tok = v.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    BigInt x;
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || x.set_str(tok, 10) != 0) {
      throw Error(Errc::Parse, "column " + std::to_string(f.column + f.key.size() + 1 + pos) +
                                   ": bad count '" + tok + "' in '" + f.key + "'");
    }
    out.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string values_csv(const std::vector<BigInt>& v) { return join_values(v, ','); }

}  // namespace

std::string join_values(const std::vector<BigInt>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  std::set<std::string> names;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      const auto fields = split_fields(line);
      CatalogEntry e;
      e.line = line_no;
      e.design = design_from_fields(fields, true);
      for (const auto& f : fields) {
        if (f.key == "name") e.name = f.value;
        else if (f.key == "expect_wt") e.expected.wt = parse_counts(f);
        else if (f.key == "expect_wb") e.expected.wb = parse_counts(f);
        else if (f.key == "expect_c1") e.expected.c1 = parse_int_field(f);
        else if (f.key == "expect_c2") e.expected.c2 = parse_int_field(f);
        else if (f.key == "status") {
          if (f.value != "ambiguous" && f.value != "confirmed") {
            throw Error(Errc::Parse, "column " + std::to_string(f.column) + ": unknown status '" + f.value + "'");
          }
          e.ambiguous = f.value == "ambiguous";
        } else if (f.key != "s" && f.key != "m" && f.key != "t" && f.key != "b" && f.key != "labels") {
          throw Error(Errc::Parse, "column " + std::to_string(f.column) + ": unknown key '" + f.key + "'");
        }
      }
      if (e.name.empty()) e.name = "line" + std::to_string(line_no);
      if (!names.insert(e.name).second) {
        throw Error(Errc::Parse, "duplicate entry name '" + e.name + "'");
      }
      out.push_back(std::move(e));
    } catch (const Error& err) {
      if (err.code() != Errc::Parse) throw;
      std::string msg = err.what();
      const std::string prefix = std::string(to_string(Errc::Parse)) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ", " + msg);
    }
  }
  return out;
}

std::string format_catalog_entry(const CatalogEntry& e) {
  std::string out = "name=" + e.name + " " + format_design_text(e.design);
  if (!e.expected.wt.empty()) out += " expect_wt=" + values_csv(e.expected.wt);
  if (!e.expected.wb.empty()) out += " expect_wb=" + values_csv(e.expected.wb);
  if (e.expected.c1) out += " expect_c1=" + std::to_string(*e.expected.c1);
  if (e.expected.c2) out += " expect_c2=" + std::to_string(*e.expected.c2);
  if (e.ambiguous) out += " status=ambiguous";
  return out;
}

std::vector<BigInt> truncated_wt(const WordLengthPattern& w, bool full) {
  std::vector<BigInt> out;
  const std::size_t hi = full ? w.n() : std::min<std::size_t>(6, w.n());
  for (std::size_t i = 3; i <= hi; ++i) out.push_back(w.treatment(i));
  return out;
}

std::vector<BigInt> truncated_wb(const WordLengthPattern& w, bool full) {
  std::vector<BigInt> out;
  if (!w.blocked()) return out;
  const std::size_t hi = full ? w.n() : std::min<std::size_t>(5, w.n());
  for (std::size_t i = 2; i <= hi; ++i) out.push_back(w.block(i));
  return out;
}

VerifyOutcome verify_entry(const CatalogEntry& e, PairClearRule rule) {
  VerifyOutcome out;
  out.name = e.name;
  const TreatmentSpec t = e.design.treatment_spec();
  const auto b = e.design.block_scheme();
  out.wlp = b ? compute_blocked_wlp(t, *b) : compute_wlp(t);
  if (b) out.clear = clear_counts(t, *b, rule);
  auto check_prefix = [&](const char* field, const std::vector<BigInt>& want, const std::vector<BigInt>& got) {
    if (want.empty()) return;
    std::vector<BigInt> head(got.begin(), got.begin() + static_cast<std::ptrdiff_t>(std::min(want.size(), got.size())));
    if (head != want) out.diffs.push_back({field, join_values(want), join_values(head)});
  };
  check_prefix("W_t", e.expected.wt, truncated_wt(out.wlp, true));
  check_prefix("W_b", e.expected.wb, truncated_wb(out.wlp, true));
  if (e.expected.c1 && (!out.clear || out.clear->c1 != *e.expected.c1)) {
    out.diffs.push_back({"C1", std::to_string(*e.expected.c1), out.clear ? std::to_string(out.clear->c1) : "-"});
  }
  if (e.expected.c2 && (!out.clear || out.clear->c2 != *e.expected.c2)) {
    out.diffs.push_back({"C2", std::to_string(*e.expected.c2), out.clear ? std::to_string(out.clear->c2) : "-"});
  }
  return out;
}

}  // namespace mabd
