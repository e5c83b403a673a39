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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "mabd/cli.hpp"

namespace mabd {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string temp_path(const std::string& stem) {
  return (std::filesystem::temp_directory_path() / ("mabd_" + stem + "_" + std::to_string(::getpid()))).string();
}

TEST(Catalog, BundledEntries) {
  const auto entries = parse_catalog(bundled_catalog_text());
  EXPECT_EQ(entries.size(), 14u);
  std::size_t ambiguous = 0;
  for (const auto& e : entries) ambiguous += e.ambiguous;
  EXPECT_EQ(ambiguous, 6u);
  const auto it = std::find_if(entries.begin(), entries.end(), [](const CatalogEntry& e) { return e.name == "13-8.1/B3"; });
  ASSERT_NE(it, entries.end());
  EXPECT_EQ(it->expected.wt, testing::ints({0, 55, 0, 96}));
  EXPECT_EQ(it->expected.wb, testing::ints({36, 0, 310, 0}));
  EXPECT_EQ(it->expected.c1, 13);
  EXPECT_EQ(it->expected.c2, 0);
  EXPECT_TRUE(verify_entry(*it).pass());
}

TEST(Catalog, TamperedValueGivesFieldDiff) {
  auto entries = parse_catalog(bundled_catalog_text());
  CatalogEntry e = entries.front();
  e.expected.wt[1] = 54;
  e.expected.c2 = 3;
  const auto v = verify_entry(e);
  ASSERT_EQ(v.diffs.size(), 2u);
  EXPECT_EQ(v.diffs[0].field, "W_t");
  EXPECT_EQ(v.diffs[0].expected, "0 54 0 96");
  EXPECT_EQ(v.diffs[0].actual, "0 55 0 96");
  EXPECT_EQ(v.diffs[1].field, "C2");
}

TEST(Catalog, ParseErrorsAndRoundTrip) {
  try {
    parse_catalog("# header\nname=a s=2 m=3 t=1,2,4\nname=a s=2 m=3 t=1,2,4,7\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(contains(e.what(), "duplicate"));
  }
  try {
    parse_catalog("\nname=x s=2 m=3 t=1,2,0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(contains(e.what(), "line 2, column 22")) << e.what();
  }
  EXPECT_THROW(parse_catalog("name=x s=2 m=3 t=1,2,4 expect_c1=x"), Error);
  EXPECT_THROW(parse_catalog("name=x s=2 m=3 t=1,2,4 status=maybe"), Error);
  EXPECT_THROW(parse_catalog("name=x s=2 m=3 t=1,2,4 colour=red"), Error);
  for (const auto& e : parse_catalog(bundled_catalog_text())) {
    const auto back = parse_catalog(format_catalog_entry(e));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], e);
  }
}

TEST(Json, RoundTrips) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    WordLengthPattern w;
    const std::size_t n = 1 + rng() % 10;
    w.a0.push_back(1);
    for (std::size_t i = 1; i <= n; ++i) w.a0.emplace_back(static_cast<long>(rng() % 1000));
    if (trial % 2) {
      for (std::size_t i = 0; i <= n; ++i) w.a1.emplace_back(static_cast<long>(rng() % 1000));
    }
    w.a0.back() *= BigInt("1000000000000000000000");
    EXPECT_EQ(wlp_from_json(nlohmann::json::parse(wlp_to_json(w).dump())), w);
  }
  for (int p = 2; p <= 4; ++p) {
    for (int n = 6; n <= 32; ++n) {
      const auto r = a21_lower_bound(n, 6, p, 2);
      const auto back = bound_from_json(nlohmann::json::parse(bound_to_json(n, p, r).dump()));
      EXPECT_EQ(back.raw_bound, r.raw_bound);
      EXPECT_EQ(back.modified_bound, r.modified_bound);
      EXPECT_EQ(back.J, r.J);
      EXPECT_EQ(back.eta, r.eta);
    }
  }
  EXPECT_EQ(big_from_json(big_to_json(BigInt("-123456789012345678901234567890"))),
            BigInt("-123456789012345678901234567890"));
  EXPECT_EQ(parse_int_range("2..4"), (std::pair{2, 4}));
  EXPECT_EQ(parse_int_range("7"), (std::pair{7, 7}));
  EXPECT_THROW(parse_int_range("4..2"), Error);
  EXPECT_THROW(parse_int_range("a..2"), Error);
}

TEST(CliWlp, Examples) {
  auto r = run({"wlp", "s=2", "m=3", "t=4,2,1,7", "b=3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "W_t = 0 1\n"));
  EXPECT_TRUE(contains(r.out, "W_b = 2 0 0\n"));
  r = run({"wlp", "s=2 m=5 t=1,2,4,8,16,31,7,11,21,25,13,14,19 b=3,5,17", "--oracle"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "W_t = 0 55 0 96"));
  EXPECT_TRUE(contains(r.out, "W_b = 36 0 310 0"));
  EXPECT_TRUE(contains(r.out, "C1 = 13"));
  EXPECT_TRUE(contains(r.out, "oracle: agree"));
  r = run({"wlp", "s=2 m=3 t=0,1,2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(contains(r.err, "column 11"));
  r = run({"wlp", "s=3 m=2 t=1,3,8 labels=msb"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.err, "1 treatment label(s) rescaled"));
  r = run({"wlp", "s=2 m=5 t=1,2,4,8,16,31,7", "--full"});
  EXPECT_TRUE(contains(r.out, "W_t = 0 2 0 1 0"));
}

TEST(CliWlp, JsonOutputRoundTrips) {
  const auto r = run({"wlp", "--json", "s=3 m=4 t=1,2,5,14,22,9,24,31,3 b=6,18"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(design_from_json(j.at("design")), parse_design_text("s=3 m=4 t=1,2,5,14,22,9,24,31,3 b=6,18"));
  const auto w = wlp_from_json(j.at("wlp"));
  EXPECT_EQ(truncated_wt(w), testing::ints({1, 18, 27, 28}));
  EXPECT_EQ(j.at("clear").at("c2"), 5);
  // A JSON design is accepted as input too.
  const auto again = run({"wlp", "--json", j.at("design").dump()});
  EXPECT_EQ(nlohmann::json::parse(again.out).at("wlp"), j.at("wlp"));
}

TEST(CliWlp, OracleGuardExitCode) {
  ::setenv("MABD_MAX_DUAL_WORDS", "16", 1);
  const auto r = run({"wlp", "s=2 m=5 t=1,2,4,8,16,31,7,11,21,25,13,14,19", "--oracle"});
  ::unsetenv("MABD_MAX_DUAL_WORDS");
  EXPECT_EQ(r.code, kExitGuard);
  EXPECT_TRUE(contains(r.err, "TooLarge"));
}

TEST(CliBound, FormatsAndErrors) {
  auto r = run({"bound", "s=2", "m=6", "p=2", "n=19", "--format=csv"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "2,6,2,19,11,4,2.7,3\n"));
  r = run({"bound", "p=2..4", "n=6..32", "--format=json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("entries").size(), 81u);
  r = run({"bound", "s=2", "m=6", "p=6"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(contains(r.err, "InvalidP"));
  r = run({"bound", "--format=xml"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliReproduce, TableOneText) {
  const auto r = run({"reproduce", "table1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "  19      2.7     16.5       51"));
  EXPECT_TRUE(contains(r.out, "   6     -1.5        0        3"));
}

TEST(CliReproduce, TableTwo) {
  const auto r = run({"reproduce", "table2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "8 passed, 0 failed, 6 skipped"));
}

TEST(CliVerify, BundledFileAndMismatch) {
  auto r = run({"verify", "--bundled"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "PASS 9-5.2/B2"));
  EXPECT_TRUE(contains(r.out, "SKIP 25-19.1/B4"));
  const std::string path = temp_path("tampered.catalog");
  {
    std::ofstream f(path);
    f << "name=bad s=2 m=3 t=4,2,1,7 b=3 expect_wt=0,1 expect_wb=3\n";
  }
  r = run({"verify", path});
  EXPECT_EQ(r.code, kExitMismatch);
  EXPECT_TRUE(contains(r.out, "FAIL bad"));
  EXPECT_TRUE(contains(r.out, "W_b: expected 3, got 2"));
  std::remove(path.c_str());
  EXPECT_EQ(run({"verify"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "/nonexistent/file"}).code, kExitUsage);
}

TEST(CliSearch, SituationAndCatalogEmission) {
  const std::string path = temp_path("emit.catalog");
  auto r = run({"search", "s=2", "N=16", "n=5", "p=1", "--emit-catalog", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "situation: S2"));
  // Emitted winners verify against their own recorded values.
  r = run({"verify", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "19 passed, 0 failed"));
  std::remove(path.c_str());
  r = run({"search", "s=2", "N=8", "n=4", "p=1"});
  EXPECT_TRUE(contains(r.out, "situation: ALL_SAME"));
  r = run({"search", "s=2", "N=12", "n=4", "p=1"});
  EXPECT_EQ(r.code, kExitUsage);
  r = run({"search", "s=2", "N=32", "n=14", "p=1", "--max-subsets=10"});
  EXPECT_EQ(r.code, kExitGuard);
}

TEST(CliSearch, JsonOutput) {
  const auto r = run({"search", "s=3", "N=27", "n=5", "p=2", "--json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("situation"), "ALL_SAME");
  EXPECT_EQ(j.at("criteria").size(), 4u);
  for (const auto& c : j.at("criteria")) {
    for (const auto& w : c.at("winners")) {
      const auto d = design_from_json(w.at("design"));
      EXPECT_EQ(compute_blocked_wlp(d.treatment_spec(), *d.block_scheme()), wlp_from_json(w.at("wlp")));
    }
  }
}

TEST(CliMaximalBlock, Output) {
  auto r = run({"maximal-block", "s=2 m=3 t=4,2,1,7"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "even design: yes"));
  EXPECT_TRUE(contains(r.out, ": yes"));
  r = run({"maximal-block", "s=2 m=2 t=2,1,3"});
  EXPECT_TRUE(contains(r.out, "no (every run contains a zero)"));
  r = run({"maximal-block", "--json", "s=3 m=2 t=1,2"});
  EXPECT_EQ(nlohmann::json::parse(r.out).at("partitionable"), true);
}

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"wlp"}).code, kExitUsage);
}

}  // namespace
}  // namespace mabd
