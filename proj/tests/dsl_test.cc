// Copyright 2026 The ghzsim Authors
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

#include "ghzsim/dsl.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ghzsim/pipeline.hpp"
#include "gtest/gtest.h"

namespace ghzsim::dsl {
namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(GHZSIM_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error(std::string_view text) {
  ParseResult r = parse(text);
  if (const auto* e = std::get_if<ParseError>(&r)) return *e;
  ADD_FAILURE() << "expected a parse error for: " << text;
  return {};
}

ParseError elaborate_error(std::string_view text) {
  DslDocument doc = parse_or_throw(text);
  try {
    elaborate(doc);
  } catch (const DslError& e) {
    return e.error();
  }
  ADD_FAILURE() << "expected an elaboration error for: " << text;
  return {};
}

TEST(DslParseTest, SingleStatementsParseLocally) {
  EXPECT_TRUE(std::holds_alternative<DslDocument>(parse("hwp90 D1")));
  EXPECT_TRUE(std::holds_alternative<DslDocument>(parse("pbs a b -> c d")));
  EXPECT_TRUE(std::holds_alternative<DslDocument>(parse("bs a - -> c d  # comment")));
  EXPECT_TRUE(std::holds_alternative<DslDocument>(parse("route a -> b")));
}

TEST(DslParseTest, EmptyDocument) {
  for (std::string_view text : {"", "\n\n", "# only a comment\n", "   \t  "}) {
    ParseResult r = parse(text);
    ASSERT_TRUE(std::holds_alternative<DslDocument>(r)) << text;
    EXPECT_TRUE(std::get<DslDocument>(r).statements.empty());
  }
}

TEST(DslParseTest, UnknownElement) {
  ParseError e = parse_error("input a\nhwp a");
  EXPECT_EQ(e.kind, ErrorKind::kUnknownElement);
  EXPECT_EQ(e.line, 2);
  EXPECT_EQ(e.column, 1);
  EXPECT_EQ(e.to_string().substr(0, 20), "2:1: unknown-element");
}

TEST(DslParseTest, ModeTwiceInOneStatement) {
  ParseError e = parse_error("pbs a a -> b c");
  EXPECT_EQ(e.kind, ErrorKind::kModeReuse);
  EXPECT_EQ(e.column, 7);
  EXPECT_EQ(parse_error("pbs a b -> c c").kind, ErrorKind::kModeReuse);
}

TEST(DslParseTest, ModeInTwoDetectors) {
  ParseError e = parse_error("detect X = a b\ndetect Y = b");
  EXPECT_EQ(e.kind, ErrorKind::kModeReuse);
  EXPECT_EQ(e.line, 2);
}

TEST(DslParseTest, BadParameters) {
  EXPECT_EQ(parse_error("set theta abc").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("set alpha -1").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("set case_weights 0.5,0.5").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("set noise X@4").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("set speed 3").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("kerr a1 D 0.5").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("channel 4 d1 D1").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("source pdc2 weights 0.5 0.5 0.5").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(parse_error("detect X = a\ndetect X = b").kind, ErrorKind::kBadParameter);
}

TEST(DslParseTest, SyntaxErrors) {
  EXPECT_EQ(parse_error("route a b").kind, ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("pbs a -> c").kind, ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("input a\nset theta 0.1").kind, ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("source pdc3 weights 0.25 0.25 0.5").kind, ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("detect = a").kind, ErrorKind::kSyntax);
  EXPECT_EQ(parse_error("@@@").kind, ErrorKind::kSyntax);
}

TEST(DslParseTest, ParseOrThrowCarriesTheError) {
  try {
    parse_or_throw("bogus a");
    FAIL();
  } catch (const DslError& e) {
    EXPECT_EQ(e.error().kind, ErrorKind::kUnknownElement);
  }
}

TEST(DslElaborateTest, UndeclaredMode) {
  ParseError e = elaborate_error("input a\nbs a x -> b c");
  EXPECT_EQ(e.kind, ErrorKind::kUndeclaredMode);
  EXPECT_EQ(e.line, 2);
  EXPECT_EQ(e.column, 6);
}

TEST(DslElaborateTest, ConsumedModeIsReuse) {
  EXPECT_EQ(elaborate_error("input a\nbs a - -> b c\nroute a -> d").kind, ErrorKind::kModeReuse);
  EXPECT_EQ(elaborate_error("input a b\nroute a -> b").kind, ErrorKind::kModeReuse);
}

TEST(DslElaborateTest, DetectorModesMustBeLive) {
  EXPECT_EQ(elaborate_error("input a\nroute a -> b\ndetect X = a").kind, ErrorKind::kModeReuse);
  EXPECT_EQ(elaborate_error("input a\ndetect X = z").kind, ErrorKind::kUndeclaredMode);
}

TEST(DslElaborateTest, SourceAndChannelRules) {
  const std::string src = "source pdc2 weights 0.25 0.25 0.5\n";
  EXPECT_EQ(elaborate_error(src + src).kind, ErrorKind::kModeReuse);
  EXPECT_EQ(elaborate_error("set case_weights 0.5,0.5,0\n" + src).kind, ErrorKind::kBadParameter);
  EXPECT_EQ(elaborate_error("input d1\nchannel 1 d1\nchannel 1 d1").kind, ErrorKind::kBadParameter);
  EXPECT_EQ(elaborate_error("input x\nkerr y H 1").kind, ErrorKind::kUndeclaredMode);
}

TEST(DslElaborateTest, InPlacePlateKeepsModeLive) {
  CircuitNetwork net = elaborate(parse_or_throw("input a\nhwp90 a\nhwp45 a\ndetect X = a"));
  EXPECT_EQ(net.steps.size(), 2u);
  ASSERT_NE(net.detector("X"), nullptr);
}

TEST(DslElaborateTest, HeaderAndSourceFeedTheNetwork) {
  CircuitNetwork net = elaborate(parse_or_throw(
      "set theta 0.02\nset noise X@1,X@3\nsource pdc2 weights 0.1 0.1 0.8\nkerr a1 H 0.5"));
  EXPECT_DOUBLE_EQ(net.params.theta, 0.02);
  ASSERT_TRUE(net.source.has_value());
  EXPECT_DOUBLE_EQ(net.source->mixed, 0.8);
  ASSERT_TRUE(net.noise.has_value());
  EXPECT_EQ(net.noise->errors.size(), 2u);
  ASSERT_EQ(net.couplings.size(), 1u);
  EXPECT_DOUBLE_EQ(net.couplings[0].phase_units, 0.5);
}

TEST(DslRoundTripTest, FixturesRoundTrip) {
  for (const char* name : {"fig1.onet", "fig3.onet"}) {
    DslDocument doc = parse_or_throw(fixture(name));
    std::string printed = pretty_print(doc);
    EXPECT_EQ(parse_or_throw(printed), doc) << name;
    EXPECT_EQ(pretty_print(parse_or_throw(printed)), printed) << name;
  }
}

TEST(DslRoundTripTest, DoublesSurviveExactly) {
  DslDocument doc = parse_or_throw("set theta 0.1\nset alpha 316.22776601683796\ninput a\nkerr a V -0.3333333333333333");
  DslDocument again = parse_or_throw(pretty_print(doc));
  EXPECT_EQ(*again.header.alpha, *doc.header.alpha);
  EXPECT_EQ(std::get<KerrStmt>(again.statements[1].body).units, -0.3333333333333333);
}

TEST(DslFixtureTest, Fig1MatchesBuiltinNetwork) {
  CircuitNetwork from_text = elaborate(parse_or_throw(fixture("fig1.onet")));
  CircuitNetwork builtin = build_ghzps();
  EXPECT_EQ(from_text.couplings, builtin.couplings);
  EXPECT_EQ(from_text.detectors, builtin.detectors);
  auto a = run_network(from_text, {});
  auto b = run_ghzps();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].patterns.size(), b[i].patterns.size());
    for (std::size_t k = 0; k < a[i].patterns.size(); ++k) {
      EXPECT_NEAR((a[i].patterns[k].state - b[i].patterns[k].state).norm(), 0.0, 1e-12);
      EXPECT_NEAR(a[i].patterns[k].probability, b[i].patterns[k].probability, 1e-15);
    }
  }
}

TEST(DslFixtureTest, Fig3MatchesBuiltinNetwork) {
  CircuitNetwork from_text = elaborate(parse_or_throw(fixture("fig3.onet")));
  RunReport a = run_full(from_text, {});
  RunReport b = run_full();
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].pattern, b.entries[i].pattern);
    EXPECT_NEAR((a.entries[i].corrected_state - b.entries[i].corrected_state).norm(), 0.0, 1e-12);
  }
  // Same single-photon map as the builder on every source rail.
  CircuitNetwork builtin = build_fig3();
  for (const char* m : {"a1", "b1", "a2", "b2"}) {
    for (Polarization p : {Polarization::H, Polarization::V}) {
      PureState in = PureState::basis(FockKet::of({{m, p}}));
      EXPECT_NEAR((propagate(from_text, in).output - propagate(builtin, in).output).norm(), 0.0,
                  1e-12);
    }
  }
}

TEST(DslFuzzTest, RandomBytesNeverThrow) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 80);
  for (int i = 0; i < 3000; ++i) {
    std::string text(static_cast<std::size_t>(len(rng)), '\0');
    for (char& c : text) c = static_cast<char>(byte(rng));
    ParseResult r;
    ASSERT_NO_THROW(r = parse(text));
    if (auto* doc = std::get_if<DslDocument>(&r)) {
      EXPECT_EQ(parse_or_throw(pretty_print(*doc)), *doc);
    }
  }
}

TEST(DslFuzzTest, MutatedFixturesNeverThrow) {
  const std::string base = fixture("fig3.onet");
  const std::string alphabet = "abcdDeET0123456789 -.>=#@,\n\tpbshwrute";
  std::mt19937_64 rng(7);
  int parsed = 0;
  for (int i = 0; i < 1500; ++i) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits; ++k) {
      const std::size_t at = rng() % text.size();
      switch (rng() % 3) {
        case 0:
          text[at] = alphabet[rng() % alphabet.size()];
          break;
        case 1:
          text.erase(at, 1 + rng() % 6);
          break;
        default:
          text.insert(at, 1, alphabet[rng() % alphabet.size()]);
      }
    }
    ParseResult r;
    ASSERT_NO_THROW(r = parse(text));
    if (auto* doc = std::get_if<DslDocument>(&r)) {
      ++parsed;
      EXPECT_EQ(parse_or_throw(pretty_print(*doc)), *doc);
      try {
        elaborate(*doc);
      } catch (const DslError&) {
      }
    } else {
      const ParseError& e = std::get<ParseError>(r);
      EXPECT_GE(e.line, 1);
      EXPECT_GE(e.column, 1);
    }
  }
  EXPECT_GT(parsed, 0);
}

TEST(DslLoadTest, MissingFileThrowsRuntimeError) {
  EXPECT_THROW(load_file("/nonexistent/file.onet"), std::runtime_error);
  EXPECT_NO_THROW(load_file(std::string(GHZSIM_FIXTURE_DIR) + "/fig1.onet"));
}

}  // namespace
}  // namespace ghzsim::dsl
