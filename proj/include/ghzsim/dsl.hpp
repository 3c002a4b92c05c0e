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

// A line-oriented description language for optical networks (.onet).
//
//   # comment
//   set theta 0.01              header lines come first
//   set case_weights 0.25,0.25,0.5
//   source pdc2 weights 0.25 0.25 0.5    declares a1 b1 a2 b2
//   input x y                   declares free input modes
//   kerr a1 H 0.5               probe phase per photon, in units of theta
//   pbs a1 - -> T1 ua           '-' is an unused (vacuum) port
//   bs ua - -> ua1 ua2
//   hwp90 ua2
//   route ub2 -> D3
//   channel 1 d1 D1             noisy channel crossing of photon 1
//   detect T = T
//
// Parsing checks each line on its own; elaborate() checks the mode flow:
// a mode comes into existence as a declared input or as an element output
// and is consumed when used as an element input; wave plates act in place.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ghzsim/elements.hpp"
#include "ghzsim/network.hpp"
#include "ghzsim/noise.hpp"
#include "ghzsim/source.hpp"
#include "ghzsim/state.hpp"

namespace ghzsim::dsl {

enum class ErrorKind { kSyntax, kUnknownElement, kModeReuse, kUndeclaredMode, kBadParameter };
const char* to_string(ErrorKind kind);

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based byte offset of the offending token
  std::string message;
  ErrorKind kind = ErrorKind::kSyntax;

  // "line:column: kind: message".
  std::string to_string() const;
  bool operator==(const ParseError&) const = default;
};

class DslError : public std::runtime_error {
 public:
  explicit DslError(ParseError error)
      : std::runtime_error(error.to_string()), error_(std::move(error)) {}
  const ParseError& error() const { return error_; }

 private:
  ParseError error_;
};

// A mode name with the column it was written at. Columns are diagnostics
// only and do not take part in equality.
struct ModeRef {
  std::string name;
  int column = 0;
  bool operator==(const ModeRef& other) const { return name == other.name; }
};

struct Header {
  std::optional<double> theta;
  std::optional<double> alpha;
  std::optional<CaseWeights> case_weights;
  std::optional<NoiseSpec> noise;
  bool operator==(const Header&) const = default;
};

struct SourceStmt {
  CaseWeights weights;
  bool operator==(const SourceStmt&) const = default;
};
struct InputStmt {
  std::vector<ModeRef> modes;
  bool operator==(const InputStmt&) const = default;
};
struct ElementStmt {
  ElementKind kind = ElementKind::kPbs;
  std::vector<std::optional<ModeRef>> inputs;
  std::vector<ModeRef> outputs;
  bool operator==(const ElementStmt&) const = default;
};
struct KerrStmt {
  ModeRef mode;
  Polarization pol = Polarization::H;
  double units = 0.0;
  bool operator==(const KerrStmt&) const = default;
};
struct ChannelStmt {
  int photon = 1;
  std::vector<ModeRef> modes;
  bool operator==(const ChannelStmt&) const = default;
};

struct Statement {
  std::variant<SourceStmt, InputStmt, ElementStmt, KerrStmt, ChannelStmt> body;
  int line = 0;
  bool operator==(const Statement& other) const { return body == other.body; }
};

struct DetectorDecl {
  std::string name;
  std::vector<ModeRef> modes;
  int line = 0;
  int column = 0;
  bool operator==(const DetectorDecl& other) const {
    return name == other.name && modes == other.modes;
  }
};

struct DslDocument {
  Header header;
  std::vector<Statement> statements;
  std::vector<DetectorDecl> detectors;
  bool operator==(const DslDocument&) const = default;
};

using ParseResult = std::variant<DslDocument, ParseError>;

// Total: returns the document or the first error. Never throws on any
// input text.
ParseResult parse(std::string_view text);
// Throws DslError.
DslDocument parse_or_throw(std::string_view text);

// Canonical text; parse(pretty_print(doc)) == doc.
std::string pretty_print(const DslDocument& doc);

// Validates the mode flow (undeclared-mode, mode-reuse) and builds the
// network. Throws DslError.
CircuitNetwork elaborate(const DslDocument& doc);

// Reads and parses a file. Throws DslError for parse errors and
// std::runtime_error when the file cannot be read.
DslDocument load_file(const std::string& path);

}  // namespace ghzsim::dsl
