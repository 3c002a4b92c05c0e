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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ghzsim::dsl {

namespace {

struct Token {
  std::string_view text;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < line.size()) {
    if (space(line[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !space(line[i])) ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(s[0])) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

std::optional<double> to_number(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::optional<CaseWeights> weights_from(double w1, double w2, double w3) {
  CaseWeights w{w1, w2, w3};
  try {
    validate(w);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return w;
}

const std::map<std::string_view, ElementKind>& element_keywords() {
  static const std::map<std::string_view, ElementKind> m = {
      {"pbs", ElementKind::kPbs},     {"bs", ElementKind::kBs},
      {"hwp45", ElementKind::kHwp45}, {"hwp90", ElementKind::kHwp90},
      {"route", ElementKind::kRoute},
  };
  return m;
}

// Tracks which modes exist and which are still live while statements are
// applied in order.
class Flow {
 public:
  explicit Flow(int line) : line_(line) {}
  void set_line(int line) { line_ = line; }

  std::optional<ParseError> declare(const ModeRef& m) {
    if (auto e = produce(m)) return e;
    declared_.insert(m.name);
    return std::nullopt;
  }

  std::optional<ParseError> produce(const ModeRef& m) {
    if (live_.count(m.name) || consumed_.count(m.name)) {
      return error(m, ErrorKind::kModeReuse, "mode '" + m.name + "' already exists");
    }
    live_.insert(m.name);
    return std::nullopt;
  }

  std::optional<ParseError> consume(const ModeRef& m) {
    if (auto e = require_live(m)) return e;
    live_.erase(m.name);
    consumed_.insert(m.name);
    return std::nullopt;
  }

  std::optional<ParseError> require_live(const ModeRef& m) const {
    if (consumed_.count(m.name)) {
      return error(m, ErrorKind::kModeReuse, "mode '" + m.name + "' was already consumed");
    }
    if (!live_.count(m.name)) {
      return error(m, ErrorKind::kUndeclaredMode, "mode '" + m.name + "' is not declared");
    }
    return std::nullopt;
  }

  bool declared(const std::string& name) const { return declared_.count(name) > 0; }

  ParseError error(const ModeRef& m, ErrorKind kind, std::string message) const {
    return {line_, m.column, std::move(message), kind};
  }

 private:
  int line_;
  std::set<std::string> live_;
  std::set<std::string> consumed_;
  std::set<std::string> declared_;
};

struct FlowContext {
  bool has_source = false;
  std::set<int> channels;
};

std::vector<const ModeRef*> modes_of(const Statement& s) {
  std::vector<const ModeRef*> out;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, InputStmt> || std::is_same_v<T, ChannelStmt>) {
          for (const auto& m : b.modes) out.push_back(&m);
        } else if constexpr (std::is_same_v<T, ElementStmt>) {
          for (const auto& m : b.inputs) {
            if (m) out.push_back(&*m);
          }
          const bool in_place = b.kind == ElementKind::kHwp45 || b.kind == ElementKind::kHwp90;
          if (!in_place) {
            for (const auto& m : b.outputs) out.push_back(&m);
          }
        } else if constexpr (std::is_same_v<T, KerrStmt>) {
          out.push_back(&b.mode);
        }
      },
      s.body);
  return out;
}

const ModeRef kSourceModes[] = {{"a1", 0}, {"b1", 0}, {"a2", 0}, {"b2", 0}};

// Checks that need only the statement itself.
std::optional<ParseError> local_check(const Statement& s) {
  auto modes = modes_of(s);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[i]->name == modes[j]->name) {
        return ParseError{s.line, modes[i]->column,
                          "mode '" + modes[i]->name + "' appears twice in one statement",
                          ErrorKind::kModeReuse};
      }
    }
  }
  return std::nullopt;
}

// Global mode flow: statements applied in order against the live set.
std::optional<ParseError> apply_flow(const Statement& s, const Header& header, Flow& flow,
                                     FlowContext& ctx) {
  flow.set_line(s.line);
  if (auto e = local_check(s)) return e;
  const ModeRef at_start{"", 1};
  if (const auto* src = std::get_if<SourceStmt>(&s.body)) {
    if (ctx.has_source) return flow.error(at_start, ErrorKind::kModeReuse, "second source");
    if (header.case_weights && !(*header.case_weights == src->weights)) {
      return flow.error(at_start, ErrorKind::kBadParameter,
                        "source weights disagree with the case_weights header");
    }
    ctx.has_source = true;
    for (const auto& m : kSourceModes) {
      if (auto e = flow.declare({m.name, 1})) return e;
    }
  } else if (const auto* in = std::get_if<InputStmt>(&s.body)) {
    for (const auto& m : in->modes) {
      if (auto e = flow.declare(m)) return e;
    }
  } else if (const auto* el = std::get_if<ElementStmt>(&s.body)) {
    if (el->kind == ElementKind::kHwp45 || el->kind == ElementKind::kHwp90) {
      return flow.require_live(*el->inputs.at(0));
    }
    for (const auto& m : el->inputs) {
      if (m) {
        if (auto e = flow.consume(*m)) return e;
      }
    }
    for (const auto& m : el->outputs) {
      if (auto e = flow.produce(m)) return e;
    }
  } else if (const auto* k = std::get_if<KerrStmt>(&s.body)) {
    if (!flow.declared(k->mode.name)) {
      return flow.error(k->mode, ErrorKind::kUndeclaredMode,
                        "kerr mode '" + k->mode.name + "' is not a source or input mode");
    }
    return flow.require_live(k->mode);
  } else if (const auto* ch = std::get_if<ChannelStmt>(&s.body)) {
    if (!ctx.channels.insert(ch->photon).second) {
      return flow.error({"", 9}, ErrorKind::kBadParameter,
                        "second channel for photon " + std::to_string(ch->photon));
    }
    for (const auto& m : ch->modes) {
      if (auto e = flow.require_live(m)) return e;
    }
  }
  return std::nullopt;
}

// Without `flow` only the declarations themselves are checked.
std::optional<ParseError> check_detectors(const std::vector<DetectorDecl>& detectors,
                                          Flow* flow) {
  Flow local(0);
  Flow& f = flow ? *flow : local;
  std::set<std::string> names;
  std::map<std::string, std::string> owner;
  for (const auto& d : detectors) {
    f.set_line(d.line);
    if (!names.insert(d.name).second) {
      return f.error({d.name, d.column}, ErrorKind::kBadParameter,
                        "detector group '" + d.name + "' declared twice");
    }
    for (const auto& m : d.modes) {
      if (auto it = owner.find(m.name); it != owner.end()) {
        return f.error(m, ErrorKind::kModeReuse,
                       "mode '" + m.name + "' already belongs to detector " + it->second);
      }
      owner[m.name] = d.name;
      if (!flow) continue;
      if (auto e = flow->require_live(m)) {
        e->message = "detector mode '" + m.name + "' is not live at the end of the network";
        return e;
      }
    }
  }
  return std::nullopt;
}

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      line_ = line_no;
      if (auto e = parse_line(text.substr(pos, end - pos))) return *e;
      pos = end + 1;
    }
    if (auto e = check_detectors(doc_.detectors, nullptr)) return *e;
    return std::move(doc_);
  }

 private:
  using MaybeError = std::optional<ParseError>;

  ParseError err(const Token& t, ErrorKind kind, std::string message) const {
    return {line_, t.column, std::move(message), kind};
  }

  MaybeError mode_ref(const Token& t, ModeRef& out) const {
    if (!is_identifier(t.text)) {
      return err(t, ErrorKind::kSyntax, "expected a mode name, got '" + std::string(t.text) + "'");
    }
    out = {std::string(t.text), t.column};
    return std::nullopt;
  }

  MaybeError expect_count(const std::vector<Token>& toks, std::size_t n, const char* usage) const {
    if (toks.size() == n) return std::nullopt;
    const Token& at = toks.size() > n ? toks[n] : toks.back();
    return err(at, ErrorKind::kSyntax, std::string("expected: ") + usage);
  }

  MaybeError expect_literal(const Token& t, std::string_view lit) const {
    if (t.text == lit) return std::nullopt;
    return err(t, ErrorKind::kSyntax,
               "expected '" + std::string(lit) + "', got '" + std::string(t.text) + "'");
  }

  MaybeError parse_line(std::string_view line) {
    const std::vector<Token> toks = tokenize(line);
    if (toks.empty()) return std::nullopt;
    const std::string_view kw = toks[0].text;
    if (kw == "set") return parse_set(toks);
    any_statement_ = true;
    Statement s;
    s.line = line_;
    if (kw == "detect") return parse_detect(toks);
    MaybeError e;
    if (kw == "source") {
      e = parse_source(toks, s);
    } else if (kw == "input") {
      e = parse_input(toks, s);
    } else if (kw == "kerr") {
      e = parse_kerr(toks, s);
    } else if (kw == "channel") {
      e = parse_channel(toks, s);
    } else if (auto it = element_keywords().find(kw); it != element_keywords().end()) {
      e = parse_element(toks, it->second, s);
    } else {
      return err(toks[0], is_identifier(kw) ? ErrorKind::kUnknownElement : ErrorKind::kSyntax,
                 "unknown statement '" + std::string(kw) + "'");
    }
    if (e) return e;
    if (auto le = local_check(s)) return le;
    doc_.statements.push_back(std::move(s));
    return std::nullopt;
  }

  MaybeError parse_set(const std::vector<Token>& toks) {
    if (any_statement_) {
      return err(toks[0], ErrorKind::kSyntax, "set lines must come before the first statement");
    }
    if (auto e = expect_count(toks, 3, "set KEY VALUE")) return e;
    const std::string_view key = toks[1].text;
    const Token& value = toks[2];
    Header& h = doc_.header;
    auto dup = [&](bool present) -> MaybeError {
      if (!present) return std::nullopt;
      return err(toks[1], ErrorKind::kBadParameter, "'" + std::string(key) + "' set twice");
    };
    if (key == "theta" || key == "alpha") {
      auto& slot = key == "theta" ? h.theta : h.alpha;
      if (auto e = dup(slot.has_value())) return e;
      auto v = to_number(value.text);
      if (!v || (key == "alpha" && *v < 0.0)) {
        return err(value, ErrorKind::kBadParameter,
                   "bad " + std::string(key) + " '" + std::string(value.text) + "'");
      }
      slot = *v;
    } else if (key == "case_weights") {
      if (auto e = dup(h.case_weights.has_value())) return e;
      std::vector<double> ws;
      std::string_view rest = value.text;
      while (true) {
        auto comma = rest.find(',');
        auto v = to_number(rest.substr(0, comma));
        if (!v) break;
        ws.push_back(*v);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      std::optional<CaseWeights> w;
      if (ws.size() == 3 && std::count(value.text.begin(), value.text.end(), ',') == 2) {
        w = weights_from(ws[0], ws[1], ws[2]);
      }
      if (!w) {
        return err(value, ErrorKind::kBadParameter,
                   "case_weights must be three nonnegative numbers summing to 1, as w1,w2,w3");
      }
      h.case_weights = w;
    } else if (key == "noise") {
      if (auto e = dup(h.noise.has_value())) return e;
      try {
        h.noise = parse_noise_spec(value.text);
      } catch (const std::invalid_argument& ex) {
        return err(value, ErrorKind::kBadParameter, ex.what());
      }
    } else {
      return err(toks[1], ErrorKind::kBadParameter, "unknown header key '" + std::string(key) + "'");
    }
    return std::nullopt;
  }

  MaybeError parse_source(const std::vector<Token>& toks, Statement& s) {
    if (auto e = expect_count(toks, 6, "source pdc2 weights W1 W2 W3")) return e;
    if (auto e = expect_literal(toks[1], "pdc2")) return e;
    if (auto e = expect_literal(toks[2], "weights")) return e;
    double w[3];
    for (int i = 0; i < 3; ++i) {
      auto v = to_number(toks[3 + i].text);
      if (!v) return err(toks[3 + i], ErrorKind::kBadParameter, "weight is not a number");
      w[i] = *v;
    }
    auto cw = weights_from(w[0], w[1], w[2]);
    if (!cw) {
      return err(toks[3], ErrorKind::kBadParameter,
                 "weights must be nonnegative and sum to 1");
    }
    s.body = SourceStmt{*cw};
    return std::nullopt;
  }

  MaybeError parse_modes(const std::vector<Token>& toks, std::size_t from,
                         std::vector<ModeRef>& out, const char* usage) const {
    if (toks.size() <= from) return err(toks.back(), ErrorKind::kSyntax, std::string("expected: ") + usage);
    for (std::size_t i = from; i < toks.size(); ++i) {
      ModeRef m;
      if (auto e = mode_ref(toks[i], m)) return e;
      out.push_back(std::move(m));
    }
    return std::nullopt;
  }

  MaybeError parse_input(const std::vector<Token>& toks, Statement& s) {
    InputStmt in;
    if (auto e = parse_modes(toks, 1, in.modes, "input MODE...")) return e;
    s.body = std::move(in);
    return std::nullopt;
  }

  MaybeError parse_kerr(const std::vector<Token>& toks, Statement& s) {
    if (auto e = expect_count(toks, 4, "kerr MODE H|V UNITS")) return e;
    KerrStmt k;
    if (auto e = mode_ref(toks[1], k.mode)) return e;
    auto pol = parse_polarization(toks[2].text);
    if (!pol) return err(toks[2], ErrorKind::kBadParameter, "polarization must be H or V");
    k.pol = *pol;
    auto units = to_number(toks[3].text);
    if (!units) return err(toks[3], ErrorKind::kBadParameter, "phase units must be a number");
    k.units = *units;
    s.body = std::move(k);
    return std::nullopt;
  }

  MaybeError parse_channel(const std::vector<Token>& toks, Statement& s) {
    if (toks.size() < 3) {
      return err(toks.back(), ErrorKind::kSyntax, "expected: channel PHOTON MODE...");
    }
    ChannelStmt ch;
    if (toks[1].text.size() != 1 || toks[1].text[0] < '1' || toks[1].text[0] > '3') {
      return err(toks[1], ErrorKind::kBadParameter, "channel photon must be 1, 2 or 3");
    }
    ch.photon = toks[1].text[0] - '0';
    if (auto e = parse_modes(toks, 2, ch.modes, "channel PHOTON MODE...")) return e;
    s.body = std::move(ch);
    return std::nullopt;
  }

  MaybeError parse_element(const std::vector<Token>& toks, ElementKind kind, Statement& s) {
    ElementStmt el;
    el.kind = kind;
    if (kind == ElementKind::kHwp45 || kind == ElementKind::kHwp90) {
      if (auto e = expect_count(toks, 2, "hwp MODE")) return e;
      ModeRef m;
      if (auto e = mode_ref(toks[1], m)) return e;
      el.inputs.emplace_back(m);
      el.outputs.push_back(m);
    } else if (kind == ElementKind::kRoute) {
      if (auto e = expect_count(toks, 4, "route FROM -> TO")) return e;
      if (auto e = expect_literal(toks[2], "->")) return e;
      ModeRef from;
      ModeRef to;
      if (auto e = mode_ref(toks[1], from)) return e;
      if (auto e = mode_ref(toks[3], to)) return e;
      el.inputs.emplace_back(from);
      el.outputs.push_back(to);
    } else {
      const char* usage = kind == ElementKind::kPbs ? "pbs IN1 IN2|- -> OUT_T OUT_R"
                                                     : "bs IN1 IN2|- -> OUT1 OUT2";
      if (auto e = expect_count(toks, 6, usage)) return e;
      if (auto e = expect_literal(toks[3], "->")) return e;
      ModeRef in1;
      if (auto e = mode_ref(toks[1], in1)) return e;
      el.inputs.emplace_back(in1);
      if (toks[2].text == "-") {
        el.inputs.emplace_back(std::nullopt);
      } else {
        ModeRef in2;
        if (auto e = mode_ref(toks[2], in2)) return e;
        el.inputs.emplace_back(in2);
      }
      for (int i = 4; i < 6; ++i) {
        ModeRef out;
        if (auto e = mode_ref(toks[i], out)) return e;
        el.outputs.push_back(out);
      }
    }
    s.body = std::move(el);
    return std::nullopt;
  }

  MaybeError parse_detect(const std::vector<Token>& toks) {
    if (toks.size() < 4) return err(toks.back(), ErrorKind::kSyntax, "expected: detect NAME = MODE...");
    if (!is_identifier(toks[1].text)) {
      return err(toks[1], ErrorKind::kSyntax, "detector name must be an identifier");
    }
    if (auto e = expect_literal(toks[2], "=")) return e;
    DetectorDecl d;
    d.name = std::string(toks[1].text);
    d.line = line_;
    d.column = toks[1].column;
    if (auto e = parse_modes(toks, 3, d.modes, "detect NAME = MODE...")) return e;
    for (std::size_t i = 0; i < d.modes.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (d.modes[i].name == d.modes[j].name) {
          return err(toks[3 + i], ErrorKind::kModeReuse, "mode listed twice in one detector");
        }
      }
    }
    doc_.detectors.push_back(std::move(d));
    return std::nullopt;
  }

  DslDocument doc_;
  int line_ = 0;
  bool any_statement_ = false;
};

std::string mode_name(const std::optional<ModeRef>& m) { return m ? m->name : "-"; }

NetworkElement build_element(const ElementStmt& el) {
  auto mode = [](const ModeRef& m) { return SpatialMode(m.name); };
  auto optional_mode = [&](const std::optional<ModeRef>& m) -> std::optional<SpatialMode> {
    if (!m) return std::nullopt;
    return mode(*m);
  };
  switch (el.kind) {
    case ElementKind::kPbs:
      return make_pbs(mode(*el.inputs[0]), optional_mode(el.inputs[1]), mode(el.outputs[0]),
                      mode(el.outputs[1]));
    case ElementKind::kBs:
      return make_bs(mode(*el.inputs[0]), optional_mode(el.inputs[1]), mode(el.outputs[0]),
                     mode(el.outputs[1]));
    case ElementKind::kHwp45:
      return make_hwp45(mode(*el.inputs[0]));
    case ElementKind::kHwp90:
      return make_hwp90(mode(*el.inputs[0]));
    case ElementKind::kRoute:
      return make_route(mode(*el.inputs[0]), mode(el.outputs[0]));
  }
  throw std::logic_error("unhandled element kind");
}

bool well_formed(const ElementStmt& el) {
  switch (el.kind) {
    case ElementKind::kPbs:
    case ElementKind::kBs:
      return el.inputs.size() == 2 && el.inputs[0] && el.outputs.size() == 2;
    case ElementKind::kHwp45:
    case ElementKind::kHwp90:
      return el.inputs.size() == 1 && el.inputs[0] && el.outputs.size() == 1 &&
             el.outputs[0].name == el.inputs[0]->name;
    case ElementKind::kRoute:
      return el.inputs.size() == 1 && el.inputs[0] && el.outputs.size() == 1;
  }
  return false;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax:
      return "syntax";
    case ErrorKind::kUnknownElement:
      return "unknown-element";
    case ErrorKind::kModeReuse:
      return "mode-reuse";
    case ErrorKind::kUndeclaredMode:
      return "undeclared-mode";
    case ErrorKind::kBadParameter:
      return "bad-parameter";
  }
  return "unknown";
}

std::string ParseError::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + dsl::to_string(kind) +
         ": " + message;
}

ParseResult parse(std::string_view text) {
  try {
    return Parser().run(text);
  } catch (const std::exception& ex) {
    // Defensive: parsing is meant to be total, so surface anything that
    // slipped through as a syntax error rather than escaping.
    return ParseError{1, 1, std::string("internal parser error: ") + ex.what(), ErrorKind::kSyntax};
  }
}

DslDocument parse_or_throw(std::string_view text) {
  ParseResult r = parse(text);
  if (auto* e = std::get_if<ParseError>(&r)) throw DslError(*e);
  return std::get<DslDocument>(std::move(r));
}

std::string pretty_print(const DslDocument& doc) {
  std::ostringstream out;
  const Header& h = doc.header;
  if (h.theta) out << "set theta " << format_number(*h.theta) << "\n";
  if (h.alpha) out << "set alpha " << format_number(*h.alpha) << "\n";
  if (h.case_weights) {
    out << "set case_weights " << format_number(h.case_weights->upper_upper) << ","
        << format_number(h.case_weights->lower_lower) << ","
        << format_number(h.case_weights->mixed) << "\n";
  }
  if (h.noise) out << "set noise " << h.noise->to_string() << "\n";
  for (const Statement& s : doc.statements) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, SourceStmt>) {
            out << "source pdc2 weights " << format_number(b.weights.upper_upper) << " "
                << format_number(b.weights.lower_lower) << " " << format_number(b.weights.mixed);
          } else if constexpr (std::is_same_v<T, InputStmt>) {
            out << "input";
            for (const auto& m : b.modes) out << " " << m.name;
          } else if constexpr (std::is_same_v<T, KerrStmt>) {
            out << "kerr " << b.mode.name << " " << to_char(b.pol) << " " << format_number(b.units);
          } else if constexpr (std::is_same_v<T, ChannelStmt>) {
            out << "channel " << b.photon;
            for (const auto& m : b.modes) out << " " << m.name;
          } else {
            out << keyword(b.kind);
            switch (b.kind) {
              case ElementKind::kHwp45:
              case ElementKind::kHwp90:
                out << " " << mode_name(b.inputs.at(0));
                break;
              case ElementKind::kRoute:
                out << " " << mode_name(b.inputs.at(0)) << " -> " << b.outputs.at(0).name;
                break;
              default:
                out << " " << mode_name(b.inputs.at(0)) << " " << mode_name(b.inputs.at(1))
                    << " -> " << b.outputs.at(0).name << " " << b.outputs.at(1).name;
            }
          }
        },
        s.body);
    out << "\n";
  }
  for (const auto& d : doc.detectors) {
    out << "detect " << d.name << " =";
    for (const auto& m : d.modes) out << " " << m.name;
    out << "\n";
  }
  return out.str();
}

CircuitNetwork elaborate(const DslDocument& doc) {
  Flow flow(0);
  FlowContext ctx;
  CircuitNetwork net;
  for (const Statement& s : doc.statements) {
    if (const auto* el = std::get_if<ElementStmt>(&s.body); el && !well_formed(*el)) {
      throw DslError({s.line, 1, "malformed element statement", ErrorKind::kSyntax});
    }
    if (auto e = apply_flow(s, doc.header, flow, ctx)) throw DslError(*e);
    if (const auto* el = std::get_if<ElementStmt>(&s.body)) {
      try {
        net.steps.emplace_back(build_element(*el));
      } catch (const std::invalid_argument& ex) {
        throw DslError({s.line, 1, ex.what(), ErrorKind::kModeReuse});
      }
    } else if (const auto* ch = std::get_if<ChannelStmt>(&s.body)) {
      ChannelMarker marker{ch->photon, {}};
      for (const auto& m : ch->modes) marker.modes.emplace_back(m.name);
      net.steps.emplace_back(std::move(marker));
    } else if (const auto* k = std::get_if<KerrStmt>(&s.body)) {
      net.couplings.push_back({Rail{SpatialMode(k->mode.name), k->pol}, k->units});
    } else if (const auto* src = std::get_if<SourceStmt>(&s.body)) {
      net.source = src->weights;
    }
  }
  if (auto e = check_detectors(doc.detectors, &flow)) throw DslError(*e);
  for (const auto& d : doc.detectors) {
    DetectorGroup g{d.name, {}};
    for (const auto& m : d.modes) g.modes.emplace_back(m.name);
    net.detectors.push_back(std::move(g));
  }
  if (doc.header.case_weights) net.source = doc.header.case_weights;
  if (doc.header.theta) net.params.theta = *doc.header.theta;
  if (doc.header.alpha) net.params.alpha = *doc.header.alpha;
  net.noise = doc.header.noise;
  return net;
}

DslDocument load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_or_throw(buf.str());
}

}  // namespace ghzsim::dsl
