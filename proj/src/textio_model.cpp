#include "sbc/textio.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace sbc
{
namespace
{

enum class TokenKind
{
  Ident,
  Arrow,
  Colon,
  Dot,
  LParen,
  RParen,
  Semi,
  LBrace,
  RBrace,
  Invalid,
  Eof,
};

struct Token
{
  TokenKind kind;
  std::string_view text;
  std::size_t offset;
};

std::string_view describe(TokenKind kind)
{
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Semi: return "';'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Invalid: return "invalid character";
    case TokenKind::Eof: return "end of input";
  }
  return "token";
}

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex(std::string_view text)
{
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < n && ident_char(text[i])) ++i;
      out.push_back({TokenKind::Ident, text.substr(start, i - start), start});
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '>') {
      i += 2;
      out.push_back({TokenKind::Arrow, text.substr(start, 2), start});
      continue;
    }
    TokenKind kind = TokenKind::Invalid;
    switch (c) {
      case ':': kind = TokenKind::Colon; break;
      case '.': kind = TokenKind::Dot; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ';': kind = TokenKind::Semi; break;
      case '{': kind = TokenKind::LBrace; break;
      case '}': kind = TokenKind::RBrace; break;
      default: break;
    }
    ++i;
    out.push_back({kind, text.substr(start, 1), start});
  }
  out.push_back({TokenKind::Eof, text.substr(n, 0), n});
  return out;
}

// Thrown to abandon the parse after an unrecoverable syntax error.
struct Abort
{
};

struct ParsedParam
{
  Parameter param;
  std::size_t offset;
  std::size_t length;
};

struct ParsedTransition
{
  Transition transition;
  std::size_t offset;
  std::size_t end;
  std::size_t callee_offset;
  std::size_t callee_length;
};

class Parser
{
public:
  explicit Parser(std::string_view text) : tokens_(lex(text))
  {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  ParseResult run()
  {
    ParseResult result;
    std::vector<Itg> regions;
    std::vector<std::vector<SourceSpan>> spans;
    try {
      expect_keyword("system");
      auto name = expect_ident("system name");
      expect(TokenKind::LBrace);
      std::map<std::string, std::size_t> region_names;
      if (!at_keyword("itg")) {
        error(cur(), "expected 'itg', found " + describe_current() + ": a system needs at least one region");
        throw Abort{};
      }
      while (at_keyword("itg")) {
        auto [region, region_spans, name_token] = parse_itg();
        if (region) {
          if (region_names.contains(region->name.str())) {
            error(name_token, "region '" + region->name.str() + "' is declared twice");
          } else {
            region_names[region->name.str()] = regions.size();
            regions.push_back(std::move(*region));
            spans.push_back(std::move(region_spans));
          }
        }
      }
      expect(TokenKind::RBrace);
      if (cur().kind != TokenKind::Eof) {
        error(cur(), "unexpected " + describe_current() + " after the system block");
      }
      if (errors_ == 0) {
        result.system = compose(std::move(regions), Identifier(std::string(name.text)));
        result.transition_spans = std::move(spans);
      }
    } catch (const Abort &) {
    }
    result.diagnostics = std::move(diagnostics_);
    return result;
  }

private:
  struct ItgParse
  {
    std::optional<Itg> region;
    std::vector<SourceSpan> spans;
    Token name;
  };

  ItgParse parse_itg()
  {
    advance();  // itg
    const Token name = expect_ident("region name");
    expect(TokenKind::LBrace);
    expect_keyword("init");
    const Token init = expect_ident("initial state");
    expect(TokenKind::Semi);

    const std::size_t errors_before = errors_;
    endpoints_.clear();
    std::vector<ParsedTransition> parsed;
    while (cur().kind != TokenKind::RBrace && cur().kind != TokenKind::Eof) {
      if (auto t = parse_transition()) {
        parsed.push_back(std::move(*t));
      } else if (!std::exchange(at_boundary_, false)) {
        recover();
      }
    }
    expect(TokenKind::RBrace);

    std::set<Transition> seen;
    for (const auto & p : parsed) {
      if (!p.transition.interaction.callee.is_object()) {
        error_at(
          p.callee_offset, p.callee_length,
          "callee '" + p.transition.interaction.callee.name.str() +
            "' must be an object (write ':" + p.transition.interaction.callee.name.str() + "')");
      }
      if (!seen.insert(p.transition).second) {
        error_at(p.offset, p.end - p.offset, "duplicate transition");
      }
    }
    // A transition rejected after its arrow still declares its endpoints.
    if (!endpoints_.contains(init.text)) {
      error(init, "init state '" + std::string(init.text) + "' not declared by any transition");
    }

    ItgParse out{std::nullopt, {}, name};
    if (errors_ != errors_before) return out;
    Itg region{Identifier(std::string(name.text)), Identifier(std::string(init.text)), {}};
    for (auto & p : parsed) {
      out.spans.push_back(span(p.offset, p.end - p.offset));
      region.transitions.push_back(std::move(p.transition));
    }
    out.region = std::move(region);
    return out;
  }

  // Returns nullopt after reporting an error; the caller resynchronises.
  std::optional<ParsedTransition> parse_transition()
  {
    const std::size_t start = cur().offset;
    paren_depth_ = 0;
    auto source = ident("source state");
    if (!source || !token(TokenKind::Arrow)) return std::nullopt;
    auto target = ident("target state");
    if (!target) return std::nullopt;
    endpoints_.insert(source->text);
    endpoints_.insert(target->text);
    if (!token(TokenKind::Colon)) return std::nullopt;

    const Token tag_token = cur();
    std::optional<Tag> tag;
    if (tag_token.kind == TokenKind::Ident) tag = parse_tag(tag_token.text);
    if (!tag) {
      error(tag_token, "expected CAL or RET, found " + describe_current());
      return std::nullopt;
    }
    advance();

    auto caller = agent("caller");
    if (!caller || !token(TokenKind::Arrow)) return std::nullopt;
    const Token callee_start = cur();
    auto callee = agent("callee");
    if (!callee) return std::nullopt;
    const std::size_t callee_end = previous_end();
    if (!token(TokenKind::Dot)) return std::nullopt;
    auto op = ident("operation name");
    if (!op || !token(TokenKind::LParen)) return std::nullopt;
    paren_depth_ = 1;

    std::vector<ParsedParam> params;
    if (cur().kind != TokenKind::RParen) {
      for (;;) {
        auto p = param();
        if (!p) return std::nullopt;
        params.push_back(std::move(*p));
        if (cur().kind != TokenKind::Semi) break;
        advance();
      }
    }
    if (!token(TokenKind::RParen)) return std::nullopt;
    paren_depth_ = 0;
    if (!token(TokenKind::Semi)) return std::nullopt;

    std::set<std::string_view> names;
    bool duplicate = false;
    for (const auto & p : params) {
      if (!names.insert(p.param.name.str()).second) {
        error_at(p.offset, p.length, "parameter '" + p.param.name.str() + "' occurs twice");
        duplicate = true;
      }
    }
    if (duplicate) {
      at_boundary_ = true;
      return std::nullopt;
    }

    std::vector<Parameter> list;
    for (auto & p : params) list.push_back(std::move(p.param));
    Interaction ia{*tag, std::move(*caller), Identifier(std::string(op->text)),
                   ParamList(std::move(list)), std::move(*callee)};
    return ParsedTransition{
      Transition{Identifier(std::string(source->text)), std::move(ia), Identifier(std::string(target->text))},
      start, previous_end(), callee_start.offset, callee_end - callee_start.offset};
  }

  std::optional<Agent> agent(std::string_view what)
  {
    if (cur().kind == TokenKind::Colon) {
      advance();
      auto name = ident(what);
      if (!name) return std::nullopt;
      return Agent::object(std::string(name->text));
    }
    auto name = ident(what);
    if (!name) return std::nullopt;
    return Agent::actor(std::string(name->text));
  }

  std::optional<ParsedParam> param()
  {
    const Token dir_token = cur();
    std::optional<Direction> dir;
    if (dir_token.kind == TokenKind::Ident) dir = parse_direction(dir_token.text);
    if (!dir) {
      error(dir_token, "expected parameter direction in, out or inout, found " + describe_current());
      return std::nullopt;
    }
    advance();
    auto name = ident("parameter name");
    if (!name) return std::nullopt;
    Parameter p{*dir, Identifier(std::string(name->text)), std::nullopt};
    if (cur().kind == TokenKind::Colon) {
      advance();
      auto type = ident("parameter type");
      if (!type) return std::nullopt;
      p.type = Identifier(std::string(type->text));
    }
    return ParsedParam{std::move(p), dir_token.offset, previous_end() - dir_token.offset};
  }

  // Skips to just past the next ';' outside parentheses, or up to a '}' /
  // end of input.
  void recover()
  {
    int depth = paren_depth_;
    while (cur().kind != TokenKind::Eof && cur().kind != TokenKind::RBrace) {
      const auto kind = advance().kind;
      if (kind == TokenKind::LParen) ++depth;
      if (kind == TokenKind::RParen && depth > 0) --depth;
      if (kind == TokenKind::Semi && depth == 0) return;
    }
  }

  std::optional<Token> ident(std::string_view what)
  {
    if (cur().kind != TokenKind::Ident) {
      error(cur(), "expected " + std::string(what) + ", found " + describe_current());
      return std::nullopt;
    }
    return advance();
  }

  bool token(TokenKind kind)
  {
    if (cur().kind != kind) {
      error(cur(), "expected " + std::string(describe(kind)) + ", found " + describe_current());
      return false;
    }
    advance();
    return true;
  }

  Token expect_ident(std::string_view what)
  {
    auto t = ident(what);
    if (!t) throw Abort{};
    return *t;
  }

  void expect(TokenKind kind)
  {
    if (!token(kind)) throw Abort{};
  }

  void expect_keyword(std::string_view keyword)
  {
    if (!at_keyword(keyword)) {
      error(cur(), "expected '" + std::string(keyword) + "', found " + describe_current());
      throw Abort{};
    }
    advance();
  }

  bool at_keyword(std::string_view keyword) const
  {
    return cur().kind == TokenKind::Ident && cur().text == keyword;
  }

  const Token & cur() const { return tokens_[pos_]; }

  const Token & advance()
  {
    const Token & t = tokens_[pos_];
    if (t.kind != TokenKind::Eof) ++pos_;
    return t;
  }

  std::size_t previous_end() const
  {
    if (pos_ == 0) return 0;
    const Token & t = tokens_[pos_ - 1];
    return t.offset + t.text.size();
  }

  std::string describe_current() const
  {
    const Token & t = cur();
    if (t.kind == TokenKind::Ident) return "'" + std::string(t.text) + "'";
    if (t.kind == TokenKind::Invalid) {
      const auto byte = static_cast<unsigned char>(t.text.front());
      if (byte >= 0x20 && byte < 0x7f) return "invalid character '" + std::string(t.text) + "'";
      static const char * hex = "0123456789abcdef";
      return std::string("invalid byte 0x") + hex[byte >> 4] + hex[byte & 0xf];
    }
    return std::string(describe(t.kind));
  }

  SourceSpan span(std::size_t offset, std::size_t length) const
  {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1, length};
  }

  void error(const Token & at, std::string message)
  {
    error_at(at.offset, at.text.size(), std::move(message));
  }

  void error_at(std::size_t offset, std::size_t length, std::string message)
  {
    ++errors_;
    diagnostics_.push_back({Severity::Error, std::move(message), span(offset, length)});
  }

  std::vector<Token> tokens_;
  std::vector<std::size_t> line_starts_{0};
  std::size_t pos_ = 0;
  std::size_t errors_ = 0;
  bool at_boundary_ = false;  // a failed transition was consumed through its ';'
  int paren_depth_ = 0;
  std::set<std::string_view> endpoints_;
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

std::string format_diagnostic(const ParseDiagnostic & d, std::string_view file)
{
  std::ostringstream out;
  if (!file.empty()) out << file << ':';
  out << d.span.line << ':' << d.span.column << ": " << to_string(d.severity) << ": " << d.message;
  return out.str();
}

ParseResult parse_model(std::string_view text) { return Parser(text).run(); }

std::string render_model(const SystemItg & system)
{
  std::string out = "system " + system.name().str() + " {\n";
  for (const auto & region : system.regions()) {
    out += "  itg " + region.name.str() + " {\n";
    out += "    init " + region.initial.str() + ";\n";
    for (const auto & t : region.transitions) {
      const auto & ia = t.interaction;
      out += "    " + t.source.str() + " -> " + t.target.str() + " : ";
      out += to_string(ia.tag);
      out += " " + ia.caller.notation() + " -> " + ia.callee.notation() + " . ";
      out += format_signature(ia.signature()) + ";\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace sbc
