#include "pitchgraph/query/parser.hpp"

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "pitchgraph/error.hpp"
#include "pitchgraph/kg/entity_dictionary.hpp"
#include "pitchgraph/query/lexer.hpp"

namespace pitchgraph::query {

namespace {

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t end_offset)
      : toks_(std::move(tokens)), end_offset_(end_offset) {}

  Query query() {
    Query q;
    expect(TokenKind::Match);
    q.match.push_back(path());
    while (accept(TokenKind::Comma)) q.match.push_back(path());
    if (accept(TokenKind::Where)) q.where = expr();
    expect(TokenKind::Return);
    q.distinct = accept(TokenKind::Distinct);
    q.items.push_back(return_item());
    while (accept(TokenKind::Comma)) q.items.push_back(return_item());
    if (accept(TokenKind::Order)) {
      expect(TokenKind::By);
      q.order_by.push_back(order_item());
      while (accept(TokenKind::Comma)) q.order_by.push_back(order_item());
    }
    if (at(TokenKind::Limit)) {
      next();
      const Token& t = peek_required({"integer"});
      if (t.kind != TokenKind::Integer) fail({"integer"}, "LIMIT takes a positive integer");
      auto v = to_int(t, false);
      if (v <= 0) fail({"positive integer"}, "LIMIT must be positive");
      next();
      q.limit = v;
    }
    accept(TokenKind::Semicolon);
    if (pos_ < toks_.size()) fail({"end of query"}, "unexpected " + describe(toks_[pos_]));
    return q;
  }

 private:
  // --- token plumbing -------------------------------------------------
  [[nodiscard]] bool at(TokenKind k) const { return pos_ < toks_.size() && toks_[pos_].kind == k; }
  [[nodiscard]] bool at_next(TokenKind k) const {
    return pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == k;
  }
  bool accept(TokenKind k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& next() { return toks_[pos_++]; }
  [[nodiscard]] std::size_t offset() const {
    return pos_ < toks_.size() ? toks_[pos_].offset : end_offset_;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::Ident: return "identifier '" + t.text + "'";
      case TokenKind::String: return "string literal";
      case TokenKind::Integer:
      case TokenKind::Float: return "number " + t.text;
      default: return std::string(to_string(t.kind));
    }
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) const {
    throw ParseError(offset(), std::move(expected), what);
  }
  [[noreturn]] void fail_unexpected(std::vector<std::string> expected) const {
    fail(std::move(expected),
         pos_ < toks_.size() ? "unexpected " + describe(toks_[pos_]) : "unexpected end of query");
  }

  const Token& peek_required(std::initializer_list<const char*> expected) {
    if (pos_ >= toks_.size()) fail_unexpected({expected.begin(), expected.end()});
    return toks_[pos_];
  }

  const Token& expect(TokenKind k) {
    if (!at(k)) fail_unexpected({std::string(to_string(k))});
    return next();
  }

  std::string identifier(const char* what) {
    if (!at(TokenKind::Ident)) fail_unexpected({what});
    return next().text;
  }

  std::int64_t to_int(const Token& t, bool negative) const {
    // Parse the magnitude as unsigned so INT64_MIN is representable.
    std::uint64_t mag = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), mag);
    (void)p;
    constexpr auto kMaxPos = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (ec != std::errc{} || mag > kMaxPos + (negative ? 1 : 0))
      throw ParseError(t.offset, {}, "integer literal out of range");
    if (negative) return mag == kMaxPos + 1 ? std::numeric_limits<std::int64_t>::min()
                                            : -static_cast<std::int64_t>(mag);
    return static_cast<std::int64_t>(mag);
  }

  double to_float(const Token& t) const {
    double d = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
    (void)p;
    if (ec != std::errc{} || !std::isfinite(d)) throw ParseError(t.offset, {}, "float literal out of range");
    return d;
  }

  // literal := string | ['-'] number | TRUE | FALSE | NULL
  std::optional<Value> try_literal() {
    if (pos_ >= toks_.size()) return std::nullopt;
    const Token& t = toks_[pos_];
    switch (t.kind) {
      case TokenKind::String: ++pos_; return Value(t.text);
      case TokenKind::Integer: ++pos_; return Value(to_int(t, false));
      case TokenKind::Float: ++pos_; return Value(to_float(t));
      case TokenKind::True: ++pos_; return Value(true);
      case TokenKind::False: ++pos_; return Value(false);
      case TokenKind::Null: ++pos_; return Value();
      case TokenKind::Dash:
        if (at_next(TokenKind::Integer)) {
          pos_ += 2;
          return Value(to_int(toks_[pos_ - 1], true));
        }
        if (at_next(TokenKind::Float)) {
          pos_ += 2;
          return Value(-to_float(toks_[pos_ - 1]));
        }
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  // --- patterns -------------------------------------------------------
  PathPattern path() {
    PathPattern p;
    p.nodes.push_back(node_pattern());
    while (at(TokenKind::Dash) || at(TokenKind::Lt)) {
      p.rels.push_back(rel_pattern());
      p.nodes.push_back(node_pattern());
    }
    return p;
  }

  NodePattern node_pattern() {
    NodePattern n;
    n.offset = offset();
    expect(TokenKind::LParen);
    if (at(TokenKind::Ident)) n.var = next().text;
    if (accept(TokenKind::Colon)) n.label = identifier("label");
    if (accept(TokenKind::LBrace)) {
      if (!at(TokenKind::RBrace)) {
        do {
          std::string key = identifier("property key");
          expect(TokenKind::Colon);
          auto lit = try_literal();
          if (!lit) fail_unexpected({"literal"});
          n.props.emplace_back(std::move(key), std::move(*lit));
        } while (accept(TokenKind::Comma));
      }
      expect(TokenKind::RBrace);
    }
    if (!at(TokenKind::RParen)) fail_unexpected({"')'", "':'", "'{'"});
    next();
    return n;
  }

  // '-[' [var] ':' TYPE ']-' ['>'] | '<-[' [var] ':' TYPE ']-'
  RelPattern rel_pattern() {
    RelPattern r;
    r.offset = offset();
    const bool left = accept(TokenKind::Lt);
    expect(TokenKind::Dash);
    expect(TokenKind::LBracket);
    if (at(TokenKind::Ident)) r.var = next().text;
    if (!at(TokenKind::Colon)) fail({"':'"}, "relationship type is required");
    next();
    r.type = identifier("relationship type");
    expect(TokenKind::RBracket);
    expect(TokenKind::Dash);
    const bool right = accept(TokenKind::Gt);
    if (left && right) fail({"'-'"}, "relationship cannot point both ways");
    r.dir = left ? RelDir::Left : right ? RelDir::Right : RelDir::Both;
    return r;
  }

  // --- expressions ----------------------------------------------------
  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (at(TokenKind::Or)) {
      const std::size_t at_off = next().offset;
      lhs = make_expr(Logical{LogicOp::Or, lhs, and_expr()}, at_off);
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = not_expr();
    while (at(TokenKind::And)) {
      const std::size_t at_off = next().offset;
      lhs = make_expr(Logical{LogicOp::And, lhs, not_expr()}, at_off);
    }
    return lhs;
  }

  ExprPtr not_expr() {
    if (at(TokenKind::Not)) {
      const std::size_t at_off = next().offset;
      return make_expr(Not{not_expr()}, at_off);
    }
    return comparison();
  }

  ExprPtr comparison() {
    ExprPtr lhs = atom();
    if (pos_ >= toks_.size()) return lhs;
    const Token& t = toks_[pos_];
    std::optional<CompOp> op;
    switch (t.kind) {
      case TokenKind::Eq: op = CompOp::Eq; break;
      case TokenKind::Neq: op = CompOp::Neq; break;
      case TokenKind::Lt: op = CompOp::Lt; break;
      case TokenKind::Le: op = CompOp::Le; break;
      case TokenKind::Gt: op = CompOp::Gt; break;
      case TokenKind::Ge: op = CompOp::Ge; break;
      case TokenKind::Contains: op = CompOp::Contains; break;
      case TokenKind::Is: {
        next();
        const bool negated = accept(TokenKind::Not);
        expect(TokenKind::Null);
        return make_expr(IsNull{lhs, negated}, t.offset);
      }
      default: return lhs;
    }
    next();
    return make_expr(Comparison{*op, lhs, atom()}, t.offset);
  }

  ExprPtr atom() {
    const std::size_t start = offset();
    if (auto lit = try_literal()) return make_expr(Literal{std::move(*lit)}, start);
    if (accept(TokenKind::LParen)) {
      ExprPtr e = expr();
      expect(TokenKind::RParen);
      return e;
    }
    if (!at(TokenKind::Ident)) fail_unexpected({"identifier", "literal", "'('"});
    const Token& id = next();
    if (at(TokenKind::LParen)) return call(id);
    if (accept(TokenKind::Dot)) {
      std::string key = identifier("property key");
      return make_expr(PropertyAccess{id.text, std::move(key)}, start);
    }
    return make_expr(Variable{id.text}, start);
  }

  ExprPtr call(const Token& name) {
    const std::string fn = kg::ascii_lower(name.text);
    AggFn agg;
    if (fn == "count") {
      agg = AggFn::Count;
    } else if (fn == "sum") {
      agg = AggFn::Sum;
    } else if (fn == "collect") {
      agg = AggFn::Collect;
    } else {
      throw ParseError(name.offset, {"count", "sum", "collect"}, "unknown function '" + name.text + "'");
    }
    expect(TokenKind::LParen);
    Aggregate a{agg, false, nullptr};
    if (agg == AggFn::Count && accept(TokenKind::Star)) {
      expect(TokenKind::RParen);
      return make_expr(std::move(a), name.offset);
    }
    a.distinct = accept(TokenKind::Distinct);
    a.arg = expr();
    expect(TokenKind::RParen);
    return make_expr(std::move(a), name.offset);
  }

  ReturnItem return_item() {
    ReturnItem item{expr(), std::nullopt};
    if (accept(TokenKind::As)) item.alias = identifier("alias");
    return item;
  }

  OrderItem order_item() {
    OrderItem o{expr(), false};
    if (accept(TokenKind::Desc)) {
      o.descending = true;
    } else {
      accept(TokenKind::Asc);
    }
    return o;
  }

  std::vector<Token> toks_;
  std::size_t end_offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Query parse(std::string_view source) {
  return Parser(tokenize(source), source.size()).query();
}

}  // namespace pitchgraph::query
