#include "pitchgraph/query/lexer.hpp"

#include <array>
#include <charconv>

#include "pitchgraph/error.hpp"

namespace pitchgraph::query {

namespace {

struct Keyword {
  std::string_view word;
  TokenKind kind;
};

constexpr std::array<Keyword, 20> kKeywords{{
    {"MATCH", TokenKind::Match},       {"WHERE", TokenKind::Where},
    {"RETURN", TokenKind::Return},     {"DISTINCT", TokenKind::Distinct},
    {"ORDER", TokenKind::Order},       {"BY", TokenKind::By},
    {"ASC", TokenKind::Asc},           {"ASCENDING", TokenKind::Asc},
    {"DESC", TokenKind::Desc},         {"DESCENDING", TokenKind::Desc},
    {"LIMIT", TokenKind::Limit},       {"AND", TokenKind::And},
    {"OR", TokenKind::Or},             {"NOT", TokenKind::Not},
    {"CONTAINS", TokenKind::Contains}, {"IS", TokenKind::Is},
    {"NULL", TokenKind::Null},         {"TRUE", TokenKind::True},
    {"FALSE", TokenKind::False},       {"AS", TokenKind::As},
}};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return out;
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  for (const auto& kw : kKeywords)
    if (kw.kind == kind) return kw.word;
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::String: return "string";
    case TokenKind::Integer: return "integer";
    case TokenKind::Float: return "float";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Dash: return "'-'";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Eq: return "'='";
    case TokenKind::Neq: return "'<>'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Semicolon: return "';'";
    default: return "?";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto push = [&](TokenKind k, std::string text, std::size_t at) {
    out.push_back(Token{k, std::move(text), at});
  };

  while (i < n) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    // line comment
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;

    if (ident_start(c)) {
      while (i < n && ident_char(src[i])) ++i;
      std::string_view word = src.substr(start, i - start);
      const std::string up = upper(word);
      bool is_kw = false;
      for (const auto& kw : kKeywords) {
        if (kw.word == up) {
          push(kw.kind, up, start);
          is_kw = true;
          break;
        }
      }
      if (!is_kw) push(TokenKind::Ident, std::string(word), start);
      continue;
    }

    if (c == '`') {
      ++i;
      std::string name;
      while (true) {
        if (i >= n) throw LexError(start, "unterminated quoted identifier");
        if (src[i] == '`') {
          if (i + 1 < n && src[i + 1] == '`') {
            name.push_back('`');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        name.push_back(src[i++]);
      }
      if (name.empty()) throw LexError(start, "empty quoted identifier");
      push(TokenKind::Ident, std::move(name), start);
      continue;
    }

    if (c == '\'' || c == '"') {
      ++i;
      std::string body;
      while (true) {
        if (i >= n) throw LexError(start, "unterminated string literal");
        const char d = src[i];
        if (d == c) {
          ++i;
          break;
        }
        if (d == '\\') {
          if (i + 1 >= n) throw LexError(start, "unterminated string literal");
          const char e = src[i + 1];
          switch (e) {
            case '\\': body.push_back('\\'); break;
            case '\'': body.push_back('\''); break;
            case '"': body.push_back('"'); break;
            case 'n': body.push_back('\n'); break;
            case 't': body.push_back('\t'); break;
            case 'r': body.push_back('\r'); break;
            default: throw LexError(i, std::string("unknown escape \\") + e);
          }
          i += 2;
          continue;
        }
        body.push_back(d);
        ++i;
      }
      push(TokenKind::String, std::move(body), start);
      continue;
    }

    if (digit(c)) {
      while (i < n && digit(src[i])) ++i;
      bool is_float = false;
      if (i + 1 < n && src[i] == '.' && digit(src[i + 1])) {
        is_float = true;
        ++i;
        while (i < n && digit(src[i])) ++i;
      }
      if (i < n && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < n && digit(src[j])) {
          is_float = true;
          i = j;
          while (i < n && digit(src[i])) ++i;
        }
      }
      if (i < n && ident_start(src[i])) throw LexError(i, "malformed number");
      std::string text(src.substr(start, i - start));
      if (!is_float) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        // Allow the magnitude of INT64_MIN; the parser range-checks after
        // applying a sign.
        if (ec == std::errc::result_out_of_range && text != "9223372036854775808")
          throw LexError(start, "integer literal out of range");
        (void)p;
      }
      push(is_float ? TokenKind::Float : TokenKind::Integer, std::move(text), start);
      continue;
    }

    ++i;
    switch (c) {
      case '(': push(TokenKind::LParen, "(", start); break;
      case ')': push(TokenKind::RParen, ")", start); break;
      case '[': push(TokenKind::LBracket, "[", start); break;
      case ']': push(TokenKind::RBracket, "]", start); break;
      case '{': push(TokenKind::LBrace, "{", start); break;
      case '}': push(TokenKind::RBrace, "}", start); break;
      case ':': push(TokenKind::Colon, ":", start); break;
      case ',': push(TokenKind::Comma, ",", start); break;
      case '.': push(TokenKind::Dot, ".", start); break;
      case '-': push(TokenKind::Dash, "-", start); break;
      case '*': push(TokenKind::Star, "*", start); break;
      case ';': push(TokenKind::Semicolon, ";", start); break;
      case '=': push(TokenKind::Eq, "=", start); break;
      case '>':
        if (i < n && src[i] == '=') {
          ++i;
          push(TokenKind::Ge, ">=", start);
        } else {
          push(TokenKind::Gt, ">", start);
        }
        break;
      case '<':
        // "<-" stays two tokens so relationship arrows parse uniformly.
        if (i < n && src[i] == '=') {
          ++i;
          push(TokenKind::Le, "<=", start);
        } else if (i < n && src[i] == '>') {
          ++i;
          push(TokenKind::Neq, "<>", start);
        } else {
          push(TokenKind::Lt, "<", start);
        }
        break;
      case '!':
        if (i < n && src[i] == '=') {
          ++i;
          push(TokenKind::Neq, "<>", start);
          break;
        }
        [[fallthrough]];
      default:
        throw LexError(start, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

}  // namespace pitchgraph::query
