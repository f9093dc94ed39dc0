#include "rulemon/ltl/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace rulemon::ltl {

ParseError::ParseError(Reason reason, std::size_t offset, std::vector<std::string> expected,
                       std::string message)
    : std::runtime_error(std::move(message)),
      reason_(reason),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Not,
  Globally,
  Finally,
  Next,
  WeakNext,
  Until,
  Release,
  And,
  Or,
  Implies,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok type;
  std::size_t offset;
  std::string text;
};

const std::vector<std::string> kOperandStart = {"identifier", "true", "false", "(", "!", "G", "F", "X", "W"};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "'" + items[i] + "'";
  }
  return out;
}

std::string describe(const Token& t) {
  if (t.type == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, pos_, {}});
        return out;
      }
      const std::size_t start = pos_;
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        std::string word(text_.substr(start, pos_ - start));
        out.push_back({keyword(word), start, std::move(word)});
        continue;
      }
      switch (c) {
        case '!': out.push_back({Tok::Not, start, "!"}); ++pos_; continue;
        case '&': out.push_back({Tok::And, start, "&"}); ++pos_; continue;
        case '|': out.push_back({Tok::Or, start, "|"}); ++pos_; continue;
        case '(': out.push_back({Tok::LParen, start, "("}); ++pos_; continue;
        case ')': out.push_back({Tok::RParen, start, ")"}); ++pos_; continue;
        case '-':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            out.push_back({Tok::Implies, start, "->"});
            pos_ += 2;
            continue;
          }
          break;
        default:
          break;
      }
      // Gather the run of punctuation for the message.
      std::size_t end = pos_ + 1;
      while (end < text_.size() && std::ispunct(static_cast<unsigned char>(text_[end])) &&
             text_[end] != '(' && text_[end] != ')') {
        ++end;
      }
      std::string op(text_.substr(start, end - start));
      throw ParseError(ParseError::Reason::UnknownOperator, start,
                       {"!", "&", "|", "->", "G", "F", "X", "W", "U", "R", "(", ")"},
                       "unknown operator '" + op + "' at offset " + std::to_string(start));
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "true") return Tok::True;
    if (w == "false") return Tok::False;
    if (w == "G") return Tok::Globally;
    if (w == "F") return Tok::Finally;
    if (w == "X") return Tok::Next;
    if (w == "W") return Tok::WeakNext;
    if (w == "U") return Tok::Until;
    if (w == "R") return Tok::Release;
    return Tok::Ident;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = implication();
    if (peek().type != Tok::End) {
      fail({"&", "|", "->", "U", "R", "end of input"});
    }
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& t = peek();
    std::ostringstream msg;
    msg << "syntax error at offset " << t.offset << ": unexpected " << describe(t) << ", expected one of "
        << join(expected);
    throw ParseError(ParseError::Reason::Syntax, t.offset, expected, msg.str());
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().type == Tok::Implies) {
      advance();
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().type == Tok::Or) {
      advance();
      lhs = Formula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = temporal();
    while (peek().type == Tok::And) {
      advance();
      lhs = Formula::conjunction(std::move(lhs), temporal());
    }
    return lhs;
  }

  Formula temporal() {
    Formula lhs = unary();
    if (peek().type == Tok::Until) {
      advance();
      return Formula::until(std::move(lhs), temporal());
    }
    if (peek().type == Tok::Release) {
      advance();
      return Formula::release(std::move(lhs), temporal());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().type) {
      case Tok::Not: advance(); return Formula::negation(unary());
      case Tok::Globally: advance(); return Formula::globally(unary());
      case Tok::Finally: advance(); return Formula::finally(unary());
      case Tok::Next: advance(); return Formula::next(unary());
      case Tok::WeakNext: advance(); return Formula::weak_next(unary());
      default: return primary();
    }
  }

  Formula primary() {
    switch (peek().type) {
      case Tok::Ident: return Formula::atom(advance().text);
      case Tok::True: advance(); return Formula::make_true();
      case Tok::False: advance(); return Formula::make_false();
      case Tok::LParen: {
        advance();
        Formula inner = implication();
        if (peek().type != Tok::RParen) fail({")", "&", "|", "->", "U", "R"});
        advance();
        return inner;
      }
      default:
        fail(kOperandStart);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer; higher binds tighter.
int level(Kind k) {
  switch (k) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Until:
    case Kind::Release: return 4;
    default: return 5;
  }
}

std::string_view token(Kind k) {
  switch (k) {
    case Kind::Not: return "!";
    case Kind::Next: return "X ";
    case Kind::WeakNext: return "W ";
    case Kind::Globally: return "G ";
    case Kind::Finally: return "F ";
    case Kind::And: return " & ";
    case Kind::Or: return " | ";
    case Kind::Implies: return " -> ";
    case Kind::Until: return " U ";
    case Kind::Release: return " R ";
    default: return "";
  }
}

bool right_associative(Kind k) { return k == Kind::Implies || k == Kind::Until || k == Kind::Release; }

void print_into(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(f, out);
  if (parens) out += ')';
}

void print_into(const Formula& f, std::string& out) {
  const Kind k = f.kind();
  switch (k) {
    case Kind::True: out += "true"; return;
    case Kind::False: out += "false"; return;
    case Kind::Atom: out += f.name(); return;
    default: break;
  }
  if (is_unary(k)) {
    out += token(k);
    print_operand(f.child(), level(f.child().kind()) < 5, out);
    return;
  }
  const int p = level(k);
  const int lp = level(f.left().kind());
  const int rp = level(f.right().kind());
  const bool rassoc = right_associative(k);
  print_operand(f.left(), rassoc ? lp <= p : lp < p, out);
  out += token(k);
  print_operand(f.right(), rassoc ? rp < p : rp <= p, out);
}

}  // namespace

Formula parse(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace rulemon::ltl
