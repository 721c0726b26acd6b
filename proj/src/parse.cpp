#include "forcelearn/parse.hpp"

#include <cctype>
#include <sstream>

namespace forcelearn {

namespace {

struct Token {
  enum class Type { Ident, Number, Symbol, End };
  Type type = Type::End;
  std::string text;
  int line = 0;
  int col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(tok_.line, tok_.col, msg); }

  Token expect_symbol(const std::string& sym) {
    if (tok_.type != Token::Type::Symbol || tok_.text != sym)
      fail("expected `" + sym + "`, got `" + describe() + "`");
    return take();
  }
  Token expect_ident() {
    if (tok_.type != Token::Type::Ident)
      fail("expected an identifier, got `" + describe() + "`");
    return take();
  }
  bool at_symbol(const std::string& sym) const {
    return tok_.type == Token::Type::Symbol && tok_.text == sym;
  }
  bool at_end() const { return tok_.type == Token::Type::End; }
  std::string describe() const {
    return tok_.type == Token::Type::End ? "end of input" : tok_.text;
  }

 private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_ = Token{Token::Type::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        word.push_back(bump());
      tok_ = Token{Token::Type::Ident, word, tok_.line, tok_.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        num.push_back(bump());
      tok_ = Token{Token::Type::Number, num, tok_.line, tok_.col};
      return;
    }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      bump();
      bump();
      tok_ = Token{Token::Type::Symbol, ":-", tok_.line, tok_.col};
      return;
    }
    static const std::string singles = "().,:/+-[]|";
    if (singles.find(c) != std::string::npos) {
      tok_ = Token{Token::Type::Symbol, std::string(1, bump()), tok_.line, tok_.col};
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character `") + c + "`");
  }

  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        bump();
      if (pos_ < text_.size() && text_[pos_] == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  char bump() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

bool is_variable_name(const std::string& name) {
  return !name.empty() && (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_');
}

Term parse_term(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.type == Token::Type::Number) return Term::constant(lex.take().text);
  if (t.type == Token::Type::Ident) {
    std::string name = lex.take().text;
    return is_variable_name(name) ? Term::variable(name) : Term::constant(name);
  }
  lex.fail("expected a term, got `" + lex.describe() + "`");
}

Literal parse_literal(Lexer& lex) {
  Token name = lex.expect_ident();
  Literal lit{name.text, {}};
  if (lex.at_symbol("(")) {
    lex.take();
    lit.args.push_back(parse_term(lex));
    while (lex.at_symbol(",")) {
      lex.take();
      lit.args.push_back(parse_term(lex));
    }
    lex.expect_symbol(")");
  }
  return lit;
}

Fact parse_fact_tokens(Lexer& lex) {
  const Token at = lex.peek();
  Literal lit = parse_literal(lex);
  if (!lit.ground()) throw ParseError(at.line, at.col, "facts may not contain variables");
  return lit;
}

Clause parse_clause_tokens(Lexer& lex) {
  Clause c;
  c.head = parse_literal(lex);
  if (lex.at_symbol(":-")) {
    lex.take();
    c.body.push_back(parse_literal(lex));
    while (lex.at_symbol(",")) {
      lex.take();
      c.body.push_back(parse_literal(lex));
    }
  }
  lex.expect_symbol(".");
  return c;
}

// `keyword:` introducers in instance and declaration files.
bool at_keyword(Lexer& lex, const std::string& word) {
  return lex.peek().type == Token::Type::Ident && lex.peek().text == word;
}

}  // namespace

Fact parse_fact(const std::string& text) {
  Lexer lex(text);
  Fact f = parse_fact_tokens(lex);
  lex.expect_symbol(".");
  if (!lex.at_end()) lex.fail("trailing input after fact");
  return f;
}

std::vector<Fact> parse_facts(const std::string& text) {
  Lexer lex(text);
  std::vector<Fact> out;
  while (!lex.at_end()) {
    out.push_back(parse_fact_tokens(lex));
    lex.expect_symbol(".");
  }
  return out;
}

Database parse_database(const std::string& text) { return Database(parse_facts(text)); }

Clause parse_clause(const std::string& text) {
  Lexer lex(text);
  Clause c = parse_clause_tokens(lex);
  if (!lex.at_end()) lex.fail("trailing input after clause");
  return c;
}

std::vector<Clause> parse_program(const std::string& text) {
  Lexer lex(text);
  std::vector<Clause> out;
  while (!lex.at_end()) out.push_back(parse_clause_tokens(lex));
  return out;
}

Declaration parse_declaration(const std::string& text) {
  Lexer lex(text);
  Declaration dec;
  bool have_head = false;
  while (!lex.at_end()) {
    Token kw = lex.expect_ident();
    if (kw.text == "head") {
      lex.expect_symbol(":");
      dec.head_pred = lex.expect_ident().text;
      lex.expect_symbol("/");
      Token n = lex.take();
      if (n.type != Token::Type::Number)
        throw ParseError(n.line, n.col, "expected the head arity after `/`");
      dec.head_arity = std::stoul(n.text);
      have_head = true;
    } else if (kw.text == "mode") {
      lex.expect_symbol(":");
      Token pred = lex.expect_ident();
      lex.expect_symbol("(");
      std::string io;
      for (;;) {
        if (lex.at_symbol("+")) {
          lex.take();
          io.push_back('+');
        } else if (lex.at_symbol("-")) {
          lex.take();
          io.push_back('-');
        } else {
          lex.fail("expected `+` or `-` in mode");
        }
        if (lex.at_symbol(",")) {
          lex.take();
          continue;
        }
        break;
      }
      lex.expect_symbol(")");
      ModeString m{pred.text, io};
      if (!dec.contains(m)) dec.modes.push_back(m);
    } else {
      throw ParseError(kw.line, kw.col, "expected `head:` or `mode:`, got `" + kw.text + "`");
    }
  }
  if (!have_head) throw ParseError(1, 1, "declaration file has no `head:` line");
  return dec;
}

ExtendedInstance parse_instance(const std::string& text) {
  std::vector<ExtendedInstance> all = parse_instances(text);
  if (all.size() != 1) throw ParseError(1, 1, "expected exactly one instance");
  return all.front();
}

std::vector<ExtendedInstance> parse_instances(const std::string& text) {
  Lexer lex(text);
  std::vector<ExtendedInstance> out;
  while (!lex.at_end()) {
    if (!at_keyword(lex, "fact")) lex.fail("expected `fact:` to start an instance");
    lex.take();
    lex.expect_symbol(":");
    Fact f = parse_fact_tokens(lex);
    lex.expect_symbol(".");
    std::vector<Fact> desc;
    std::optional<bool> label;
    if (at_keyword(lex, "desc")) {
      lex.take();
      lex.expect_symbol(":");
      while (!lex.at_end() && !at_keyword(lex, "label") && !at_keyword(lex, "fact")) {
        desc.push_back(parse_fact_tokens(lex));
        lex.expect_symbol(".");
      }
    }
    if (at_keyword(lex, "label")) {
      lex.take();
      lex.expect_symbol(":");
      if (lex.at_symbol("+")) {
        lex.take();
        label = true;
      } else if (lex.at_symbol("-")) {
        lex.take();
        label = false;
      } else {
        lex.fail("expected `+` or `-` after `label:`");
      }
    }
    out.push_back(make_instance(std::move(f), std::move(desc), label));
  }
  return out;
}

std::string serialize_program(std::span<const Clause> program) {
  std::ostringstream out;
  for (const auto& c : program) out << c.to_string() << '\n';
  return out.str();
}

std::string serialize_instances(std::span<const ExtendedInstance> instances) {
  std::ostringstream out;
  for (const auto& e : instances) out << e.to_string();
  return out.str();
}

}  // namespace forcelearn
