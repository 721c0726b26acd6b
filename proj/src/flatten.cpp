#include "forcelearn/flatten.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "forcelearn/errors.hpp"

namespace forcelearn {

std::string ListTerm::to_string() const {
  if (!is_list) return atom;
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ',';
    out << items[i].to_string();
  }
  out << ']';
  return out.str();
}

namespace {

struct Scanner {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  void skip() {
    for (;;) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) bump();
      if (pos < text.size() && text[pos] == '%') {
        while (pos < text.size() && text[pos] != '\n') bump();
        continue;
      }
      break;
    }
  }
  char bump() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  bool at(char c) {
    skip();
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c) {
    if (!at(c)) throw ParseError(line, col, std::string("expected `") + c + "`");
    bump();
  }
  std::string word() {
    skip();
    std::string out;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      out.push_back(bump());
    if (out.empty()) throw ParseError(line, col, "expected an atom");
    return out;
  }
  bool done() {
    skip();
    return pos >= text.size();
  }
};

ListTerm parse_list_term(Scanner& sc) {
  if (sc.at('[')) {
    sc.bump();
    ListTerm list;
    list.is_list = true;
    if (!sc.at(']')) {
      list.items.push_back(parse_list_term(sc));
      while (sc.at(',')) {
        sc.bump();
        list.items.push_back(parse_list_term(sc));
      }
    }
    sc.expect(']');
    return list;
  }
  std::string atom = sc.word();
  if (std::isupper(static_cast<unsigned char>(atom[0])) || atom[0] == '_')
    throw ParseError(sc.line, sc.col, "term examples must be ground (got variable " + atom + ")");
  if (sc.at('('))
    throw NonListFunctor("function symbol `" + atom + "` is not supported; only lists and atoms");
  ListTerm t;
  t.atom = atom;
  return t;
}

// Assigns each distinct list a constant. Names concatenate the element
// tokens ([1,2] -> l12, [] -> nil); when two different lists would collide,
// later ones get a numeric suffix. Identical lists share one constant.
class ListNamer {
 public:
  std::string name_of(const ListTerm& list, std::vector<Fact>& description) {
    if (!list.is_list) throw InternalError("name_of expects a list");
    if (list.items.empty()) return kNilConstant;
    std::string canon = list.to_string();
    auto it = by_term_.find(canon);
    if (it != by_term_.end()) return it->second;

    const ListTerm& head = list.items[0];
    ListTerm tail;
    tail.is_list = true;
    tail.items.assign(list.items.begin() + 1, list.items.end());
    std::string head_name = head.is_list ? name_of(head, description) : head.atom;
    std::string tail_name = name_of(tail, description);

    std::string base = "l";
    for (const auto& item : list.items) base += item.is_list ? name_of(item, description) : item.atom;
    std::string name = base;
    for (int n = 2; taken_.count(name); ++n) name = base + "_" + std::to_string(n);
    taken_.insert(name);
    by_term_.emplace(canon, name);

    description.push_back(Fact{
        kComponentsPred,
        {Term::constant(name), Term::constant(head_name), Term::constant(tail_name)}});
    return name;
  }

 private:
  std::map<std::string, std::string> by_term_;
  std::set<std::string> taken_{kNilConstant};
};

}  // namespace

TermExample parse_term_example(const std::string& text) {
  Scanner sc{text};
  TermExample ex;
  ex.pred = sc.word();
  if (std::isupper(static_cast<unsigned char>(ex.pred[0])) || ex.pred[0] == '_')
    throw ParseError(sc.line, sc.col, "predicate must start with a lowercase letter");
  sc.expect('(');
  ex.args.push_back(parse_list_term(sc));
  while (sc.at(',')) {
    sc.bump();
    ex.args.push_back(parse_list_term(sc));
  }
  sc.expect(')');
  sc.expect('.');
  if (!sc.done()) throw ParseError(sc.line, sc.col, "trailing input after term example");
  return ex;
}

ExtendedInstance flatten(const TermExample& example, const std::optional<Literal>& base_fact,
                         std::optional<bool> label) {
  std::vector<Fact> description;
  ListNamer namer;
  Fact fact{example.pred, {}};
  for (const auto& arg : example.args) {
    std::string name = arg.is_list ? namer.name_of(arg, description) : arg.atom;
    fact.args.push_back(Term::constant(name));
  }

  if (base_fact) {
    if (base_fact->arity() != fact.arity())
      throw Error("base fact pattern arity differs from the instance fact");
    Fact grounded{base_fact->pred, {}};
    std::map<std::string, std::string> bound;
    for (std::size_t j = 0; j < base_fact->args.size(); ++j) {
      const Term& t = base_fact->args[j];
      if (!t.var) {
        grounded.args.push_back(t);
        continue;
      }
      auto it = bound.find(t.name);
      if (it == bound.end()) it = bound.emplace(t.name, fact.args[j].name).first;
      grounded.args.push_back(Term::constant(it->second));
    }
    description.push_back(std::move(grounded));
  }
  return make_instance(std::move(fact), std::move(description), label);
}

}  // namespace forcelearn
