#pragma once

#include <string>
#include <vector>

#include "forcelearn/clause.hpp"
#include "forcelearn/database.hpp"
#include "forcelearn/decl.hpp"
#include "forcelearn/errors.hpp"

namespace forcelearn {

// Text formats ('%' starts a comment everywhere):
//   facts file:        pred(c1,c2).
//   declaration file:  head: p/3
//                      mode: components(+,-,-)
//   clause/program:    h(X,Y) :- b1(X,Z), b2(Z,Y).
//   instance file:     fact: append(l12,l3,l123).
//                      desc:
//                      components(l12,1,l2).
//                      label: +
// Variables start with an uppercase letter or '_', constants with anything
// else. All parsers throw ParseError with line/column on bad input.

Fact parse_fact(const std::string& text);
std::vector<Fact> parse_facts(const std::string& text);
Database parse_database(const std::string& text);

Clause parse_clause(const std::string& text);
std::vector<Clause> parse_program(const std::string& text);

Declaration parse_declaration(const std::string& text);

ExtendedInstance parse_instance(const std::string& text);
std::vector<ExtendedInstance> parse_instances(const std::string& text);

std::string serialize_program(std::span<const Clause> program);
std::string serialize_instances(std::span<const ExtendedInstance> instances);

}  // namespace forcelearn
