#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fcif/aggregators.hpp"
#include "fcif/errors.hpp"
#include "fcif/profile.hpp"
#include "fcif/value.hpp"

namespace fcif::dsl {

// Expression language for user-defined rules:
//
//   def      := "fcif" IDENT "{" "f" "(" "i" ")" "=" expr "}"
//   expr     := "if" cond "then" expr "else" expr | sum
//   sum      := prod (("+"|"-") prod)*
//   prod     := atom (("*"|"/") atom)*
//   atom     := NUMBER | "i" | "n" | "theta" | "p" "(" idx "," idx ")" | "self"
//             | AGG "(" "col" "(" idx ")" ")" | "(" expr ")"
//   idx      := "i" | INTEGER
//   cond     := disj ; disj := conj ("or" conj)* ; conj := neg ("and" neg)*
//   neg      := "not" neg | expr CMP expr | "(" cond ")"
//
// `self` is sugar for p(i,i); `theta` is the configured threshold; `#`
// starts a line comment. No recursion and no state, so evaluation always
// terminates. The bare target variable `i` is a valid atom: rules that
// branch on the target agent (e.g. `if i = 1 then ... else ...`) need it.

enum class Agg { Min, Max, Mean, Sum, CountHigh, CountLow };
enum class Cmp { Lt, Le, Eq, Ge, Gt };

struct Node {
  enum class Kind {
    Number,
    SocietySize,
    Theta,
    TargetVar,
    Cell,    // kids: agent idx, target idx
    Self,    // p(i,i)
    ColAgg,  // kids: target idx
    Arith,   // kids: lhs, rhs
    If,      // kids: cond, then, else
    CmpOp,   // kids: lhs, rhs
    And,
    Or,
    Not
  };
  Kind kind = Kind::Number;
  Value number;
  char op = 0;  // Arith: one of + - * /
  Agg agg = Agg::Min;
  Cmp cmp = Cmp::Eq;
  std::vector<Node> kids;
};

struct FcifDef {
  std::string name;
  Node body;
};

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

struct Token {
  enum class Type { Ident, Number, Symbol, End };
  Type type = Type::End;
  std::string text;
  int line = 1;
  int col = 1;
};

inline bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Type t, std::string text, int l, int c) {
    out.push_back(Token{t, std::move(text), l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int tl = line, tc = col;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Token::Type::Ident, src.substr(i, j - i), tl, tc);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < src.size() && ((src[j] >= '0' && src[j] <= '9') || src[j] == '.')) ++j;
      push(Token::Type::Number, src.substr(i, j - i), tl, tc);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '<' || c == '>') {
      if (i + 1 < src.size() && src[i + 1] == '=') {
        push(Token::Type::Symbol, src.substr(i, 2), tl, tc);
        i += 2;
        col += 2;
        continue;
      }
      push(Token::Type::Symbol, std::string(1, c), tl, tc);
      ++i;
      ++col;
      continue;
    }
    if (std::string("{}()=+-*/,").find(c) != std::string::npos) {
      push(Token::Type::Symbol, std::string(1, c), tl, tc);
      ++i;
      ++col;
      continue;
    }
    throw LexError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back(Token{Token::Type::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser (recursive descent with backtracking only inside `neg`)

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& get() { return toks[pos == toks.size() - 1 ? pos : pos++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", got " + got, t.line, t.col);
  }

  bool at_symbol(const std::string& s) const {
    return peek().type == Token::Type::Symbol && peek().text == s;
  }
  bool at_ident(const std::string& s) const {
    return peek().type == Token::Type::Ident && peek().text == s;
  }
  void expect_symbol(const std::string& s) {
    if (!at_symbol(s)) fail("'" + s + "'");
    ++pos;
  }
  void expect_ident(const std::string& s) {
    if (!at_ident(s)) fail("'" + s + "'");
    ++pos;
  }

  static bool is_keyword(const std::string& s) {
    static const std::set<std::string> kw = {"fcif", "f",  "i",   "if",   "then", "else",
                                             "p",    "self", "n",  "theta", "col",  "min",
                                             "max",  "mean", "sum", "count_high", "count_low",
                                             "and",  "or",   "not"};
    return kw.count(s) > 0;
  }

  FcifDef parse_def() {
    expect_ident("fcif");
    if (peek().type != Token::Type::Ident || is_keyword(peek().text)) fail("rule name");
    FcifDef def;
    def.name = get().text;
    expect_symbol("{");
    expect_ident("f");
    expect_symbol("(");
    expect_ident("i");
    expect_symbol(")");
    expect_symbol("=");
    def.body = parse_expr();
    expect_symbol("}");
    return def;
  }

  Node parse_expr() {
    if (at_ident("if")) {
      ++pos;
      Node n;
      n.kind = Node::Kind::If;
      n.kids.push_back(parse_cond());
      expect_ident("then");
      n.kids.push_back(parse_expr());
      expect_ident("else");
      n.kids.push_back(parse_expr());
      return n;
    }
    return parse_sum();
  }

  Node parse_sum() {
    Node lhs = parse_prod();
    while (at_symbol("+") || at_symbol("-")) {
      char op = get().text[0];
      Node n;
      n.kind = Node::Kind::Arith;
      n.op = op;
      n.kids.push_back(std::move(lhs));
      n.kids.push_back(parse_prod());
      lhs = std::move(n);
    }
    return lhs;
  }

  Node parse_prod() {
    Node lhs = parse_atom();
    while (at_symbol("*") || at_symbol("/")) {
      char op = get().text[0];
      Node n;
      n.kind = Node::Kind::Arith;
      n.op = op;
      n.kids.push_back(std::move(lhs));
      n.kids.push_back(parse_atom());
      lhs = std::move(n);
    }
    return lhs;
  }

  Node parse_idx() {
    Node n;
    if (at_ident("i")) {
      ++pos;
      n.kind = Node::Kind::TargetVar;
      return n;
    }
    if (peek().type == Token::Type::Number && peek().text.find('.') == std::string::npos) {
      n.kind = Node::Kind::Number;
      n.number = parse_number(get());
      return n;
    }
    fail("agent index ('i' or an integer)");
  }

  Value parse_number(const Token& t) {
    // fraction form: INTEGER "/" INTEGER is handled at the atom level so that
    // 1/2 in an arithmetic position still means division; numeric tokens here
    // are decimals with at most nine fractional digits
    try {
      if (auto dot = t.text.find('.'); dot != std::string::npos) {
        std::string frac = t.text.substr(dot + 1);
        if (frac.empty() || frac.size() > 9 || frac.find('.') != std::string::npos) {
          throw MalformedNumber("");
        }
        long long ip = 0, fp = 0;
        if (!fcif::detail::parse_ll(t.text.substr(0, dot), ip)) throw MalformedNumber("");
        if (!fcif::detail::parse_ll(frac, fp)) throw MalformedNumber("");
        long long scale = 1;
        for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
        return Value(ip) + Value(fp, scale);
      }
      long long ip = 0;
      if (!fcif::detail::parse_ll(t.text, ip)) throw MalformedNumber("");
      return Value(ip);
    } catch (const Error&) {
      throw ParseError("malformed number '" + t.text + "'", t.line, t.col);
    }
  }

  Node parse_atom() {
    if (peek().type == Token::Type::Number) {
      Node n;
      n.kind = Node::Kind::Number;
      n.number = parse_number(get());
      return n;
    }
    if (at_symbol("(")) {
      ++pos;
      Node inner = parse_expr();
      expect_symbol(")");
      return inner;
    }
    if (peek().type != Token::Type::Ident) fail("an expression");
    const Token& t = peek();
    if (t.text == "i") {
      ++pos;
      Node n;
      n.kind = Node::Kind::TargetVar;
      return n;
    }
    if (t.text == "n") {
      ++pos;
      Node n;
      n.kind = Node::Kind::SocietySize;
      return n;
    }
    if (t.text == "theta") {
      ++pos;
      Node n;
      n.kind = Node::Kind::Theta;
      return n;
    }
    if (t.text == "self") {
      ++pos;
      Node n;
      n.kind = Node::Kind::Self;
      return n;
    }
    if (t.text == "p") {
      ++pos;
      expect_symbol("(");
      Node n;
      n.kind = Node::Kind::Cell;
      n.kids.push_back(parse_idx());
      expect_symbol(",");
      n.kids.push_back(parse_idx());
      expect_symbol(")");
      return n;
    }
    Agg agg;
    if (t.text == "min") {
      agg = Agg::Min;
    } else if (t.text == "max") {
      agg = Agg::Max;
    } else if (t.text == "mean") {
      agg = Agg::Mean;
    } else if (t.text == "sum") {
      agg = Agg::Sum;
    } else if (t.text == "count_high") {
      agg = Agg::CountHigh;
    } else if (t.text == "count_low") {
      agg = Agg::CountLow;
    } else {
      fail("an expression");
    }
    ++pos;
    expect_symbol("(");
    expect_ident("col");
    expect_symbol("(");
    Node n;
    n.kind = Node::Kind::ColAgg;
    n.agg = agg;
    n.kids.push_back(parse_idx());
    expect_symbol(")");
    expect_symbol(")");
    return n;
  }

  Node parse_cond() { return parse_disj(); }

  Node parse_disj() {
    Node lhs = parse_conj();
    while (at_ident("or")) {
      ++pos;
      Node n;
      n.kind = Node::Kind::Or;
      n.kids.push_back(std::move(lhs));
      n.kids.push_back(parse_conj());
      lhs = std::move(n);
    }
    return lhs;
  }

  Node parse_conj() {
    Node lhs = parse_neg();
    while (at_ident("and")) {
      ++pos;
      Node n;
      n.kind = Node::Kind::And;
      n.kids.push_back(std::move(lhs));
      n.kids.push_back(parse_neg());
      lhs = std::move(n);
    }
    return lhs;
  }

  Node parse_neg() {
    if (at_ident("not")) {
      ++pos;
      Node n;
      n.kind = Node::Kind::Not;
      n.kids.push_back(parse_neg());
      return n;
    }
    // "(" may open either a parenthesized condition or a comparison operand;
    // try the comparison first and backtrack
    size_t mark = pos;
    try {
      Node lhs = parse_expr();
      Cmp cmp;
      if (at_symbol("<")) {
        cmp = Cmp::Lt;
      } else if (at_symbol("<=")) {
        cmp = Cmp::Le;
      } else if (at_symbol("=")) {
        cmp = Cmp::Eq;
      } else if (at_symbol(">=")) {
        cmp = Cmp::Ge;
      } else if (at_symbol(">")) {
        cmp = Cmp::Gt;
      } else {
        fail("a comparison operator");
      }
      ++pos;
      Node n;
      n.kind = Node::Kind::CmpOp;
      n.cmp = cmp;
      n.kids.push_back(std::move(lhs));
      n.kids.push_back(parse_expr());
      return n;
    } catch (const ParseError&) {
      pos = mark;
      if (!at_symbol("(")) throw;
      ++pos;
      Node inner = parse_cond();
      expect_symbol(")");
      return inner;
    }
  }
};

}  // namespace detail

inline FcifDef parse(const std::string& source) {
  detail::Parser p{detail::lex(source)};
  FcifDef def = p.parse_def();
  if (p.peek().type != detail::Token::Type::End) p.fail("end of input");
  return def;
}

// A file may hold several definitions back to back.
inline std::vector<FcifDef> parse_defs(const std::string& source) {
  detail::Parser p{detail::lex(source)};
  std::vector<FcifDef> defs;
  while (p.peek().type != detail::Token::Type::End) defs.push_back(p.parse_def());
  if (defs.empty()) {
    throw ParseError("no rule definition found", 1, 1);
  }
  return defs;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

struct Env {
  const Profile* p;
  int target;  // the agent i being scored
  Value theta;
};

inline int eval_index(const Node& idx, const Env& env) {
  if (idx.kind == Node::Kind::TargetVar) return env.target;
  long long v = idx.number.num();  // integer literal, denominator 1
  if (idx.number.den() != 1 || v < 1 || v > env.p->n()) {
    throw AgentIndexOutOfRange("agent index " + idx.number.str() + " outside 1.." +
                               std::to_string(env.p->n()));
  }
  return static_cast<int>(v);
}

inline Value eval_expr(const Node& n, const Env& env);

inline bool eval_cond(const Node& n, const Env& env) {
  switch (n.kind) {
    case Node::Kind::And:
      return eval_cond(n.kids[0], env) && eval_cond(n.kids[1], env);
    case Node::Kind::Or:
      return eval_cond(n.kids[0], env) || eval_cond(n.kids[1], env);
    case Node::Kind::Not:
      return !eval_cond(n.kids[0], env);
    case Node::Kind::CmpOp: {
      Value a = eval_expr(n.kids[0], env);
      Value b = eval_expr(n.kids[1], env);
      switch (n.cmp) {
        case Cmp::Lt: return a < b;
        case Cmp::Le: return a <= b;
        case Cmp::Eq: return a == b;
        case Cmp::Ge: return a >= b;
        case Cmp::Gt: return a > b;
      }
      return false;
    }
    default:
      throw Error("malformed condition node");
  }
}

inline Value eval_expr(const Node& n, const Env& env) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.number;
    case Node::Kind::SocietySize:
      return Value(env.p->n());
    case Node::Kind::Theta:
      return env.theta;
    case Node::Kind::TargetVar:
      return Value(env.target);
    case Node::Kind::Self:
      return env.p->at(env.target, env.target);
    case Node::Kind::Cell: {
      int a = eval_index(n.kids[0], env);
      int t = eval_index(n.kids[1], env);
      return env.p->at(a, t);
    }
    case Node::Kind::ColAgg: {
      int t = eval_index(n.kids[0], env);
      ColumnStats s = column_stats_of(*env.p, t, env.theta);
      switch (n.agg) {
        case Agg::Min: return s.min;
        case Agg::Max: return s.max;
        case Agg::CountHigh: return Value(s.count_high);
        case Agg::CountLow: return Value(s.count_low);
        case Agg::Sum:
        case Agg::Mean: {
          Value sum = env.p->at(1, t);
          for (int j = 2; j <= env.p->n(); ++j) sum = sum + env.p->at(j, t);
          return n.agg == Agg::Sum ? sum : sum / Value(env.p->n());
        }
      }
      return Value(0);
    }
    case Node::Kind::Arith: {
      Value a = eval_expr(n.kids[0], env);
      Value b = eval_expr(n.kids[1], env);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default:
          if (b.is_zero()) throw DivisionByZero("division by zero in rule body");
          return a / b;
      }
    }
    case Node::Kind::If:
      return eval_cond(n.kids[0], env) ? eval_expr(n.kids[1], env) : eval_expr(n.kids[2], env);
    default:
      throw Error("condition used as a value");
  }
}

}  // namespace detail

// Exact evaluation of f(i) for one target agent. The final degree must land
// in [0,1]; intermediates are unconstrained.
inline Value evaluate_entry(const FcifDef& def, const Profile& p, int i, const Value& theta) {
  detail::Env env{&p, i, theta};
  Value v = detail::eval_expr(def.body, env);
  if (!v.in_unit_interval()) {
    throw ResultOutOfUnitInterval("rule '" + def.name + "' produced " + v.str() + " for agent " +
                                  std::to_string(i));
  }
  return v;
}

inline MembershipFunction evaluate(const FcifDef& def, const Profile& p,
                                   const Value& theta = kDefaultTheta) {
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(evaluate_entry(def, p, i, theta));
  return MembershipFunction(std::move(out));
}

// ---------------------------------------------------------------------------
// Cell dependency analysis: which matrix cells can influence f(i)?

using CellSet = std::set<std::pair<int, int>>;

namespace detail {

inline int resolve_index(const Node& idx, int n, int target) {
  if (idx.kind == Node::Kind::TargetVar) return target;
  long long v = idx.number.num();
  if (idx.number.den() != 1 || v < 1 || v > n) {
    throw AgentIndexOutOfRange("agent index " + idx.number.str() + " outside 1.." +
                               std::to_string(n));
  }
  return static_cast<int>(v);
}

// A subtree is decidable without the profile when it reads neither opinions
// nor theta (theta is unknown here, so conditions on it stay conservative).
inline bool opinion_free(const Node& node) {
  switch (node.kind) {
    case Node::Kind::Cell:
    case Node::Kind::Self:
    case Node::Kind::ColAgg:
    case Node::Kind::Theta:
      return false;
    default:
      for (const Node& kid : node.kids) {
        if (!opinion_free(kid)) return false;
      }
      return true;
  }
}

inline void collect_deps(const Node& node, int n, int target, CellSet& out) {
  switch (node.kind) {
    case Node::Kind::Cell:
      out.emplace(resolve_index(node.kids[0], n, target), resolve_index(node.kids[1], n, target));
      return;
    case Node::Kind::Self:
      out.emplace(target, target);
      return;
    case Node::Kind::ColAgg: {
      int t = resolve_index(node.kids[0], n, target);
      for (int j = 1; j <= n; ++j) out.emplace(j, t);
      return;
    }
    case Node::Kind::If:
      // A branch guarded by a condition on i/n alone cannot influence f(i)
      // when the guard settles the other way, so only the taken branch counts.
      if (opinion_free(node.kids[0])) {
        Profile dummy(n);  // never read: the condition touches no opinions
        Env env{&dummy, target, kDefaultTheta};
        collect_deps(eval_cond(node.kids[0], env) ? node.kids[1] : node.kids[2], n, target, out);
        return;
      }
      for (const Node& kid : node.kids) collect_deps(kid, n, target, out);
      return;
    default:
      for (const Node& kid : node.kids) collect_deps(kid, n, target, out);
      return;
  }
}

}  // namespace detail

inline CellSet dependencies(const FcifDef& def, int n, int i) {
  CellSet out;
  detail::collect_deps(def.body, n, i, out);
  return out;
}

// Sound for Independence: when true, f(i) reads only column i, so the axiom
// holds structurally. False proves nothing; fall back to search.
inline bool is_structurally_independent(const FcifDef& def, int n) {
  for (int i = 1; i <= n; ++i) {
    for (const auto& [agent, target] : dependencies(def, n, i)) {
      (void)agent;
      if (target != i) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pretty printer (canonical text; parse(format(def)) re-reads the same tree)

namespace detail {

inline void print_expr(const Node& n, std::string& out);

inline void print_cond(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::And:
      print_cond(n.kids[0], out);
      out += " and ";
      print_cond(n.kids[1], out);
      return;
    case Node::Kind::Or:
      out += "(";
      print_cond(n.kids[0], out);
      out += " or ";
      print_cond(n.kids[1], out);
      out += ")";
      return;
    case Node::Kind::Not:
      out += "not (";
      print_cond(n.kids[0], out);
      out += ")";
      return;
    case Node::Kind::CmpOp: {
      print_expr(n.kids[0], out);
      switch (n.cmp) {
        case Cmp::Lt: out += " < "; break;
        case Cmp::Le: out += " <= "; break;
        case Cmp::Eq: out += " = "; break;
        case Cmp::Ge: out += " >= "; break;
        case Cmp::Gt: out += " > "; break;
      }
      print_expr(n.kids[1], out);
      return;
    }
    default:
      throw Error("malformed condition node");
  }
}

inline void print_expr(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Number:
      out += n.number.str();
      return;
    case Node::Kind::SocietySize:
      out += "n";
      return;
    case Node::Kind::Theta:
      out += "theta";
      return;
    case Node::Kind::TargetVar:
      out += "i";
      return;
    case Node::Kind::Self:
      out += "self";
      return;
    case Node::Kind::Cell:
      out += "p(";
      print_expr(n.kids[0], out);
      out += ",";
      print_expr(n.kids[1], out);
      out += ")";
      return;
    case Node::Kind::ColAgg:
      switch (n.agg) {
        case Agg::Min: out += "min"; break;
        case Agg::Max: out += "max"; break;
        case Agg::Mean: out += "mean"; break;
        case Agg::Sum: out += "sum"; break;
        case Agg::CountHigh: out += "count_high"; break;
        case Agg::CountLow: out += "count_low"; break;
      }
      out += "(col(";
      print_expr(n.kids[0], out);
      out += "))";
      return;
    case Node::Kind::Arith:
      out += "(";
      print_expr(n.kids[0], out);
      out += " ";
      out += n.op;
      out += " ";
      print_expr(n.kids[1], out);
      out += ")";
      return;
    case Node::Kind::If:
      // parenthesized so the printed form stays valid in operand position
      out += "(if ";
      print_cond(n.kids[0], out);
      out += " then ";
      print_expr(n.kids[1], out);
      out += " else ";
      print_expr(n.kids[2], out);
      out += ")";
      return;
    default:
      throw Error("condition used as a value");
  }
}

}  // namespace detail

inline std::string format(const FcifDef& def) {
  std::string out = "fcif " + def.name + " { f(i) = ";
  detail::print_expr(def.body, out);
  out += " }";
  return out;
}

// Wraps a parsed definition as a first-class rule.
inline Fcif to_fcif(const FcifDef& def, const Value& theta = kDefaultTheta) {
  FcifDef copy = def;
  return make_columnwise("dsl-name:" + def.name, [copy, theta](const Profile& p, int i) {
    return evaluate_entry(copy, p, i, theta);
  });
}

}  // namespace fcif::dsl
