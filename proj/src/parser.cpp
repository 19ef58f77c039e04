#include "tlsf/parser.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace tlsf {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Mul: return 2;
    case BinaryOp::Div:
    case BinaryOp::Mod: return 3;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 4;
    case BinaryOp::SetMinus: return 6;
    case BinaryOp::Cap: return 7;
    case BinaryOp::Cup: return 8;
    case BinaryOp::Eq:
    case BinaryOp::Neq:
    case BinaryOp::Lt:
    case BinaryOp::Leq:
    case BinaryOp::Gt:
    case BinaryOp::Geq: return 9;
    case BinaryOp::In: return 10;
    case BinaryOp::And: return 12;
    case BinaryOp::Or: return 13;
    case BinaryOp::Implies:
    case BinaryOp::Equiv: return 14;
    case BinaryOp::WeakUntil: return 15;
    case BinaryOp::Until: return 16;
    case BinaryOp::Release: return 17;
    case BinaryOp::PatternMatch: return 18;
    case BinaryOp::Guard: return 19;
  }
  return 0;
}

Assoc associativity(BinaryOp op) {
  switch (op) {
    case BinaryOp::Div:
    case BinaryOp::Mod:
    case BinaryOp::SetMinus:
    case BinaryOp::Implies:
    case BinaryOp::Equiv:
    case BinaryOp::WeakUntil:
    case BinaryOp::Until: return Assoc::Right;
    default: return Assoc::Left;
  }
}

int precedence(UnaryOp op) {
  switch (op) {
    case UnaryOp::SetSize:
    case UnaryOp::SetMin:
    case UnaryOp::SetMax:
    case UnaryOp::SizeOf: return 1;
    case UnaryOp::Neg:
    case UnaryOp::Next:
    case UnaryOp::Finally:
    case UnaryOp::Globally: return 11;
  }
  return 0;
}

int precedence(BigOpKind op) {
  switch (op) {
    case BigOpKind::Sum:
    case BigOpKind::Prod: return 1;
    case BigOpKind::Cup:
    case BigOpKind::Cap: return 5;
    case BigOpKind::And:
    case BigOpKind::Or: return 11;
  }
  return 0;
}

namespace {

std::optional<BinaryOp> binary_op(Tok t) {
  switch (t) {
    case Tok::Star: return BinaryOp::Mul;
    case Tok::Slash: return BinaryOp::Div;
    case Tok::Percent: return BinaryOp::Mod;
    case Tok::Plus: return BinaryOp::Add;
    case Tok::Minus: return BinaryOp::Sub;
    case Tok::SetMinus: return BinaryOp::SetMinus;
    case Tok::Cap: return BinaryOp::Cap;
    case Tok::Cup: return BinaryOp::Cup;
    case Tok::Eq: return BinaryOp::Eq;
    case Tok::Neq: return BinaryOp::Neq;
    case Tok::Lt: return BinaryOp::Lt;
    case Tok::Leq: return BinaryOp::Leq;
    case Tok::Gt: return BinaryOp::Gt;
    case Tok::Geq: return BinaryOp::Geq;
    case Tok::In: return BinaryOp::In;
    case Tok::And: return BinaryOp::And;
    case Tok::Or: return BinaryOp::Or;
    case Tok::Implies: return BinaryOp::Implies;
    case Tok::Equiv: return BinaryOp::Equiv;
    case Tok::WeakUntil: return BinaryOp::WeakUntil;
    case Tok::Until: return BinaryOp::Until;
    case Tok::Release: return BinaryOp::Release;
    case Tok::Tilde: return BinaryOp::PatternMatch;
    case Tok::Colon: return BinaryOp::Guard;
    default: return std::nullopt;
  }
}

std::optional<BigOpKind> big_op(Tok t) {
  switch (t) {
    case Tok::Plus:
    case Tok::Sum: return BigOpKind::Sum;
    case Tok::Star:
    case Tok::Prod: return BigOpKind::Prod;
    case Tok::Cup: return BigOpKind::Cup;
    case Tok::Cap: return BigOpKind::Cap;
    case Tok::And:
    case Tok::Forall: return BigOpKind::And;
    case Tok::Or:
    case Tok::Exists: return BigOpKind::Or;
    default: return std::nullopt;
  }
}

std::string found_text(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Identifier: return "identifier '" + t.text + "'";
    case Tok::Natural: return "number " + t.text;
    case Tok::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, bool basic) : toks_(tokens), basic_(basic) {
    if (toks_.empty() || !toks_.back().is(Tok::End)) {
      throw Error(ErrorKind::Internal, {}, "token stream must end with an end token");
    }
  }

  Spec spec();
  ExprPtr whole_expression(ExprMode mode);
  Formula whole_basic_formula() {
    Formula f = basic_formula();
    expect(Tok::End);
    return f;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t i_ = 0;
  bool basic_;
  int paren_row_ = kTopRow;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }
  bool accept(Tok k) {
    if (!peek().is(k)) return false;
    next();
    return true;
  }
  const Token& expect(Tok k) {
    if (!peek().is(k)) fail(describe(k));
    return next();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().pos, expected, found_text(peek()));
  }
  [[noreturn]] void fail_at(SourcePos pos, const std::string& message) const {
    throw ParseError(pos, message);
  }
  [[noreturn]] void not_basic(SourcePos pos, const std::string& what) const {
    throw ParseError(pos, "not in basic format: " + what);
  }

  Ident identifier() {
    const Token& t = expect(Tok::Identifier);
    return Ident{t.text, t.pos};
  }

  // ---- expressions
  ExprPtr climb(int max_row);
  ExprPtr operand();
  ExprPtr primary();
  ExprPtr set_expression(SourcePos pos);
  ExprPtr big_operator(BigOpKind kind, SourcePos pos);
  node::Binder binder();
  ExprPtr natural(const Token& t);

  // ---- function bodies
  std::vector<Case> function_cases();
  Case one_case();
  bool definition_starts_at(std::size_t k) const;

  // ---- sections
  Info info_section();
  void global_section(Spec& out);
  void main_section(Spec& out);
  std::vector<SignalDecl> signal_block();
  std::vector<ExprPtr> formula_block();
  Definition definition();

  // ---- basic format
  Formula basic_formula();
};

// ---------------------------------------------------------------- validation

bool is_pattern_shape(const Expr& e) {
  if (e.is<node::Id>() || e.is<node::Wildcard>() || e.is<node::BoolConst>()) return true;
  if (const auto* u = e.as<node::Unary>()) {
    return is_formula_unary(u->op) && is_pattern_shape(*u->arg);
  }
  if (const auto* b = e.as<node::Binary>()) {
    return is_formula_binary(b->op) && is_pattern_shape(*b->lhs) && is_pattern_shape(*b->rhs);
  }
  return false;
}

// Rejects guards, pattern matches and wildcards anywhere inside `e`.
void check_plain(const Expr& e) {
  auto sub = [](const ExprPtr& p) {
    if (p) check_plain(*p);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Wildcard>) {
          throw ParseError(e.pos, "wildcard '_' is only allowed inside a pattern");
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          if (n.op == BinaryOp::Guard) {
            throw ParseError(e.pos, "guard ':' is only allowed at the top of a function case");
          }
          if (n.op == BinaryOp::PatternMatch) {
            throw ParseError(e.pos, "pattern match '~' is only allowed as a function guard");
          }
          sub(n.lhs);
          sub(n.rhs);
        } else if constexpr (std::is_same_v<T, node::BusIndex>) {
          sub(n.index);
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          sub(n.arg);
        } else if constexpr (std::is_same_v<T, node::SetLiteral>) {
          for (const auto& el : n.elements) sub(el);
        } else if constexpr (std::is_same_v<T, node::SetRange>) {
          sub(n.first);
          sub(n.second);
          sub(n.last);
        } else if constexpr (std::is_same_v<T, node::BigOp>) {
          for (const auto& b : n.binders) {
            sub(b.set);
            sub(b.lower);
            sub(b.upper);
          }
          sub(n.body);
        } else if constexpr (std::is_same_v<T, node::FnApp>) {
          for (const auto& a : n.args) sub(a);
        } else if constexpr (std::is_same_v<T, node::NextN>) {
          sub(n.count);
          sub(n.body);
        } else if constexpr (std::is_same_v<T, node::FinallyRange> ||
                             std::is_same_v<T, node::GloballyRange>) {
          sub(n.from);
          sub(n.to);
          sub(n.body);
        }
      },
      e.node);
}

// A case expression is `e`, `g : e` or `s ~ p : e`.
void check_case(const Expr& e) {
  const auto* guard = e.as<node::Binary>();
  if (!guard || guard->op != BinaryOp::Guard) {
    check_plain(e);
    return;
  }
  check_plain(*guard->rhs);
  const auto* match = guard->lhs->as<node::Binary>();
  if (match && match->op == BinaryOp::PatternMatch) {
    check_plain(*match->lhs);
    if (!is_pattern_shape(*match->rhs)) {
      throw ParseError(match->rhs->pos,
                       "a pattern may only contain identifiers, '_', true, false and "
                       "boolean or temporal connectives");
    }
    return;
  }
  check_plain(*guard->lhs);
}

// ---------------------------------------------------------------- expressions

ExprPtr Parser::climb(int max_row) {
  ExprPtr lhs = operand();
  while (true) {
    auto op = binary_op(peek().kind);
    if (!op) break;
    int row = precedence(*op);
    if (row > max_row) break;
    SourcePos pos = next().pos;
    ExprPtr rhs = climb(associativity(*op) == Assoc::Left ? row - 1 : row);
    lhs = make_binary(*op, std::move(lhs), std::move(rhs), pos);
  }
  return lhs;
}

ExprPtr Parser::operand() {
  const Token& t = peek();
  SourcePos pos = t.pos;

  if (peek(1).is(Tok::LBracket)) {
    if (auto kind = big_op(t.kind)) {
      next();
      return big_operator(*kind, pos);
    }
  }
  switch (t.kind) {
    case Tok::Sum:
    case Tok::Prod:
    case Tok::Forall:
    case Tok::Exists:
      next();
      fail("'[' after " + found_text(t));
    case Tok::Not:
      next();
      return make_unary(UnaryOp::Neg, climb(precedence(UnaryOp::Neg) - 1), pos);
    case Tok::Next: {
      next();
      if (accept(Tok::LBracket)) {
        ExprPtr count = climb(kTopRow);
        expect(Tok::RBracket);
        ExprPtr body = climb(precedence(UnaryOp::Next) - 1);
        return make_expr(node::NextN{std::move(count), std::move(body)}, pos);
      }
      return make_unary(UnaryOp::Next, climb(precedence(UnaryOp::Next) - 1), pos);
    }
    case Tok::Finally:
    case Tok::Globally: {
      next();
      UnaryOp op = t.is(Tok::Finally) ? UnaryOp::Finally : UnaryOp::Globally;
      if (accept(Tok::LBracket)) {
        ExprPtr from = climb(kTopRow);
        expect(Tok::Colon);
        ExprPtr to = climb(kTopRow);
        expect(Tok::RBracket);
        ExprPtr body = climb(precedence(op) - 1);
        if (op == UnaryOp::Finally) {
          return make_expr(node::FinallyRange{std::move(from), std::move(to), std::move(body)}, pos);
        }
        return make_expr(node::GloballyRange{std::move(from), std::move(to), std::move(body)}, pos);
      }
      return make_unary(op, climb(precedence(op) - 1), pos);
    }
    case Tok::Size:
    case Tok::Min:
    case Tok::Max:
    case Tok::SizeOf: {
      next();
      UnaryOp op = t.is(Tok::Size)  ? UnaryOp::SetSize
                   : t.is(Tok::Min) ? UnaryOp::SetMin
                   : t.is(Tok::Max) ? UnaryOp::SetMax
                                    : UnaryOp::SizeOf;
      return make_unary(op, climb(precedence(op) - 1), pos);
    }
    default:
      return primary();
  }
}

ExprPtr Parser::natural(const Token& t) {
  Nat value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw Error(ErrorKind::Lex, t.pos, "number " + t.text + " does not fit in 64 bits");
  }
  return make_nat(value, t.pos);
}

ExprPtr Parser::primary() {
  const Token& t = peek();
  SourcePos pos = t.pos;
  switch (t.kind) {
    case Tok::Natural:
      next();
      return natural(t);
    case Tok::True:
    case Tok::False:
      next();
      return make_bool(t.is(Tok::True), pos);
    case Tok::Wildcard:
      next();
      return make_expr(node::Wildcard{}, pos);
    case Tok::Identifier: {
      Ident name{t.text, pos};
      next();
      if (accept(Tok::LParen)) {
        std::vector<ExprPtr> args;
        if (!peek().is(Tok::RParen)) {
          do {
            args.push_back(climb(kTopRow));
          } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        return make_expr(node::FnApp{std::move(name), std::move(args)}, pos);
      }
      if (accept(Tok::LBracket)) {
        ExprPtr index = climb(kTopRow);
        expect(Tok::RBracket);
        return make_expr(node::BusIndex{std::move(name), std::move(index)}, pos);
      }
      return make_expr(node::Id{std::move(name)}, pos);
    }
    case Tok::LParen: {
      next();
      ExprPtr inner = climb(paren_row_);
      expect(Tok::RParen);
      return inner;
    }
    case Tok::LBrace:
      next();
      return set_expression(pos);
    case Tok::Pipe: {
      next();
      ExprPtr inner = climb(kTopRow);
      expect(Tok::Pipe);
      return make_unary(UnaryOp::SetSize, std::move(inner), pos);
    }
    default:
      fail("expression");
  }
}

ExprPtr Parser::set_expression(SourcePos pos) {
  std::vector<ExprPtr> elements;
  if (accept(Tok::RBrace)) return make_expr(node::SetLiteral{}, pos);
  elements.push_back(climb(kTopRow));
  if (peek().is(Tok::DotDot)) fail("',' (a range needs the form {x, y .. z})");
  if (accept(Tok::Comma)) {
    elements.push_back(climb(kTopRow));
    if (accept(Tok::DotDot)) {
      ExprPtr last = climb(kTopRow);
      expect(Tok::RBrace);
      return make_expr(node::SetRange{elements[0], elements[1], std::move(last)}, pos);
    }
    while (accept(Tok::Comma)) elements.push_back(climb(kTopRow));
  }
  expect(Tok::RBrace);
  return make_expr(node::SetLiteral{std::move(elements)}, pos);
}

node::Binder Parser::binder() {
  node::Binder b;
  if (peek().is(Tok::Identifier) && peek(1).is(Tok::In)) {
    b.name = identifier();
    next();
    b.set = climb(kTopRow);
    return b;
  }
  // range form: lower (<|<=) id (<|<=) upper; operands stop above comparisons
  const int operand_row = precedence(BinaryOp::Lt) - 1;
  b.lower = climb(operand_row);
  if (!peek().is(Tok::Lt) && !peek().is(Tok::Leq)) fail("'IN', '<' or '<=' in binder");
  b.lower_inclusive = next().is(Tok::Leq);
  b.name = identifier();
  if (!peek().is(Tok::Lt) && !peek().is(Tok::Leq)) fail("'<' or '<=' in binder");
  b.upper_inclusive = next().is(Tok::Leq);
  b.upper = climb(operand_row);
  return b;
}

ExprPtr Parser::big_operator(BigOpKind kind, SourcePos pos) {
  expect(Tok::LBracket);
  std::vector<node::Binder> binders;
  std::set<std::string> names;
  do {
    node::Binder b = binder();
    if (!names.insert(b.name.text).second) {
      fail_at(b.name.pos, "identifier '" + b.name.text + "' is bound twice in one binder list");
    }
    binders.push_back(std::move(b));
  } while (accept(Tok::Comma));
  expect(Tok::RBracket);
  ExprPtr body = climb(precedence(kind) - 1);
  return make_expr(node::BigOp{kind, std::move(binders), std::move(body)}, pos);
}

ExprPtr Parser::whole_expression(ExprMode mode) {
  paren_row_ = mode == ExprMode::Case || mode == ExprMode::Unchecked ? kGuardRow : kTopRow;
  ExprPtr e = climb(paren_row_);
  expect(Tok::End);
  switch (mode) {
    case ExprMode::Plain: check_plain(*e); break;
    case ExprMode::Case: check_case(*e); break;
    case ExprMode::Pattern:
      if (!is_pattern_shape(*e)) {
        throw ParseError(e->pos, "a pattern may only contain identifiers, '_', true, false and "
                                 "boolean or temporal connectives");
      }
      break;
    case ExprMode::Unchecked: break;
  }
  return e;
}

// ---------------------------------------------------------------- functions

bool Parser::definition_starts_at(std::size_t k) const {
  if (!peek(k).is(Tok::Identifier)) return false;
  if (peek(k + 1).is(Tok::Assign)) return true;
  if (!peek(k + 1).is(Tok::LParen)) return false;
  std::size_t j = k + 2;
  if (peek(j).is(Tok::RParen)) return peek(j + 1).is(Tok::Assign);
  while (true) {
    if (!peek(j).is(Tok::Identifier)) return false;
    ++j;
    if (peek(j).is(Tok::Comma)) {
      ++j;
      continue;
    }
    return peek(j).is(Tok::RParen) && peek(j + 1).is(Tok::Assign);
  }
}

Case Parser::one_case() {
  if (peek().is(Tok::Otherwise)) {
    next();
    expect(Tok::Colon);
    ExprPtr body = climb(precedence(BinaryOp::Guard) - 1);
    check_plain(*body);
    return Case{GuardKind::Otherwise, nullptr, std::move(body)};
  }
  ExprPtr e = climb(kGuardRow);
  check_case(*e);
  const auto* guard = e->as<node::Binary>();
  if (guard && guard->op == BinaryOp::Guard) {
    return Case{GuardKind::Expr, guard->lhs, guard->rhs};
  }
  return Case{GuardKind::None, nullptr, std::move(e)};
}

// Cases follow each other directly, or separated by ';' after a guarded case.
std::vector<Case> Parser::function_cases() {
  paren_row_ = kGuardRow;
  std::vector<Case> cases;
  bool seen_otherwise = false;
  while (true) {
    SourcePos pos = peek().pos;
    Case c = one_case();
    if (c.guard_kind == GuardKind::Otherwise) {
      if (seen_otherwise) fail_at(pos, "more than one 'otherwise' case");
      seen_otherwise = true;
    }
    bool guarded = c.guard_kind != GuardKind::None;
    cases.push_back(std::move(c));
    const Token& t = peek();
    if (t.is(Tok::Semicolon)) {
      bool more = guarded && !peek(1).is(Tok::RBrace) && !peek(1).is(Tok::End) &&
                  !definition_starts_at(1);
      if (!more) break;
      next();
      continue;
    }
    if (t.is(Tok::RBrace) || t.is(Tok::End)) break;
  }
  paren_row_ = kTopRow;
  return cases;
}

Definition Parser::definition() {
  Definition d;
  d.name = identifier();
  if (accept(Tok::LParen)) {
    d.is_function = true;
    std::set<std::string> seen;
    if (!peek().is(Tok::RParen)) {
      do {
        Ident p = identifier();
        if (!seen.insert(p.text).second) {
          fail_at(p.pos, "parameter '" + p.text + "' appears twice");
        }
        d.params.push_back(std::move(p));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
  }
  expect(Tok::Assign);
  if (d.is_function) {
    d.cases = function_cases();
  } else {
    ExprPtr body = climb(kTopRow);
    check_plain(*body);
    d.cases.push_back(Case{GuardKind::None, nullptr, std::move(body)});
  }
  expect(Tok::Semicolon);
  return d;
}

// ---------------------------------------------------------------- sections

Info Parser::info_section() {
  expect(Tok::KwInfo);
  expect(Tok::LBrace);
  Info info;
  bool has_title = false, has_desc = false, has_sem = false, has_target = false, has_tags = false;
  auto once = [&](bool& flag, const Token& t) {
    if (flag) fail_at(t.pos, "duplicate " + t.text + " field");
    flag = true;
  };
  auto model = [&](const char* field) -> Target {
    const Token& t = peek();
    if (t.is(Tok::Identifier) && t.text == "Mealy") {
      next();
      return Target::Mealy;
    }
    if (t.is(Tok::Identifier) && t.text == "Moore") {
      next();
      return Target::Moore;
    }
    fail(std::string("Mealy or Moore as ") + field);
  };
  while (!peek().is(Tok::RBrace)) {
    const Token& field = peek();
    switch (field.kind) {
      case Tok::KwTitle:
      case Tok::KwDescription:
      case Tok::KwSemantics:
      case Tok::KwTarget:
      case Tok::KwTags: next(); break;
      default: fail("INFO field (TITLE, DESCRIPTION, SEMANTICS, TARGET or TAGS)");
    }
    switch (field.kind) {
      case Tok::KwTitle:
        once(has_title, field);
        expect(Tok::Colon);
        info.title = expect(Tok::String).text;
        break;
      case Tok::KwDescription:
        once(has_desc, field);
        expect(Tok::Colon);
        info.description = expect(Tok::String).text;
        break;
      case Tok::KwSemantics: {
        once(has_sem, field);
        expect(Tok::Colon);
        Target m = model("SEMANTICS");
        bool strict = false;
        if (accept(Tok::Comma)) {
          if (!(peek().is(Tok::Identifier) && peek().text == "Strict")) fail("'Strict'");
          next();
          strict = true;
        }
        info.semantics = with_model(strict ? Semantics::MealyStrict : Semantics::Mealy, m);
        break;
      }
      case Tok::KwTarget:
        once(has_target, field);
        expect(Tok::Colon);
        info.target = model("TARGET");
        break;
      case Tok::KwTags:
        once(has_tags, field);
        expect(Tok::Colon);
        if (peek().is(Tok::String) || peek().is(Tok::Identifier)) {
          do {
            if (!peek().is(Tok::String) && !peek().is(Tok::Identifier)) fail("tag");
            info.tags.push_back(next().text);
          } while (accept(Tok::Comma));
        }
        break;
      default:
        break;
    }
  }
  SourcePos close = peek().pos;
  next();
  auto require = [&](bool flag, const char* name) {
    if (!flag) fail_at(close, std::string("INFO section is missing the ") + name + " field");
  };
  require(has_title, "TITLE");
  require(has_desc, "DESCRIPTION");
  require(has_sem, "SEMANTICS");
  require(has_target, "TARGET");
  return info;
}

void Parser::global_section(Spec& out) {
  SourcePos pos = expect(Tok::KwGlobal).pos;
  if (basic_) not_basic(pos, "GLOBAL section");
  expect(Tok::LBrace);
  bool has_params = false, has_defs = false;
  while (!accept(Tok::RBrace)) {
    const Token& t = peek();
    if (t.is(Tok::KwParameters)) {
      if (has_params) fail_at(t.pos, "duplicate PARAMETERS subsection");
      has_params = true;
      next();
      expect(Tok::LBrace);
      while (!accept(Tok::RBrace)) {
        Parameter p;
        p.name = identifier();
        expect(Tok::Assign);
        p.value = climb(kTopRow);
        check_plain(*p.value);
        expect(Tok::Semicolon);
        out.parameters.push_back(std::move(p));
      }
    } else if (t.is(Tok::KwDefinitions)) {
      if (has_defs) fail_at(t.pos, "duplicate DEFINITIONS subsection");
      has_defs = true;
      next();
      expect(Tok::LBrace);
      while (!accept(Tok::RBrace)) out.definitions.push_back(definition());
    } else {
      fail("PARAMETERS, DEFINITIONS or '}'");
    }
  }
}

std::vector<SignalDecl> Parser::signal_block() {
  expect(Tok::LBrace);
  std::vector<SignalDecl> out;
  while (!accept(Tok::RBrace)) {
    SignalDecl d;
    d.name = identifier();
    if (peek().is(Tok::LBracket)) {
      if (basic_) not_basic(peek().pos, "bus declaration");
      next();
      d.width = climb(kTopRow);
      check_plain(*d.width);
      expect(Tok::RBracket);
    }
    expect(Tok::Semicolon);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<ExprPtr> Parser::formula_block() {
  expect(Tok::LBrace);
  std::vector<ExprPtr> out;
  while (!accept(Tok::RBrace)) {
    ExprPtr e;
    if (basic_) {
      e = basic_formula();
    } else {
      e = climb(kTopRow);
      check_plain(*e);
    }
    expect(Tok::Semicolon);
    out.push_back(std::move(e));
  }
  return out;
}

void Parser::main_section(Spec& out) {
  expect(Tok::KwMain);
  SourcePos open = expect(Tok::LBrace).pos;
  bool seen[5] = {false, false, false, false, false};
  while (!peek().is(Tok::RBrace)) {
    const Token& t = peek();
    int slot = -1;
    switch (t.kind) {
      case Tok::KwInputs: slot = 0; break;
      case Tok::KwOutputs: slot = 1; break;
      case Tok::KwAssumptions: slot = 2; break;
      case Tok::KwInvariants: slot = 3; break;
      case Tok::KwGuarantees: slot = 4; break;
      default: fail("INPUTS, OUTPUTS, ASSUMPTIONS, INVARIANTS, GUARANTEES or '}'");
    }
    if (seen[slot]) fail_at(t.pos, "duplicate " + t.text + " subsection");
    seen[slot] = true;
    next();
    switch (slot) {
      case 0: out.inputs = signal_block(); break;
      case 1: out.outputs = signal_block(); break;
      case 2: out.assumptions = formula_block(); break;
      case 3: out.invariants = formula_block(); break;
      default: out.guarantees = formula_block(); break;
    }
  }
  next();
  if (!seen[0]) fail_at(open, "MAIN section is missing the INPUTS subsection");
  if (!seen[1]) fail_at(open, "MAIN section is missing the OUTPUTS subsection");
}

Spec Parser::spec() {
  Spec out;
  bool has_info = false, has_global = false, has_main = false;
  while (!peek().is(Tok::End)) {
    const Token& t = peek();
    if (t.is(Tok::KwInfo)) {
      if (has_info) fail_at(t.pos, "duplicate INFO section");
      has_info = true;
      out.info = info_section();
    } else if (t.is(Tok::KwGlobal)) {
      if (has_global) fail_at(t.pos, "duplicate GLOBAL section");
      has_global = true;
      global_section(out);
    } else if (t.is(Tok::KwMain)) {
      if (has_main) fail_at(t.pos, "duplicate MAIN section");
      has_main = true;
      main_section(out);
    } else {
      fail(basic_ ? "INFO or MAIN section" : "INFO, GLOBAL or MAIN section");
    }
  }
  if (!has_info) fail_at(peek().pos, "missing INFO section");
  if (!has_main) fail_at(peek().pos, "missing MAIN section");
  return out;
}

// ---------------------------------------------------------------- basic format

Formula Parser::basic_formula() {
  auto unparenthesized = [&](const char* expected) {
    fail_at(peek().pos, std::string("not fully parenthesized: expected ") + expected +
                            ", found " + found_text(peek()));
  };
  if (!peek().is(Tok::LParen)) unparenthesized("'('");
  next();
  const Token& t = peek();
  SourcePos pos = t.pos;
  Formula inner;
  switch (t.kind) {
    case Tok::True:
    case Tok::False:
      next();
      inner = make_bool(t.is(Tok::True), pos);
      break;
    case Tok::Identifier:
      next();
      if (peek().is(Tok::LParen)) not_basic(pos, "function application");
      if (peek().is(Tok::LBracket)) not_basic(pos, "bus index");
      inner = make_id(t.text, pos);
      break;
    case Tok::Not:
      next();
      inner = make_unary(UnaryOp::Neg, basic_formula(), pos);
      break;
    case Tok::Next:
    case Tok::Finally:
    case Tok::Globally: {
      next();
      if (peek().is(Tok::LBracket)) not_basic(peek().pos, "bounded temporal operator");
      UnaryOp op = t.is(Tok::Next)      ? UnaryOp::Next
                   : t.is(Tok::Finally) ? UnaryOp::Finally
                                        : UnaryOp::Globally;
      inner = make_unary(op, basic_formula(), pos);
      break;
    }
    case Tok::LParen: {
      Formula lhs = basic_formula();
      const Token& op_tok = peek();
      auto op = binary_op(op_tok.kind);
      if (op_tok.is(Tok::RParen)) {
        fail_at(op_tok.pos, "not in basic format: redundant parentheses");
      }
      if (!op) unparenthesized("binary operator");
      if (!is_formula_binary(*op)) {
        not_basic(op_tok.pos, "operator " + op_tok.text);
      }
      next();
      Formula rhs = basic_formula();
      inner = make_binary(*op, std::move(lhs), std::move(rhs), op_tok.pos);
      break;
    }
    case Tok::Natural:
    case Tok::LBrace:
    case Tok::Pipe:
    case Tok::Size:
    case Tok::Min:
    case Tok::Max:
    case Tok::SizeOf:
    case Tok::Sum:
    case Tok::Prod:
    case Tok::Forall:
    case Tok::Exists:
      not_basic(pos, found_text(t));
    default:
      if (big_op(t.kind) && peek(1).is(Tok::LBracket)) not_basic(pos, "big operator");
      fail("formula");
  }
  if (!peek().is(Tok::RParen)) unparenthesized("')'");
  next();
  return inner;
}

}  // namespace

Spec parse_spec(const std::vector<Token>& tokens) { return Parser(tokens, false).spec(); }

Spec parse_spec(std::string_view source) { return parse_spec(tokenize(source)); }

ExprPtr parse_expr(const std::vector<Token>& tokens, ExprMode mode) {
  return Parser(tokens, false).whole_expression(mode);
}

ExprPtr parse_expr(std::string_view source, ExprMode mode) {
  return parse_expr(tokenize(source), mode);
}

Spec parse_basic_spec(std::string_view source) {
  auto tokens = tokenize(source);
  return Parser(tokens, true).spec();
}

Formula parse_basic_formula(std::string_view source) {
  auto tokens = tokenize(source);
  return Parser(tokens, true).whole_basic_formula();
}

}  // namespace tlsf
