#include "tlsf/ast.hpp"

#include <algorithm>
#include <array>

namespace tlsf {

namespace {

constexpr std::array kReserved = {
    // section and field keywords
    ReservedWord{"INFO", "section"},
    ReservedWord{"TITLE", "INFO field"},
    ReservedWord{"DESCRIPTION", "INFO field"},
    ReservedWord{"SEMANTICS", "INFO field"},
    ReservedWord{"TARGET", "INFO field"},
    ReservedWord{"TAGS", "INFO field"},
    ReservedWord{"GLOBAL", "section"},
    ReservedWord{"PARAMETERS", "GLOBAL subsection"},
    ReservedWord{"DEFINITIONS", "GLOBAL subsection"},
    ReservedWord{"MAIN", "section"},
    ReservedWord{"INPUTS", "MAIN subsection"},
    ReservedWord{"OUTPUTS", "MAIN subsection"},
    ReservedWord{"ASSUMPTIONS", "MAIN subsection"},
    ReservedWord{"INVARIANTS", "MAIN subsection"},
    ReservedWord{"GUARANTEES", "MAIN subsection"},
    // constants and guards
    ReservedWord{"true", "constant"},
    ReservedWord{"false", "constant"},
    ReservedWord{"otherwise", "guard"},
    // temporal operators
    ReservedWord{"X", "next"},
    ReservedWord{"F", "finally"},
    ReservedWord{"G", "globally"},
    ReservedWord{"U", "until"},
    ReservedWord{"R", "release"},
    ReservedWord{"W", "weak until"},
    // named operators and alternative spellings
    ReservedWord{"SUM", "big sum, alias of +[.]"},
    ReservedWord{"PROD", "big product, alias of *[.]"},
    ReservedWord{"SIZE", "set size, alias of |.|"},
    ReservedWord{"MIN", "set minimum"},
    ReservedWord{"MAX", "set maximum"},
    ReservedWord{"SIZEOF", "bus width"},
    ReservedWord{"MUL", "alias of *"},
    ReservedWord{"DIV", "alias of /"},
    ReservedWord{"MOD", "alias of %"},
    ReservedWord{"PLUS", "alias of +"},
    ReservedWord{"MINUS", "alias of -"},
    ReservedWord{"CAP", "alias of (*) and (*)[.]"},
    ReservedWord{"CUP", "alias of (+) and (+)[.]"},
    ReservedWord{"SETMINUS", "alias of (\\)"},
    ReservedWord{"EQ", "alias of =="},
    ReservedWord{"NEQ", "alias of !="},
    ReservedWord{"LE", "alias of <"},
    ReservedWord{"LEQ", "alias of <="},
    ReservedWord{"GE", "alias of >"},
    ReservedWord{"GEG", "alias of >="},
    ReservedWord{"GEQ", "alias of >="},
    ReservedWord{"IN", "membership"},
    ReservedWord{"ELEM", "alias of IN"},
    ReservedWord{"NOT", "alias of !"},
    ReservedWord{"AND", "alias of && and &&[.]"},
    ReservedWord{"FORALL", "alias of &&[.]"},
    ReservedWord{"OR", "alias of || and ||[.]"},
    ReservedWord{"EXISTS", "alias of ||[.]"},
    ReservedWord{"IMPLIES", "alias of ->"},
    ReservedWord{"EQUIV", "alias of <->"},
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '@';
}

bool ident_rest(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

int compare_ints(std::uint64_t a, std::uint64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compare_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return compare_ints(a != nullptr, b != nullptr);
  return structural_compare(*a, *b);
}

int compare_text(const std::string& a, const std::string& b) {
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare_list(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (int c = compare_ints(a.size(), b.size())) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare_ptr(a[i], b[i])) return c;
  }
  return 0;
}

int compare_binder(const node::Binder& a, const node::Binder& b) {
  if (int c = compare_text(a.name.text, b.name.text)) return c;
  if (int c = compare_ptr(a.set, b.set)) return c;
  if (int c = compare_ptr(a.lower, b.lower)) return c;
  if (int c = compare_ptr(a.upper, b.upper)) return c;
  if (int c = compare_ints(a.lower_inclusive, b.lower_inclusive)) return c;
  return compare_ints(a.upper_inclusive, b.upper_inclusive);
}

void collect_pattern_names(const Expr& pattern, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Id>) {
          out.insert(n.name.text);
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          collect_pattern_names(*n.arg, out);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          collect_pattern_names(*n.lhs, out);
          collect_pattern_names(*n.rhs, out);
        }
      },
      pattern.node);
}

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out);

void collect_free_ptr(const ExprPtr& e, std::vector<std::string>& bound,
                      std::set<std::string>& out) {
  if (e) collect_free(*e, bound, out);
}

void note_use(const std::string& name, const std::vector<std::string>& bound,
              std::set<std::string>& out) {
  if (std::find(bound.begin(), bound.end(), name) == bound.end()) out.insert(name);
}

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Id>) {
          note_use(n.name.text, bound, out);
        } else if constexpr (std::is_same_v<T, node::BusIndex>) {
          note_use(n.bus.text, bound, out);
          collect_free_ptr(n.index, bound, out);
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          collect_free_ptr(n.arg, bound, out);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          if (n.op == BinaryOp::Guard) {
            const auto* match = n.lhs->template as<node::Binary>();
            if (match && match->op == BinaryOp::PatternMatch) {
              // pattern identifiers bind inside the guarded right-hand side
              collect_free_ptr(match->lhs, bound, out);
              std::set<std::string> names;
              collect_pattern_names(*match->rhs, names);
              std::size_t mark = bound.size();
              bound.insert(bound.end(), names.begin(), names.end());
              collect_free_ptr(n.rhs, bound, out);
              bound.resize(mark);
              return;
            }
          }
          if (n.op == BinaryOp::PatternMatch) {
            collect_free_ptr(n.lhs, bound, out);
            return;
          }
          collect_free_ptr(n.lhs, bound, out);
          collect_free_ptr(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, node::SetLiteral>) {
          for (const auto& el : n.elements) collect_free_ptr(el, bound, out);
        } else if constexpr (std::is_same_v<T, node::SetRange>) {
          collect_free_ptr(n.first, bound, out);
          collect_free_ptr(n.second, bound, out);
          collect_free_ptr(n.last, bound, out);
        } else if constexpr (std::is_same_v<T, node::BigOp>) {
          std::size_t mark = bound.size();
          for (const auto& b : n.binders) {
            collect_free_ptr(b.set, bound, out);
            collect_free_ptr(b.lower, bound, out);
            collect_free_ptr(b.upper, bound, out);
            bound.push_back(b.name.text);
          }
          collect_free_ptr(n.body, bound, out);
          bound.resize(mark);
        } else if constexpr (std::is_same_v<T, node::FnApp>) {
          note_use(n.name.text, bound, out);
          for (const auto& a : n.args) collect_free_ptr(a, bound, out);
        } else if constexpr (std::is_same_v<T, node::NextN>) {
          collect_free_ptr(n.count, bound, out);
          collect_free_ptr(n.body, bound, out);
        } else if constexpr (std::is_same_v<T, node::FinallyRange> ||
                             std::is_same_v<T, node::GloballyRange>) {
          collect_free_ptr(n.from, bound, out);
          collect_free_ptr(n.to, bound, out);
          collect_free_ptr(n.body, bound, out);
        }
      },
      e.node);
}

}  // namespace

bool is_identifier_text(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), ident_rest);
}

std::span<const ReservedWord> reserved_words() { return kReserved; }

bool is_reserved_word(std::string_view text) {
  return std::any_of(kReserved.begin(), kReserved.end(),
                     [&](const ReservedWord& r) { return r.word == text; });
}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "!";
    case UnaryOp::Next: return "X";
    case UnaryOp::Globally: return "G";
    case UnaryOp::Finally: return "F";
    case UnaryOp::SetSize: return "SIZE";
    case UnaryOp::SetMin: return "MIN";
    case UnaryOp::SetMax: return "MAX";
    case UnaryOp::SizeOf: return "SIZEOF";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Implies: return "->";
    case BinaryOp::Equiv: return "<->";
    case BinaryOp::Until: return "U";
    case BinaryOp::Release: return "R";
    case BinaryOp::WeakUntil: return "W";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Neq: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Leq: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Geq: return ">=";
    case BinaryOp::In: return "IN";
    case BinaryOp::Cup: return "(+)";
    case BinaryOp::Cap: return "(*)";
    case BinaryOp::SetMinus: return "(\\)";
    case BinaryOp::PatternMatch: return "~";
    case BinaryOp::Guard: return ":";
  }
  return "?";
}

const char* to_string(BigOpKind op) {
  switch (op) {
    case BigOpKind::Sum: return "+";
    case BigOpKind::Prod: return "*";
    case BigOpKind::Cup: return "(+)";
    case BigOpKind::Cap: return "(*)";
    case BigOpKind::And: return "&&";
    case BigOpKind::Or: return "||";
  }
  return "?";
}

ExprPtr make_expr(Expr::Node node, SourcePos pos) {
  return std::make_shared<const Expr>(Expr{std::move(node), pos});
}

ExprPtr make_nat(Nat value, SourcePos pos) { return make_expr(node::NatConst{value}, pos); }
ExprPtr make_bool(bool value, SourcePos pos) { return make_expr(node::BoolConst{value}, pos); }

ExprPtr make_id(std::string name, SourcePos pos) {
  return make_expr(node::Id{Ident{std::move(name), pos}}, pos);
}

ExprPtr make_unary(UnaryOp op, ExprPtr arg, SourcePos pos) {
  return make_expr(node::Unary{op, std::move(arg)}, pos);
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  return make_expr(node::Binary{op, std::move(lhs), std::move(rhs)}, pos);
}

ExprPtr f_not(ExprPtr a) {
  auto pos = a->pos;
  return make_unary(UnaryOp::Neg, std::move(a), pos);
}
ExprPtr f_next(ExprPtr a) {
  auto pos = a->pos;
  return make_unary(UnaryOp::Next, std::move(a), pos);
}
ExprPtr f_globally(ExprPtr a) {
  auto pos = a->pos;
  return make_unary(UnaryOp::Globally, std::move(a), pos);
}
ExprPtr f_finally(ExprPtr a) {
  auto pos = a->pos;
  return make_unary(UnaryOp::Finally, std::move(a), pos);
}

#define TLSF_BINARY_SHORTHAND(fn, kind)                     \
  ExprPtr fn(ExprPtr a, ExprPtr b) {                        \
    auto pos = a->pos;                                      \
    return make_binary(kind, std::move(a), std::move(b), pos); \
  }

TLSF_BINARY_SHORTHAND(f_and, BinaryOp::And)
TLSF_BINARY_SHORTHAND(f_or, BinaryOp::Or)
TLSF_BINARY_SHORTHAND(f_implies, BinaryOp::Implies)
TLSF_BINARY_SHORTHAND(f_equiv, BinaryOp::Equiv)
TLSF_BINARY_SHORTHAND(f_until, BinaryOp::Until)
TLSF_BINARY_SHORTHAND(f_release, BinaryOp::Release)
TLSF_BINARY_SHORTHAND(f_weak_until, BinaryOp::WeakUntil)

#undef TLSF_BINARY_SHORTHAND

ExprPtr conjunction(std::span<const ExprPtr> items) {
  if (items.empty()) return make_bool(true);
  ExprPtr acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = f_and(acc, items[i]);
  return acc;
}

std::set<std::string> free_identifiers(const Expr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

int structural_compare(const Expr& a, const Expr& b) {
  if (int c = compare_ints(a.node.index(), b.node.index())) return c;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, node::NatConst>) {
          return compare_ints(x.value, y.value);
        } else if constexpr (std::is_same_v<T, node::BoolConst>) {
          return compare_ints(x.value, y.value);
        } else if constexpr (std::is_same_v<T, node::Id>) {
          return compare_text(x.name.text, y.name.text);
        } else if constexpr (std::is_same_v<T, node::Wildcard>) {
          return 0;
        } else if constexpr (std::is_same_v<T, node::BusIndex>) {
          if (int c = compare_text(x.bus.text, y.bus.text)) return c;
          return compare_ptr(x.index, y.index);
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          if (int c = compare_ints(static_cast<int>(x.op), static_cast<int>(y.op))) return c;
          return compare_ptr(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          if (int c = compare_ints(static_cast<int>(x.op), static_cast<int>(y.op))) return c;
          if (int c = compare_ptr(x.lhs, y.lhs)) return c;
          return compare_ptr(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, node::SetLiteral>) {
          return compare_list(x.elements, y.elements);
        } else if constexpr (std::is_same_v<T, node::SetRange>) {
          if (int c = compare_ptr(x.first, y.first)) return c;
          if (int c = compare_ptr(x.second, y.second)) return c;
          return compare_ptr(x.last, y.last);
        } else if constexpr (std::is_same_v<T, node::BigOp>) {
          if (int c = compare_ints(static_cast<int>(x.op), static_cast<int>(y.op))) return c;
          if (int c = compare_ints(x.binders.size(), y.binders.size())) return c;
          for (std::size_t i = 0; i < x.binders.size(); ++i) {
            if (int c = compare_binder(x.binders[i], y.binders[i])) return c;
          }
          return compare_ptr(x.body, y.body);
        } else if constexpr (std::is_same_v<T, node::FnApp>) {
          if (int c = compare_text(x.name.text, y.name.text)) return c;
          return compare_list(x.args, y.args);
        } else if constexpr (std::is_same_v<T, node::NextN>) {
          if (int c = compare_ptr(x.count, y.count)) return c;
          return compare_ptr(x.body, y.body);
        } else {
          if (int c = compare_ptr(x.from, y.from)) return c;
          if (int c = compare_ptr(x.to, y.to)) return c;
          return compare_ptr(x.body, y.body);
        }
      },
      a.node);
}

bool structural_eq(const Expr& a, const Expr& b) { return structural_compare(a, b) == 0; }

bool structural_eq(const ExprPtr& a, const ExprPtr& b) { return compare_ptr(a, b) == 0; }

bool is_formula_unary(UnaryOp op) {
  return op == UnaryOp::Neg || op == UnaryOp::Next || op == UnaryOp::Globally ||
         op == UnaryOp::Finally;
}

bool is_formula_binary(BinaryOp op) {
  switch (op) {
    case BinaryOp::And:
    case BinaryOp::Or:
    case BinaryOp::Implies:
    case BinaryOp::Equiv:
    case BinaryOp::Until:
    case BinaryOp::Release:
    case BinaryOp::WeakUntil:
      return true;
    default:
      return false;
  }
}

bool is_temporal(UnaryOp op) {
  return op == UnaryOp::Next || op == UnaryOp::Globally || op == UnaryOp::Finally;
}

bool is_temporal(BinaryOp op) {
  return op == BinaryOp::Until || op == BinaryOp::Release || op == BinaryOp::WeakUntil;
}

const char* to_string(Semantics s) {
  switch (s) {
    case Semantics::Mealy: return "Mealy";
    case Semantics::Moore: return "Moore";
    case Semantics::MealyStrict: return "Mealy,Strict";
    case Semantics::MooreStrict: return "Moore,Strict";
  }
  return "?";
}

const char* to_string(Target t) { return t == Target::Mealy ? "Mealy" : "Moore"; }

Target model_of(Semantics s) {
  return (s == Semantics::Mealy || s == Semantics::MealyStrict) ? Target::Mealy : Target::Moore;
}

bool is_strict(Semantics s) {
  return s == Semantics::MealyStrict || s == Semantics::MooreStrict;
}

Semantics with_model(Semantics s, Target model) {
  if (is_strict(s)) return model == Target::Mealy ? Semantics::MealyStrict : Semantics::MooreStrict;
  return model == Target::Mealy ? Semantics::Mealy : Semantics::Moore;
}

}  // namespace tlsf
