#include "tlsf/emit.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "tlsf/parser.hpp"

namespace tlsf {

// ---------------------------------------------------------------- profiles

LtlProfile LtlProfile::tlsf() {
  LtlProfile p;
  p.name = "tlsf";
  return p;
}

LtlProfile LtlProfile::classic() {
  LtlProfile p;
  p.name = "classic";
  p.and_op = "&";
  p.or_op = "|";
  return p;
}

LtlProfile LtlProfile::named(std::string_view name) {
  if (name == "tlsf") return tlsf();
  if (name == "classic") return classic();
  throw Error(ErrorKind::Usage, {}, "unknown profile '" + std::string(name) + "'");
}

void LtlProfile::validate() const {
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::Usage, {}, "profile '" + name + "': " + msg);
  };
  const std::pair<const char*, const std::string*> required[] = {
      {"true", &true_lit}, {"false", &false_lit}, {"not", &not_op},     {"and", &and_op},
      {"or", &or_op},      {"next", &next_op},    {"until", &until_op},
  };
  const std::pair<const char*, const std::string*> optional[] = {
      {"implies", &implies_op}, {"equiv", &equiv_op},     {"finally", &finally_op},
      {"globally", &globally_op}, {"release", &release_op}, {"weak until", &weak_until_op},
  };
  std::set<std::string> seen;
  for (const auto& [what, s] : required) {
    if (s->empty()) fail(std::string("the ") + what + " operator needs a spelling");
    if (!seen.insert(*s).second) fail("spelling '" + *s + "' is used twice");
  }
  for (const auto& [what, s] : optional) {
    if (s->empty()) {
      if (policy == Unsupported::Error) {
        fail(std::string("the ") + what + " operator is unsupported, so the policy must be "
             "rewrite-away");
      }
      continue;
    }
    if (!seen.insert(*s).second) fail("spelling '" + *s + "' is used twice");
  }
  for (const auto& s : seen) {
    if (s.find_first_of("() \t\n") != std::string::npos) fail("spelling '" + s + "' is not a token");
  }
}

// ---------------------------------------------------------------- basic format

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

namespace {

void basic(const Expr& f, std::string& out) {
  out += '(';
  if (const auto* c = f.as<node::BoolConst>()) {
    out += c->value ? "true" : "false";
  } else if (const auto* id = f.as<node::Id>()) {
    out += id->name.text;
  } else if (const auto* u = f.as<node::Unary>()) {
    switch (u->op) {
      case UnaryOp::Neg: out += "!"; break;
      case UnaryOp::Next: out += "X "; break;
      case UnaryOp::Finally: out += "F "; break;
      case UnaryOp::Globally: out += "G "; break;
      default: throw Error(ErrorKind::Internal, f.pos, "not a basic formula");
    }
    basic(*u->arg, out);
  } else if (const auto* b = f.as<node::Binary>()) {
    if (!is_formula_binary(b->op)) throw Error(ErrorKind::Internal, f.pos, "not a basic formula");
    basic(*b->lhs, out);
    out += ' ';
    out += to_string(b->op);
    out += ' ';
    basic(*b->rhs, out);
  } else {
    throw Error(ErrorKind::Internal, f.pos, "not a basic formula");
  }
  out += ')';
}

void section(std::ostringstream& os, const char* title, const std::vector<Formula>& fs) {
  if (fs.empty()) return;
  os << "  " << title << " {\n";
  for (const auto& f : fs) os << "    " << print_basic_formula(f) << ";\n";
  os << "  }\n";
}

}  // namespace

std::string print_basic_formula(const Formula& f) {
  std::string out;
  basic(*f, out);
  return out;
}

std::string print_basic(const BasicSpec& b) {
  std::ostringstream os;
  os << "INFO {\n";
  os << "  TITLE:       " << quote(b.info.title) << "\n";
  os << "  DESCRIPTION: " << quote(b.info.description) << "\n";
  os << "  SEMANTICS:   " << to_string(b.info.semantics) << "\n";
  os << "  TARGET:      " << to_string(b.info.target) << "\n";
  if (!b.info.tags.empty()) {
    os << "  TAGS:        ";
    for (std::size_t i = 0; i < b.info.tags.size(); ++i) {
      os << (i ? ", " : "") << quote(b.info.tags[i]);
    }
    os << "\n";
  }
  os << "}\n\nMAIN {\n";
  os << "  INPUTS {\n";
  for (const auto& s : b.inputs) os << "    " << s << ";\n";
  os << "  }\n  OUTPUTS {\n";
  for (const auto& s : b.outputs) os << "    " << s << ";\n";
  os << "  }\n";
  section(os, "ASSUMPTIONS", b.assumptions);
  section(os, "INVARIANTS", b.invariants);
  section(os, "GUARANTEES", b.guarantees);
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- full format

namespace {

void binder_text(const node::Binder& b, std::string& out);

void expr_text(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::NatConst>) {
          out += std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, node::BoolConst>) {
          out += n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, node::Id>) {
          out += n.name.text;
        } else if constexpr (std::is_same_v<T, node::Wildcard>) {
          out += "_";
        } else if constexpr (std::is_same_v<T, node::BusIndex>) {
          out += n.bus.text + "[";
          expr_text(*n.index, out);
          out += "]";
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          out += "(";
          out += to_string(n.op);
          out += " ";
          expr_text(*n.arg, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          out += "(";
          expr_text(*n.lhs, out);
          out += " ";
          out += to_string(n.op);
          out += " ";
          expr_text(*n.rhs, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, node::SetLiteral>) {
          out += "{";
          for (std::size_t i = 0; i < n.elements.size(); ++i) {
            if (i) out += ", ";
            expr_text(*n.elements[i], out);
          }
          out += "}";
        } else if constexpr (std::is_same_v<T, node::SetRange>) {
          out += "{";
          expr_text(*n.first, out);
          out += ", ";
          expr_text(*n.second, out);
          out += " .. ";
          expr_text(*n.last, out);
          out += "}";
        } else if constexpr (std::is_same_v<T, node::BigOp>) {
          out += "(";
          out += to_string(n.op);
          out += "[";
          for (std::size_t i = 0; i < n.binders.size(); ++i) {
            if (i) out += ", ";
            binder_text(n.binders[i], out);
          }
          out += "] ";
          expr_text(*n.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, node::FnApp>) {
          out += n.name.text + "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            expr_text(*n.args[i], out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, node::NextN>) {
          out += "(X[";
          expr_text(*n.count, out);
          out += "] ";
          expr_text(*n.body, out);
          out += ")";
        } else {
          out += std::is_same_v<T, node::FinallyRange> ? "(F[" : "(G[";
          expr_text(*n.from, out);
          out += ":";
          expr_text(*n.to, out);
          out += "] ";
          expr_text(*n.body, out);
          out += ")";
        }
      },
      e.node);
}

void binder_text(const node::Binder& b, std::string& out) {
  if (!b.is_range()) {
    out += b.name.text + " IN ";
    expr_text(*b.set, out);
    return;
  }
  expr_text(*b.lower, out);
  out += b.lower_inclusive ? " <= " : " < ";
  out += b.name.text;
  out += b.upper_inclusive ? " <= " : " < ";
  expr_text(*b.upper, out);
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  expr_text(e, out);
  return out;
}

// ---------------------------------------------------------------- flat LTL

namespace {

const std::string& spelling(const LtlProfile& p, UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return p.not_op;
    case UnaryOp::Next: return p.next_op;
    case UnaryOp::Finally: return p.finally_op;
    case UnaryOp::Globally: return p.globally_op;
    default: throw Error(ErrorKind::Internal, {}, "not an LTL operator");
  }
}

const std::string& spelling(const LtlProfile& p, BinaryOp op) {
  switch (op) {
    case BinaryOp::And: return p.and_op;
    case BinaryOp::Or: return p.or_op;
    case BinaryOp::Implies: return p.implies_op;
    case BinaryOp::Equiv: return p.equiv_op;
    case BinaryOp::Until: return p.until_op;
    case BinaryOp::Release: return p.release_op;
    case BinaryOp::WeakUntil: return p.weak_until_op;
    default: throw Error(ErrorKind::Internal, {}, "not an LTL operator");
  }
}

// Replaces operators without a spelling by their definitions in terms of
// the remaining ones.
Formula rewrite_unsupported(const Formula& f, const LtlProfile& p) {
  if (const auto* u = f->as<node::Unary>()) {
    Formula a = rewrite_unsupported(u->arg, p);
    if (!spelling(p, u->op).empty()) return make_unary(u->op, a, f->pos);
    if (p.policy == LtlProfile::Unsupported::Error) {
      throw Error(ErrorKind::Usage, f->pos,
                  std::string("operator ") + to_string(u->op) + " is not supported by profile '" +
                      p.name + "'");
    }
    if (u->op == UnaryOp::Finally) return f_until(make_bool(true), a);
    // G a == !F !a
    return f_not(p.finally_op.empty() ? f_until(make_bool(true), f_not(a)) : f_finally(f_not(a)));
  }
  if (const auto* b = f->as<node::Binary>()) {
    Formula l = rewrite_unsupported(b->lhs, p);
    Formula r = rewrite_unsupported(b->rhs, p);
    if (!spelling(p, b->op).empty()) return make_binary(b->op, l, r, f->pos);
    if (p.policy == LtlProfile::Unsupported::Error) {
      throw Error(ErrorKind::Usage, f->pos,
                  std::string("operator ") + to_string(b->op) + " is not supported by profile '" +
                      p.name + "'");
    }
    auto implies = [&](Formula x, Formula y) {
      return p.implies_op.empty() ? f_or(f_not(std::move(x)), std::move(y))
                                  : f_implies(std::move(x), std::move(y));
    };
    switch (b->op) {
      case BinaryOp::Implies: return f_or(f_not(l), r);
      case BinaryOp::Equiv: return f_and(implies(l, r), implies(r, l));
      case BinaryOp::Release: return f_not(f_until(f_not(l), f_not(r)));
      case BinaryOp::WeakUntil:
        return rewrite_unsupported(f_or(f_until(l, r), f_globally(l)), p);
      default: break;
    }
  }
  return f;
}

int row(const Expr& f) {
  if (const auto* u = f.as<node::Unary>()) return precedence(u->op);
  if (const auto* b = f.as<node::Binary>()) return precedence(b->op);
  return 0;
}

bool is_word(const std::string& s) {
  return !s.empty() && (std::isalnum(static_cast<unsigned char>(s.back())) || s.back() == '_');
}

// Operand row limit of prefix operators: their operand never extends over
// a binary formula operator. Nested prefix operators need no parentheses.
constexpr int kPrefixOperandRow = 10;

void flat(const Expr& f, const LtlProfile& p, std::string& out) {
  const bool full = p.parens == LtlProfile::Parens::Full;
  auto child = [&](const Expr& c, bool parens) {
    if (parens && !full) out += '(';
    flat(c, p, out);
    if (parens && !full) out += ')';
  };
  if (full) out += '(';
  if (const auto* c = f.as<node::BoolConst>()) {
    out += c->value ? p.true_lit : p.false_lit;
  } else if (const auto* id = f.as<node::Id>()) {
    out += id->name.text;
  } else if (const auto* u = f.as<node::Unary>()) {
    const std::string& op = spelling(p, u->op);
    out += op;
    if (is_word(op)) out += ' ';
    child(*u->arg, u->arg->is<node::Binary>() && row(*u->arg) > kPrefixOperandRow);
  } else if (const auto* b = f.as<node::Binary>()) {
    int r = precedence(b->op);
    Assoc a = associativity(b->op);
    int lr = row(*b->lhs), rr = row(*b->rhs);
    child(*b->lhs, lr > r || (lr == r && a != Assoc::Left));
    out += ' ';
    out += spelling(p, b->op);
    out += ' ';
    child(*b->rhs, rr > r || (rr == r && a != Assoc::Right));
  } else {
    throw Error(ErrorKind::Internal, f.pos, "not a ground LTL formula");
  }
  if (full) out += ')';
}

// ---------------------------------------------------------------- parsing

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const LtlProfile& p) : text_(text), p_(p) {
    for (auto op : {UnaryOp::Neg, UnaryOp::Next, UnaryOp::Finally, UnaryOp::Globally}) {
      if (!spelling(p, op).empty()) unary_.emplace_back(spelling(p, op), op);
    }
    for (auto op : {BinaryOp::And, BinaryOp::Or, BinaryOp::Implies, BinaryOp::Equiv,
                    BinaryOp::Until, BinaryOp::Release, BinaryOp::WeakUntil}) {
      if (!spelling(p, op).empty()) binary_.emplace_back(spelling(p, op), op);
    }
  }

  Formula parse() {
    Formula f = climb(kTopRow);
    skip_space();
    if (i_ != text_.size()) fail("end of formula");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    std::string found = i_ < text_.size() ? "'" + std::string(text_.substr(i_, 12)) + "'"
                                          : "end of input";
    throw ParseError(pos(), expected, found);
  }

  SourcePos pos() const { return {1, static_cast<std::uint32_t>(i_ + 1)}; }

  void skip_space() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '@';
  }

  // Whether `s` occurs at the cursor as a whole token.
  bool at(const std::string& s) const {
    if (text_.substr(i_, s.size()) != s) return false;
    if (is_word(s)) {
      std::size_t end = i_ + s.size();
      if (end < text_.size() && ident_char(text_[end])) return false;
    }
    return true;
  }

  template <class Op>
  std::optional<Op> match(const std::vector<std::pair<std::string, Op>>& table) {
    skip_space();
    std::size_t best = 0;
    std::optional<Op> op;
    for (const auto& [s, o] : table) {
      if (s.size() > best && at(s)) {
        best = s.size();
        op = o;
      }
    }
    return op;
  }

  Formula climb(int max_row) {
    Formula lhs = operand();
    for (;;) {
      std::size_t save = i_;
      auto op = match(binary_);
      if (!op || precedence(*op) > max_row) {
        i_ = save;
        return lhs;
      }
      i_ += spelling(p_, *op).size();
      int r = precedence(*op);
      Formula rhs = climb(associativity(*op) == Assoc::Right ? r : r - 1);
      lhs = make_binary(*op, lhs, rhs);
    }
  }

  Formula operand() {
    skip_space();
    if (auto op = match(unary_)) {
      // a unary spelling that is a prefix of a binary one ("<" vs "<->")
      // never occurs among the built-in profiles
      i_ += spelling(p_, *op).size();
      return make_unary(*op, climb(kPrefixOperandRow));
    }
    if (i_ < text_.size() && text_[i_] == '(') {
      ++i_;
      Formula f = climb(kTopRow);
      skip_space();
      if (i_ >= text_.size() || text_[i_] != ')') fail("')'");
      ++i_;
      return f;
    }
    if (at(p_.true_lit)) {
      i_ += p_.true_lit.size();
      return make_bool(true);
    }
    if (at(p_.false_lit)) {
      i_ += p_.false_lit.size();
      return make_bool(false);
    }
    std::size_t start = i_;
    if (i_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[i_])) ||
                              text_[i_] == '_' || text_[i_] == '@')) {
      while (i_ < text_.size() && ident_char(text_[i_])) ++i_;
      return make_id(std::string(text_.substr(start, i_ - start)));
    }
    fail("a formula");
  }

  std::string_view text_;
  const LtlProfile& p_;
  std::size_t i_ = 0;
  std::vector<std::pair<std::string, UnaryOp>> unary_;
  std::vector<std::pair<std::string, BinaryOp>> binary_;
};

}  // namespace

std::string print_formula(const Formula& f, const LtlProfile& profile) {
  profile.validate();
  Formula g = rewrite_unsupported(f, profile);
  std::string out;
  flat(*g, profile, out);
  return out;
}

Formula parse_formula(std::string_view text, const LtlProfile& profile) {
  profile.validate();
  return FormulaParser(text, profile).parse();
}

}  // namespace tlsf
