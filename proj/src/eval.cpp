#include "tlsf/eval.hpp"

#include <pthread.h>

#include <algorithm>
#include <cstdlib>
#include <exception>

namespace tlsf {

// ---------------------------------------------------------------- values

Value Value::nat(Nat n) {
  Value v;
  v.kind_ = Kind::Nat;
  v.nat_ = n;
  return v;
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.nat_ = b ? 1 : 0;
  return v;
}

Value Value::signal(std::string name) {
  Value v;
  v.kind_ = Kind::Signal;
  v.name_ = std::move(name);
  return v;
}

Value Value::bus(std::string name, Nat width) {
  Value v;
  v.kind_ = Kind::Bus;
  v.name_ = std::move(name);
  v.nat_ = width;
  return v;
}

Value Value::formula(Formula f) {
  Value v;
  v.kind_ = Kind::Formula;
  v.formula_ = std::move(f);
  return v;
}

Value Value::set(std::vector<Value> elements) {
  bool mixed = false;
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (elements[i].kind_ != elements[0].kind_ && elements[i].is_formula_like() &&
        elements[0].is_formula_like()) {
      mixed = true;
    }
  }
  if (mixed) {
    for (auto& el : elements) el = Value::formula(el.to_formula());
  }
  std::sort(elements.begin(), elements.end(),
            [](const Value& a, const Value& b) { return compare(a, b) < 0; });
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [](const Value& a, const Value& b) { return compare(a, b) == 0; }),
                 elements.end());
  Value v;
  v.kind_ = Kind::Set;
  v.elements_ = std::move(elements);
  return v;
}

bool Value::is_formula_like() const {
  return kind_ == Kind::Bool || kind_ == Kind::Signal || kind_ == Kind::Formula;
}

Formula Value::to_formula() const {
  switch (kind_) {
    case Kind::Bool: return make_bool(as_bool());
    case Kind::Signal: return make_id(name_);
    case Kind::Formula: return formula_;
    default:
      throw Error(ErrorKind::Eval, {},
                  std::string("a ") + to_string(kind_) + " cannot be used as a formula");
  }
}

const char* to_string(Value::Kind k) {
  switch (k) {
    case Value::Kind::Nat: return "natural";
    case Value::Kind::Bool: return "boolean";
    case Value::Kind::Set: return "set";
    case Value::Kind::Signal: return "signal";
    case Value::Kind::Bus: return "bus";
    case Value::Kind::Formula: return "formula";
  }
  return "?";
}

namespace {

int kind_rank(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Nat: return 0;
    case Value::Kind::Set: return 1;
    case Value::Kind::Bus: return 2;
    default: return 3;  // formula-like
  }
}

int sign(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

}  // namespace

int compare(const Value& a, const Value& b) {
  int ra = kind_rank(a), rb = kind_rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Value::Kind::Nat:
      return a.as_nat() < b.as_nat() ? -1 : (a.as_nat() > b.as_nat() ? 1 : 0);
    case Value::Kind::Set: {
      const auto& x = a.elements();
      const auto& y = b.elements();
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (int c = compare(x[i], y[i])) return c;
      }
      return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
    }
    case Value::Kind::Bus:
      if (int c = sign(a.name().compare(b.name()))) return c;
      return a.width() < b.width() ? -1 : (a.width() > b.width() ? 1 : 0);
    default:
      return structural_compare(*a.to_formula(), *b.to_formula());
  }
}

bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }

std::string to_string(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Nat: return std::to_string(v.as_nat());
    case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
    case Value::Kind::Signal: return v.name();
    case Value::Kind::Bus: return v.name() + "[" + std::to_string(v.width()) + "]";
    case Value::Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < v.elements().size(); ++i) {
        if (i) out += ", ";
        out += to_string(v.elements()[i]);
      }
      return out + "}";
    }
    case Value::Kind::Formula: return "<formula>";
  }
  return "?";
}

std::string bus_bit_name(std::string_view bus, Nat index) {
  return std::string(bus) + "@" + std::to_string(index);
}

std::size_t default_recursion_limit() {
  if (const char* s = std::getenv("TLSF_RECURSION_LIMIT")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return 10000;
}

// ---------------------------------------------------------------- environment

namespace {

struct Global {
  enum class Kind { Parameter, Plain, Signal, Bus, Value } kind;
  ExprPtr expr;  // parameter value, definition body or bus width
  std::optional<Value> cached;
  bool in_progress = false;
};

using Frame = std::vector<std::pair<std::string, Value>>;

[[noreturn]] void eval_error(SourcePos pos, const std::string& message) {
  throw Error(ErrorKind::Eval, pos, message);
}

}  // namespace

struct Env::Impl {
  std::map<std::string, Global> globals;
  std::map<std::string, Definition> functions;
  std::vector<Frame> frames{Frame{}};
  EvalOptions options;
  std::size_t depth = 0;
};

Env::Env() : impl_(std::make_unique<Impl>()) {}

Env::Env(const Spec& spec, std::map<std::string, Nat> overrides, EvalOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->options = options;
  for (const auto& p : spec.parameters) {
    Global g{Global::Kind::Parameter, p.value, std::nullopt, false};
    if (auto it = overrides.find(p.name.text); it != overrides.end()) {
      g.cached = Value::nat(it->second);
      overrides.erase(it);
    }
    impl_->globals[p.name.text] = std::move(g);
  }
  if (!overrides.empty()) {
    throw Error(ErrorKind::Usage, {},
                "'" + overrides.begin()->first + "' is not a parameter of this specification");
  }
  for (const auto& d : spec.definitions) {
    if (d.is_function) {
      impl_->functions[d.name.text] = d;
    } else {
      impl_->globals[d.name.text] = Global{Global::Kind::Plain, d.cases.front().body, {}, false};
    }
  }
  for (const auto* group : {&spec.inputs, &spec.outputs}) {
    for (const auto& s : *group) {
      if (s.is_bus()) {
        impl_->globals[s.name.text] = Global{Global::Kind::Bus, s.width, {}, false};
      } else {
        impl_->globals[s.name.text] =
            Global{Global::Kind::Signal, nullptr, Value::signal(s.name.text), false};
      }
    }
  }
}

Env::~Env() = default;
Env::Env(Env&&) noexcept = default;
Env& Env::operator=(Env&&) noexcept = default;

void Env::bind(const std::string& name, Value v) {
  impl_->globals[name] = Global{Global::Kind::Value, nullptr, std::move(v), false};
}

void Env::define(const Definition& def) { impl_->functions[def.name.text] = def; }

const Definition* Env::function(const std::string& name) const {
  auto it = impl_->functions.find(name);
  return it == impl_->functions.end() ? nullptr : &it->second;
}

const EvalOptions& Env::options() const { return impl_->options; }

void Env::push_frame() { impl_->frames.emplace_back(); }
void Env::pop_frame() { impl_->frames.pop_back(); }

void Env::bind_local(const std::string& name, Value v) {
  impl_->frames.back().emplace_back(name, std::move(v));
}

std::size_t Env::mark() const { return impl_->frames.back().size(); }

void Env::restore(std::size_t mark) { impl_->frames.back().resize(mark); }

std::size_t Env::depth() const { return impl_->depth; }

void Env::enter_call(SourcePos pos) {
  if (impl_->depth >= impl_->options.recursion_limit) {
    eval_error(pos, "recursion limit of " + std::to_string(impl_->options.recursion_limit) +
                        " nested function applications exceeded");
  }
  ++impl_->depth;
}

void Env::leave_call() { --impl_->depth; }

Value Env::lookup(const Ident& name) {
  const Frame& frame = impl_->frames.back();
  for (auto it = frame.rbegin(); it != frame.rend(); ++it) {
    if (it->first == name.text) return it->second;
  }
  auto git = impl_->globals.find(name.text);
  if (git == impl_->globals.end()) {
    if (impl_->functions.count(name.text)) {
      eval_error(name.pos, "function '" + name.text + "' used without arguments");
    }
    eval_error(name.pos, "unbound identifier '" + name.text + "'");
  }
  Global& g = git->second;
  if (g.cached) return *g.cached;
  if (g.in_progress) eval_error(name.pos, "cyclic definition of '" + name.text + "'");

  // Globals are evaluated in the global scope, not the caller's.
  g.in_progress = true;
  impl_->frames.emplace_back();
  std::optional<Value> result;
  try {
    Value v = eval(*g.expr, *this);
    switch (g.kind) {
      case Global::Kind::Parameter:
        if (!v.is(Value::Kind::Nat)) {
          eval_error(g.expr->pos, "parameter '" + name.text + "' is not a natural");
        }
        result = v;
        break;
      case Global::Kind::Bus:
        if (!v.is(Value::Kind::Nat)) eval_error(g.expr->pos, "bus width is not a natural");
        if (v.as_nat() < 1) {
          eval_error(g.expr->pos, "bus '" + name.text + "' must have width at least 1");
        }
        result = Value::bus(name.text, v.as_nat());
        break;
      default:
        result = v;
    }
  } catch (...) {
    impl_->frames.pop_back();
    g.in_progress = false;
    throw;
  }
  impl_->frames.pop_back();
  g.in_progress = false;
  g.cached = result;
  return *result;
}

// ---------------------------------------------------------------- helpers

namespace {

Nat checked_add(Nat a, Nat b, SourcePos pos) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) eval_error(pos, "natural number overflow in addition");
  return r;
}

Nat checked_mul(Nat a, Nat b, SourcePos pos) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) {
    eval_error(pos, "natural number overflow in multiplication");
  }
  return r;
}

Nat arith(BinaryOp op, Nat a, Nat b, SourcePos pos) {
  switch (op) {
    case BinaryOp::Add: return checked_add(a, b, pos);
    case BinaryOp::Sub:
      if (b > a) {
        eval_error(pos, "subtraction " + std::to_string(a) + " - " + std::to_string(b) +
                            " is below zero");
      }
      return a - b;
    case BinaryOp::Mul: return checked_mul(a, b, pos);
    case BinaryOp::Div:
      if (b == 0) eval_error(pos, "division by zero");
      return a / b;
    case BinaryOp::Mod:
      if (b == 0) eval_error(pos, "modulo by zero");
      return a % b;
    default: eval_error(pos, "not an arithmetic operator");
  }
}

const Value& expect_kind(const Value& v, Value::Kind k, SourcePos pos, const char* what) {
  if (!v.is(k)) {
    eval_error(pos, std::string(what) + " must be a " + to_string(k) + ", found a " +
                        to_string(v.kind()));
  }
  return v;
}

Nat nat_of(const Value& v, SourcePos pos, const char* what) {
  return expect_kind(v, Value::Kind::Nat, pos, what).as_nat();
}

Formula formula_of(const Value& v, SourcePos pos) {
  if (!v.is_formula_like()) {
    eval_error(pos, std::string("a ") + to_string(v.kind()) + " cannot be used as a formula");
  }
  return v.to_formula();
}

bool contains(const Value& set, const Value& x) {
  for (const auto& el : set.elements()) {
    if (compare(el, x) == 0) return true;
  }
  return false;
}

Value set_op(BinaryOp op, const Value& a, const Value& b, SourcePos pos) {
  expect_kind(a, Value::Kind::Set, pos, "set operand");
  expect_kind(b, Value::Kind::Set, pos, "set operand");
  std::vector<Value> out;
  switch (op) {
    case BinaryOp::Cup:
      out = a.elements();
      out.insert(out.end(), b.elements().begin(), b.elements().end());
      break;
    case BinaryOp::Cap:
      for (const auto& x : a.elements()) {
        if (contains(b, x)) out.push_back(x);
      }
      break;
    default:
      for (const auto& x : a.elements()) {
        if (!contains(b, x)) out.push_back(x);
      }
  }
  return Value::set(std::move(out));
}

bool bool_connective(BinaryOp op, bool a, bool b) {
  switch (op) {
    case BinaryOp::And: return a && b;
    case BinaryOp::Or: return a || b;
    case BinaryOp::Implies: return !a || b;
    default: return a == b;
  }
}

// Applies a binary operator to two evaluated operands.
Value combine(BinaryOp op, const Value& a, const Value& b, SourcePos pos) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod:
      return Value::nat(arith(op, nat_of(a, pos, "arithmetic operand"),
                              nat_of(b, pos, "arithmetic operand"), pos));
    case BinaryOp::And:
    case BinaryOp::Or:
    case BinaryOp::Implies:
    case BinaryOp::Equiv:
      if (a.is(Value::Kind::Bool) && b.is(Value::Kind::Bool)) {
        return Value::boolean(bool_connective(op, a.as_bool(), b.as_bool()));
      }
      return Value::formula(make_binary(op, formula_of(a, pos), formula_of(b, pos)));
    case BinaryOp::Until:
    case BinaryOp::Release:
    case BinaryOp::WeakUntil:
      return Value::formula(make_binary(op, formula_of(a, pos), formula_of(b, pos)));
    case BinaryOp::Eq:
    case BinaryOp::Neq:
    case BinaryOp::Lt:
    case BinaryOp::Leq:
    case BinaryOp::Gt:
    case BinaryOp::Geq: {
      Nat x = nat_of(a, pos, "comparison operand");
      Nat y = nat_of(b, pos, "comparison operand");
      bool r = op == BinaryOp::Eq    ? x == y
               : op == BinaryOp::Neq ? x != y
               : op == BinaryOp::Lt  ? x < y
               : op == BinaryOp::Leq ? x <= y
               : op == BinaryOp::Gt  ? x > y
                                     : x >= y;
      return Value::boolean(r);
    }
    case BinaryOp::In:
      expect_kind(b, Value::Kind::Set, pos, "right operand of IN");
      return Value::boolean(contains(b, a));
    case BinaryOp::Cup:
    case BinaryOp::Cap:
    case BinaryOp::SetMinus:
      return set_op(op, a, b, pos);
    case BinaryOp::PatternMatch:
    case BinaryOp::Guard:
      break;
  }
  eval_error(pos, std::string("operator ") + to_string(op) + " cannot be evaluated here");
}

BinaryOp fold_operator(BigOpKind kind) {
  switch (kind) {
    case BigOpKind::Sum: return BinaryOp::Add;
    case BigOpKind::Prod: return BinaryOp::Mul;
    case BigOpKind::Cup: return BinaryOp::Cup;
    case BigOpKind::Cap: return BinaryOp::Cap;
    case BigOpKind::And: return BinaryOp::And;
    case BigOpKind::Or: return BinaryOp::Or;
  }
  return BinaryOp::And;
}

Value identity(BigOpKind kind, SourcePos pos) {
  switch (kind) {
    case BigOpKind::Sum: return Value::nat(0);
    case BigOpKind::Prod: return Value::nat(1);
    case BigOpKind::Cup: return Value::set({});
    case BigOpKind::And: return Value::boolean(true);
    case BigOpKind::Or: return Value::boolean(false);
    case BigOpKind::Cap: break;
  }
  eval_error(pos, "big intersection over an empty domain has no value");
}

Value fold(BigOpKind kind, const std::vector<Value>& items, SourcePos pos) {
  if (items.empty()) return identity(kind, pos);
  Value acc = items.front();
  BinaryOp op = fold_operator(kind);
  for (std::size_t i = 1; i < items.size(); ++i) acc = combine(op, acc, items[i], pos);
  return acc;
}

// Calls `body` once per point of the binder product, in binder order, with
// each binder bound in the current frame. `domain(i)` yields the domain of
// binder i and may depend on earlier binders.
void for_each_binding(std::size_t n, const std::function<std::string(std::size_t)>& name,
                      const std::function<std::vector<Value>(std::size_t)>& domain,
                      const std::function<void()>& body, Env& env, std::size_t i = 0) {
  if (i == n) {
    body();
    return;
  }
  for (const Value& v : domain(i)) {
    std::size_t mark = env.mark();
    env.bind_local(name(i), v);
    for_each_binding(n, name, domain, body, env, i + 1);
    env.restore(mark);
  }
}

ExprPtr next_power(ExprPtr body, Nat n) {
  for (Nat k = 0; k < n; ++k) body = f_next(body);
  return body;
}

// X^from (phi op X(phi op ... X phi)) with to - from + 1 copies of phi.
Formula bounded(BinaryOp op, Nat from, Nat to, const Formula& phi, SourcePos pos,
                const char* name) {
  if (to < from) {
    eval_error(pos, std::string(name) + "[" + std::to_string(from) + ":" + std::to_string(to) +
                        "] has an empty range");
  }
  Formula acc = phi;
  for (Nat k = from; k < to; ++k) acc = make_binary(op, phi, f_next(acc));
  return next_power(acc, from);
}

}  // namespace

// ---------------------------------------------------------------- ranges

Value eval_range(Nat x, Nat y, Nat z, SourcePos pos) {
  if (x >= y) {
    eval_error(pos, "range {" + std::to_string(x) + ", " + std::to_string(y) + " .. " +
                        std::to_string(z) + "} needs its first element below its second");
  }
  std::vector<Value> out;
  Nat step = y - x;
  for (Nat v = x; v <= z;) {
    out.push_back(Value::nat(v));
    if (__builtin_add_overflow(v, step, &v)) break;
  }
  return Value::set(std::move(out));
}

std::vector<Nat> range_domain(Nat lo, bool lo_inclusive, Nat hi, bool hi_inclusive) {
  std::vector<Nat> out;
  if (!lo_inclusive) {
    if (lo == UINT64_MAX) return out;
    ++lo;
  }
  if (!hi_inclusive) {
    if (hi == 0) return out;
    --hi;
  }
  for (Nat v = lo; v <= hi; ++v) {
    out.push_back(v);
    if (v == hi) break;
  }
  return out;
}

// ---------------------------------------------------------------- patterns

namespace {

bool match_into(const Formula& subject, const Expr& pattern,
                std::map<std::string, Formula>& out) {
  if (pattern.is<node::Wildcard>()) return true;
  if (const auto* id = pattern.as<node::Id>()) {
    auto [it, fresh] = out.emplace(id->name.text, subject);
    return fresh || structural_eq(it->second, subject);
  }
  if (const auto* b = pattern.as<node::BoolConst>()) {
    const auto* s = subject->as<node::BoolConst>();
    return s && s->value == b->value;
  }
  if (const auto* u = pattern.as<node::Unary>()) {
    const auto* s = subject->as<node::Unary>();
    return s && s->op == u->op && match_into(s->arg, *u->arg, out);
  }
  if (const auto* b = pattern.as<node::Binary>()) {
    const auto* s = subject->as<node::Binary>();
    return s && s->op == b->op && match_into(s->lhs, *b->lhs, out) &&
           match_into(s->rhs, *b->rhs, out);
  }
  return false;
}

}  // namespace

std::optional<std::map<std::string, Formula>> match_pattern(const Formula& subject,
                                                            const Expr& pattern) {
  std::map<std::string, Formula> out;
  if (!match_into(subject, pattern, out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------- functions

Value apply_function(const Definition& def, const std::vector<Value>& args, Env& env,
                     SourcePos pos) {
  if (args.size() != def.params.size()) {
    eval_error(pos, "'" + def.name.text + "' expects " + std::to_string(def.params.size()) +
                        " argument(s), got " + std::to_string(args.size()));
  }
  env.enter_call(pos);
  env.push_frame();
  struct Cleanup {
    Env& env;
    ~Cleanup() {
      env.pop_frame();
      env.leave_call();
    }
  } cleanup{env};

  for (std::size_t i = 0; i < args.size(); ++i) env.bind_local(def.params[i].text, args[i]);

  const Case* fallback = nullptr;
  for (const auto& c : def.cases) {
    switch (c.guard_kind) {
      case GuardKind::None: return eval(*c.body, env);
      case GuardKind::Otherwise: fallback = &c; continue;
      case GuardKind::Expr: break;
    }
    const auto* match = c.guard->as<node::Binary>();
    if (match && match->op == BinaryOp::PatternMatch) {
      Formula subject = formula_of(eval(*match->lhs, env), match->lhs->pos);
      auto bindings = match_pattern(subject, *match->rhs);
      if (!bindings) continue;
      for (auto& [name, f] : *bindings) env.bind_local(name, Value::formula(f));
      return eval(*c.body, env);
    }
    Value g = eval(*c.guard, env);
    if (expect_kind(g, Value::Kind::Bool, c.guard->pos, "guard").as_bool()) {
      return eval(*c.body, env);
    }
  }
  if (fallback) return eval(*fallback->body, env);
  eval_error(pos, "no case of '" + def.name.text + "' applies to the given arguments");
}

// ---------------------------------------------------------------- big operators

Value expand_big_op(BigOpKind kind, const std::vector<std::pair<std::string, Value>>& binders,
                    const Expr& body, Env& env, SourcePos pos) {
  for (const auto& [name, domain] : binders) {
    expect_kind(domain, Value::Kind::Set, pos, "binder domain");
  }
  std::vector<Value> items;
  std::size_t mark = env.mark();
  try {
    for_each_binding(
        binders.size(), [&](std::size_t i) { return binders[i].first; },
        [&](std::size_t i) { return binders[i].second.elements(); },
        [&] { items.push_back(eval(body, env)); }, env);
  } catch (...) {
    env.restore(mark);
    throw;
  }
  env.restore(mark);
  return fold(kind, items, pos);
}

namespace {

std::vector<Value> binder_domain(const node::Binder& b, Env& env) {
  if (!b.is_range()) {
    Value s = eval(*b.set, env);
    return expect_kind(s, Value::Kind::Set, b.set->pos, "binder domain").elements();
  }
  Nat lo = nat_of(eval(*b.lower, env), b.lower->pos, "range bound");
  Nat hi = nat_of(eval(*b.upper, env), b.upper->pos, "range bound");
  std::vector<Value> out;
  for (Nat v : range_domain(lo, b.lower_inclusive, hi, b.upper_inclusive)) {
    out.push_back(Value::nat(v));
  }
  return out;
}

// Binders are bound in the caller's frame so that the body still sees the
// enclosing function's parameters; the frame is trimmed back afterwards.
Value eval_big_op(const node::BigOp& n, Env& env, SourcePos pos) {
  std::vector<Value> items;
  struct Restore {
    Env& env;
    std::size_t mark;
    ~Restore() { env.restore(mark); }
  } restore{env, env.mark()};
  for_each_binding(
      n.binders.size(), [&](std::size_t i) { return n.binders[i].name.text; },
      [&](std::size_t i) { return binder_domain(n.binders[i], env); },
      [&] { items.push_back(eval(*n.body, env)); }, env);
  return fold(n.op, items, pos);
}

}  // namespace

// ---------------------------------------------------------------- sugar

ExprPtr expand_sugar(const ExprPtr& e, Env& env) {
  if (const auto* n = e->as<node::NextN>()) {
    Nat count = nat_of(eval(*n->count, env), n->count->pos, "count of X[n]");
    return next_power(formula_of(eval(*n->body, env), n->body->pos), count);
  }
  if (const auto* n = e->as<node::FinallyRange>()) {
    Nat from = nat_of(eval(*n->from, env), n->from->pos, "range bound");
    Nat to = nat_of(eval(*n->to, env), n->to->pos, "range bound");
    return bounded(BinaryOp::Or, from, to, formula_of(eval(*n->body, env), n->body->pos), e->pos,
                   "F");
  }
  if (const auto* n = e->as<node::GloballyRange>()) {
    Nat from = nat_of(eval(*n->from, env), n->from->pos, "range bound");
    Nat to = nat_of(eval(*n->to, env), n->to->pos, "range bound");
    return bounded(BinaryOp::And, from, to, formula_of(eval(*n->body, env), n->body->pos),
                   e->pos, "G");
  }
  if (const auto* n = e->as<node::BigOp>()) {
    node::BigOp out{n->op, {}, n->body};
    std::set<std::string> earlier;
    for (const auto& b : n->binders) {
      node::Binder nb = b;
      if (b.is_range()) {
        auto free_lo = free_identifiers(*b.lower);
        auto free_hi = free_identifiers(*b.upper);
        bool closed = std::none_of(earlier.begin(), earlier.end(), [&](const std::string& s) {
          return free_lo.count(s) || free_hi.count(s);
        });
        SourcePos pos = b.lower->pos;
        if (closed) {
          Nat lo = nat_of(eval(*b.lower, env), b.lower->pos, "range bound");
          Nat hi = nat_of(eval(*b.upper, env), b.upper->pos, "range bound");
          auto dom = range_domain(lo, b.lower_inclusive, hi, b.upper_inclusive);
          if (dom.empty()) {
            nb.set = make_expr(node::SetLiteral{}, pos);
          } else {
            Nat first = dom.front();
            nb.set = make_expr(node::SetRange{make_nat(first, pos), make_nat(first + 1, pos),
                                              make_nat(dom.back(), pos)},
                               pos);
          }
        } else {
          // {lo', lo'+1 .. hi}, minus {hi} for a strict upper bound
          ExprPtr first = b.lower_inclusive
                              ? b.lower
                              : make_binary(BinaryOp::Add, b.lower, make_nat(1, pos), pos);
          ExprPtr range = make_expr(
              node::SetRange{first, make_binary(BinaryOp::Add, first, make_nat(1, pos), pos),
                             b.upper},
              pos);
          if (!b.upper_inclusive) {
            range = make_binary(BinaryOp::SetMinus, range,
                                make_expr(node::SetLiteral{{b.upper}}, pos), pos);
          }
          nb.set = range;
        }
        nb.lower = nullptr;
        nb.upper = nullptr;
        nb.lower_inclusive = true;
        nb.upper_inclusive = false;
      }
      earlier.insert(b.name.text);
      out.binders.push_back(std::move(nb));
    }
    return make_expr(std::move(out), e->pos);
  }
  return e;
}

// ---------------------------------------------------------------- eval

Value eval(const ExprPtr& e, Env& env) { return eval(*e, env); }

Value eval(const Expr& e, Env& env) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::NatConst>) {
          return Value::nat(n.value);
        } else if constexpr (std::is_same_v<T, node::BoolConst>) {
          return Value::boolean(n.value);
        } else if constexpr (std::is_same_v<T, node::Id>) {
          return env.lookup(n.name);
        } else if constexpr (std::is_same_v<T, node::Wildcard>) {
          eval_error(e.pos, "wildcard '_' outside a pattern");
        } else if constexpr (std::is_same_v<T, node::BusIndex>) {
          Value b = env.lookup(n.bus);
          if (!b.is(Value::Kind::Bus)) eval_error(e.pos, "'" + n.bus.text + "' is not a bus");
          Nat i = nat_of(eval(*n.index, env), n.index->pos, "bus index");
          if (i >= b.width()) {
            eval_error(n.index->pos, "index " + std::to_string(i) + " is out of range for bus '" +
                                         n.bus.text + "' of width " +
                                         std::to_string(b.width()));
          }
          return Value::signal(bus_bit_name(b.name(), i));
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          Value a = eval(*n.arg, env);
          switch (n.op) {
            case UnaryOp::Neg:
              if (a.is(Value::Kind::Bool)) return Value::boolean(!a.as_bool());
              return Value::formula(f_not(formula_of(a, e.pos)));
            case UnaryOp::Next:
            case UnaryOp::Globally:
            case UnaryOp::Finally:
              return Value::formula(make_unary(n.op, formula_of(a, e.pos)));
            case UnaryOp::SetSize:
              return Value::nat(expect_kind(a, Value::Kind::Set, e.pos, "operand of |.|")
                                    .elements()
                                    .size());
            case UnaryOp::SetMin:
            case UnaryOp::SetMax: {
              const auto& els =
                  expect_kind(a, Value::Kind::Set, e.pos, "operand of MIN/MAX").elements();
              if (els.empty()) eval_error(e.pos, "MIN/MAX of the empty set");
              const Value& pick = n.op == UnaryOp::SetMin ? els.front() : els.back();
              return Value::nat(nat_of(pick, e.pos, "element of MIN/MAX operand"));
            }
            case UnaryOp::SizeOf:
              return Value::nat(expect_kind(a, Value::Kind::Bus, e.pos, "operand of SIZEOF")
                                    .width());
          }
          eval_error(e.pos, "unknown unary operator");
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          if (n.op == BinaryOp::Guard || n.op == BinaryOp::PatternMatch) {
            eval_error(e.pos, "guards and pattern matches only occur in function cases");
          }
          Value a = eval(*n.lhs, env);
          Value b = eval(*n.rhs, env);
          return combine(n.op, a, b, e.pos);
        } else if constexpr (std::is_same_v<T, node::SetLiteral>) {
          std::vector<Value> els;
          els.reserve(n.elements.size());
          for (const auto& el : n.elements) els.push_back(eval(*el, env));
          return Value::set(std::move(els));
        } else if constexpr (std::is_same_v<T, node::SetRange>) {
          Nat x = nat_of(eval(*n.first, env), n.first->pos, "range element");
          Nat y = nat_of(eval(*n.second, env), n.second->pos, "range element");
          Nat z = nat_of(eval(*n.last, env), n.last->pos, "range element");
          return eval_range(x, y, z, e.pos);
        } else if constexpr (std::is_same_v<T, node::BigOp>) {
          return eval_big_op(n, env, e.pos);
        } else if constexpr (std::is_same_v<T, node::FnApp>) {
          const Definition* def = env.function(n.name.text);
          if (!def) eval_error(e.pos, "unbound function '" + n.name.text + "'");
          std::vector<Value> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) args.push_back(eval(*a, env));
          return apply_function(*def, args, env, e.pos);
        } else {
          // X[n], F[n:m], G[n:m]
          return Value::formula(expand_sugar(std::make_shared<const Expr>(e), env));
        }
      },
      e.node);
}

// ---------------------------------------------------------------- big stacks

namespace {

constexpr std::size_t kLargeStackBytes = std::size_t{1} << 30;

struct StackTask {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* stack_trampoline(void* arg) {
  auto* task = static_cast<StackTask*>(arg);
  try {
    (*task->fn)();
  } catch (...) {
    task->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_with_large_stack(const std::function<void()>& fn) {
  StackTask task{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kLargeStackBytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, stack_trampoline, &task);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();  // fall back to the current stack
    return;
  }
  pthread_join(thread, nullptr);
  if (task.error) std::rethrow_exception(task.error);
}

}  // namespace tlsf
