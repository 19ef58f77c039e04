#include "tlsf/typecheck.hpp"

#include <set>

namespace tlsf {

Ty Ty::set_of(Ty element) {
  Ty t(Kind::Set);
  t.element_ = std::make_shared<const Ty>(std::move(element));
  return t;
}

bool operator==(const Ty& a, const Ty& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Ty::Kind::Set) return true;
  return *a.element_ == *b.element_;
}

std::string to_string(const Ty& t) {
  switch (t.kind()) {
    case Ty::Kind::Signal: return "signal";
    case Ty::Kind::Bus: return "bus";
    case Ty::Kind::Nat: return "natural";
    case Ty::Kind::Bool: return "boolean";
    case Ty::Kind::Ltl: return "LTL formula";
    case Ty::Kind::Set: return "set of " + to_string(t.element());
    case Ty::Kind::Var: return "unknown";
  }
  return "?";
}

bool is_subtype(const Ty& a, const Ty& b) {
  using K = Ty::Kind;
  if (a.is(K::Var) || b.is(K::Var)) return true;
  if (a.is(K::Set) && b.is(K::Set)) return is_subtype(a.element(), b.element());
  if (a == b) return true;
  return b.is(K::Ltl) && (a.is(K::Bool) || a.is(K::Signal));
}

std::optional<Ty> join(const Ty& a, const Ty& b) {
  using K = Ty::Kind;
  if (a.is(K::Var)) return b;
  if (b.is(K::Var)) return a;
  if (a.is(K::Set) && b.is(K::Set)) {
    auto inner = join(a.element(), b.element());
    if (!inner) return std::nullopt;
    return Ty::set_of(*inner);
  }
  if (a == b) return a;
  if (is_subtype(a, Ty::ltl()) && is_subtype(b, Ty::ltl())) return Ty::ltl();
  return std::nullopt;
}

std::optional<Ty> TypeEnv::lookup(const std::string& name) const {
  auto it = bindings.find(name);
  if (it == bindings.end()) return std::nullopt;
  return it->second;
}

const Definition* TypeEnv::function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

const FunctionSignature* TypeEnv::signature(const std::string& name) const {
  for (const auto& s : instantiations) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

using K = Ty::Kind;

// Instantiations nested deeper than this are given an unknown result type;
// evaluation enforces the real recursion bound.
constexpr int kMaxInstantiationDepth = 64;

[[noreturn]] void type_error(SourcePos pos, const std::string& message) {
  throw Error(ErrorKind::Type, pos, message);
}

std::string key_of(const std::string& name, const std::vector<Ty>& args) {
  std::string key = name + "(";
  for (const auto& a : args) key += to_string(a) + ",";
  return key + ")";
}

void collect_pattern_ids(const Expr& p, std::vector<const Ident*>& out) {
  if (const auto* id = p.as<node::Id>()) {
    out.push_back(&id->name);
  } else if (const auto* u = p.as<node::Unary>()) {
    collect_pattern_ids(*u->arg, out);
  } else if (const auto* b = p.as<node::Binary>()) {
    collect_pattern_ids(*b->lhs, out);
    collect_pattern_ids(*b->rhs, out);
  }
}

class Checker {
 public:
  explicit Checker(TypeEnv& env) : env_(env) {}

  void add_pending(const std::string& name, const Expr* body) { pending_[name] = body; }

  Ty resolve(const std::string& name, SourcePos use) {
    if (auto t = env_.lookup(name)) return *t;
    auto it = pending_.find(name);
    if (it == pending_.end()) type_error(use, "unbound identifier '" + name + "'");
    if (!resolving_.insert(name).second) {
      type_error(use, "cyclic definition of '" + name + "'");
    }
    auto saved = std::move(scope_);
    scope_.clear();
    Ty t = infer(*it->second);
    scope_ = std::move(saved);
    resolving_.erase(name);
    env_.bindings.emplace(name, t);
    pending_.erase(name);
    return t;
  }

  Ty infer(const Expr& e);

  Ty instantiate(const Definition& def, const std::vector<Ty>& args, SourcePos pos,
                 bool record);

 private:
  TypeEnv& env_;
  std::vector<std::pair<std::string, Ty>> scope_;
  std::map<std::string, const Expr*> pending_;
  std::set<std::string> resolving_;
  std::map<std::string, Ty> memo_;
  std::set<std::string> in_progress_;
  int depth_ = 0;

  std::optional<Ty> local(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    return std::nullopt;
  }

  Ty identifier(const Ident& name) {
    if (auto t = local(name.text)) return *t;
    if (!env_.lookup(name.text) && !pending_.count(name.text) && env_.function(name.text)) {
      type_error(name.pos, "function '" + name.text + "' used without arguments");
    }
    return resolve(name.text, name.pos);
  }

  Ty expect_sub(const Expr& e, const Ty& want, const char* what) {
    Ty t = infer(e);
    if (!is_subtype(t, want)) {
      type_error(e.pos, std::string(what) + " must be " + to_string(want) + ", found " +
                            to_string(t));
    }
    return t;
  }

  Ty expect_set(const Expr& e, const char* what) {
    Ty t = infer(e);
    if (t.is(K::Var)) return Ty::set_of(Ty::var());
    if (!t.is(K::Set)) {
      type_error(e.pos, std::string(what) + " must be a set, found " + to_string(t));
    }
    return t;
  }

  // Result of a boolean connective: Bool when every operand is Bool,
  // otherwise Ltl; unknown operands leave the choice open.
  Ty connective(const std::vector<const Expr*>& args, SourcePos pos, const char* op) {
    bool any_var = false, all_bool = true;
    for (const Expr* a : args) {
      Ty t = infer(*a);
      if (!is_subtype(t, Ty::ltl())) {
        type_error(a->pos, std::string("operand of ") + op +
                               " must be boolean or an LTL formula, found " + to_string(t));
      }
      if (t.is(K::Var)) any_var = true;
      if (!t.is(K::Bool) && !t.is(K::Var)) all_bool = false;
    }
    (void)pos;
    if (!all_bool) return Ty::ltl();
    return any_var ? Ty::var() : Ty::boolean();
  }

  Ty big_op(const node::BigOp& n, SourcePos pos);
  Ty unary(const node::Unary& n, SourcePos pos);
  Ty binary(const node::Binary& n, SourcePos pos);
};

Ty Checker::unary(const node::Unary& n, SourcePos pos) {
  switch (n.op) {
    case UnaryOp::Neg: return connective({n.arg.get()}, pos, "'!'");
    case UnaryOp::Next:
    case UnaryOp::Globally:
    case UnaryOp::Finally:
      expect_sub(*n.arg, Ty::ltl(), "operand of a temporal operator");
      return Ty::ltl();
    case UnaryOp::SetSize:
      expect_set(*n.arg, "operand of |.|");
      return Ty::nat();
    case UnaryOp::SetMin:
    case UnaryOp::SetMax: {
      Ty s = expect_set(*n.arg, "operand of MIN/MAX");
      if (!is_subtype(s.element(), Ty::nat())) {
        type_error(n.arg->pos, "MIN/MAX need a set of naturals, found " + to_string(s));
      }
      return Ty::nat();
    }
    case UnaryOp::SizeOf:
      expect_sub(*n.arg, Ty::bus(), "operand of SIZEOF");
      return Ty::nat();
  }
  return Ty::var();
}

Ty Checker::binary(const node::Binary& n, SourcePos pos) {
  switch (n.op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod:
      expect_sub(*n.lhs, Ty::nat(), "operand of an arithmetic operator");
      expect_sub(*n.rhs, Ty::nat(), "operand of an arithmetic operator");
      return Ty::nat();
    case BinaryOp::Eq:
    case BinaryOp::Neq:
    case BinaryOp::Lt:
    case BinaryOp::Leq:
    case BinaryOp::Gt:
    case BinaryOp::Geq:
      expect_sub(*n.lhs, Ty::nat(), "operand of a comparison");
      expect_sub(*n.rhs, Ty::nat(), "operand of a comparison");
      return Ty::boolean();
    case BinaryOp::And:
    case BinaryOp::Or:
    case BinaryOp::Implies:
    case BinaryOp::Equiv:
      return connective({n.lhs.get(), n.rhs.get()}, pos, to_string(n.op));
    case BinaryOp::Until:
    case BinaryOp::Release:
    case BinaryOp::WeakUntil:
      expect_sub(*n.lhs, Ty::ltl(), "operand of a temporal operator");
      expect_sub(*n.rhs, Ty::ltl(), "operand of a temporal operator");
      return Ty::ltl();
    case BinaryOp::In: {
      Ty elem = infer(*n.lhs);
      Ty set = expect_set(*n.rhs, "right operand of IN");
      if (!join(elem, set.element())) {
        type_error(pos, "cannot test membership of a " + to_string(elem) + " in a " +
                            to_string(set));
      }
      return Ty::boolean();
    }
    case BinaryOp::Cup:
    case BinaryOp::Cap:
    case BinaryOp::SetMinus: {
      Ty a = expect_set(*n.lhs, "operand of a set operator");
      Ty b = expect_set(*n.rhs, "operand of a set operator");
      auto j = join(a, b);
      if (!j) type_error(pos, "set operands differ: " + to_string(a) + " and " + to_string(b));
      return *j;
    }
    case BinaryOp::PatternMatch:
      type_error(pos, "pattern match outside a function guard");
    case BinaryOp::Guard:
      type_error(pos, "guard outside a function case");
  }
  return Ty::var();
}

Ty Checker::big_op(const node::BigOp& n, SourcePos pos) {
  std::size_t mark = scope_.size();
  for (const auto& b : n.binders) {
    Ty element = Ty::nat();
    if (b.is_range()) {
      expect_sub(*b.lower, Ty::nat(), "range bound");
      expect_sub(*b.upper, Ty::nat(), "range bound");
    } else {
      element = expect_set(*b.set, "binder domain").element();
    }
    scope_.emplace_back(b.name.text, element);
  }
  Ty result = Ty::var();
  switch (n.op) {
    case BigOpKind::Sum:
    case BigOpKind::Prod:
      expect_sub(*n.body, Ty::nat(), "body of a big sum/product");
      result = Ty::nat();
      break;
    case BigOpKind::Cup:
    case BigOpKind::Cap:
      result = expect_set(*n.body, "body of a big union/intersection");
      break;
    case BigOpKind::And:
    case BigOpKind::Or:
      result = connective({n.body.get()}, pos, "a big conjunction/disjunction");
      break;
  }
  scope_.erase(scope_.begin() + static_cast<std::ptrdiff_t>(mark), scope_.end());
  return result;
}

Ty Checker::infer(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Ty {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::NatConst>) {
          return Ty::nat();
        } else if constexpr (std::is_same_v<T, node::BoolConst>) {
          return Ty::boolean();
        } else if constexpr (std::is_same_v<T, node::Id>) {
          return identifier(n.name);
        } else if constexpr (std::is_same_v<T, node::Wildcard>) {
          type_error(e.pos, "wildcard '_' outside a pattern");
        } else if constexpr (std::is_same_v<T, node::BusIndex>) {
          Ty b = identifier(n.bus);
          if (!is_subtype(b, Ty::bus())) {
            type_error(e.pos, "'" + n.bus.text + "' is indexed but is a " + to_string(b) +
                                  ", not a bus");
          }
          expect_sub(*n.index, Ty::nat(), "bus index");
          return Ty::signal();
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          return unary(n, e.pos);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          return binary(n, e.pos);
        } else if constexpr (std::is_same_v<T, node::SetLiteral>) {
          Ty acc = Ty::var();
          for (const auto& el : n.elements) {
            Ty t = infer(*el);
            auto j = join(acc, t);
            if (!j) {
              type_error(el->pos, "heterogeneous set literal: " + to_string(acc) + " and " +
                                      to_string(t));
            }
            acc = *j;
          }
          return Ty::set_of(acc);
        } else if constexpr (std::is_same_v<T, node::SetRange>) {
          expect_sub(*n.first, Ty::nat(), "range element");
          expect_sub(*n.second, Ty::nat(), "range element");
          expect_sub(*n.last, Ty::nat(), "range element");
          return Ty::set_of(Ty::nat());
        } else if constexpr (std::is_same_v<T, node::BigOp>) {
          return big_op(n, e.pos);
        } else if constexpr (std::is_same_v<T, node::FnApp>) {
          if (local(n.name.text) || env_.lookup(n.name.text) || pending_.count(n.name.text)) {
            type_error(e.pos, "'" + n.name.text + "' is not a function");
          }
          const Definition* def = env_.function(n.name.text);
          if (!def) type_error(e.pos, "unbound function '" + n.name.text + "'");
          if (def->params.size() != n.args.size()) {
            type_error(e.pos, "'" + n.name.text + "' expects " +
                                  std::to_string(def->params.size()) + " argument(s), got " +
                                  std::to_string(n.args.size()));
          }
          std::vector<Ty> args;
          for (const auto& a : n.args) args.push_back(infer(*a));
          return instantiate(*def, args, e.pos, true);
        } else if constexpr (std::is_same_v<T, node::NextN>) {
          expect_sub(*n.count, Ty::nat(), "count of X[n]");
          expect_sub(*n.body, Ty::ltl(), "operand of X[n]");
          return Ty::ltl();
        } else {
          expect_sub(*n.from, Ty::nat(), "range bound");
          expect_sub(*n.to, Ty::nat(), "range bound");
          expect_sub(*n.body, Ty::ltl(), "operand of a bounded temporal operator");
          return Ty::ltl();
        }
      },
      e.node);
}

Ty Checker::instantiate(const Definition& def, const std::vector<Ty>& args, SourcePos pos,
                        bool record) {
  std::string key = key_of(def.name.text, args);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (in_progress_.count(key) || depth_ >= kMaxInstantiationDepth) return Ty::var();
  (void)pos;

  in_progress_.insert(key);
  ++depth_;
  auto saved = std::move(scope_);
  scope_.clear();
  for (std::size_t i = 0; i < def.params.size(); ++i) {
    scope_.emplace_back(def.params[i].text, args[i]);
  }

  std::optional<Ty> result;
  std::optional<Ty> first_case;
  for (const auto& c : def.cases) {
    std::size_t mark = scope_.size();
    if (c.guard_kind == GuardKind::Expr) {
      const auto* match = c.guard->as<node::Binary>();
      if (match && match->op == BinaryOp::PatternMatch) {
        expect_sub(*match->lhs, Ty::ltl(), "subject of a pattern match");
        std::vector<const Ident*> ids;
        collect_pattern_ids(*match->rhs, ids);
        for (const Ident* id : ids) {
          bool repeated = false;
          for (std::size_t k = mark; k < scope_.size(); ++k) {
            if (scope_[k].first == id->text) repeated = true;
          }
          if (repeated) continue;
          if (local(id->text) || env_.lookup(id->text) || pending_.count(id->text) ||
              env_.function(id->text)) {
            type_error(id->pos, "pattern identifier '" + id->text + "' is not fresh");
          }
          scope_.emplace_back(id->text, Ty::ltl());
        }
      } else {
        Ty g = infer(*c.guard);
        if (!g.is(K::Bool) && !g.is(K::Var)) {
          type_error(c.guard->pos, "guard must be boolean, found " + to_string(g));
        }
      }
    }
    Ty body = infer(*c.body);
    scope_.erase(scope_.begin() + static_cast<std::ptrdiff_t>(mark), scope_.end());
    if (!result) {
      result = body;
      first_case = body;
      continue;
    }
    auto j = join(*result, body);
    if (!j) {
      type_error(c.body->pos, "cases of '" + def.name.text + "' have different types: " +
                                  to_string(*first_case) + " and " + to_string(body));
    }
    result = *j;
  }

  scope_ = std::move(saved);
  --depth_;
  in_progress_.erase(key);
  Ty out = result.value_or(Ty::var());
  memo_.insert_or_assign(key, out);
  if (record) env_.instantiations.push_back(FunctionSignature{def.name.text, args, out});
  return out;
}

}  // namespace

Ty infer(const Expr& e, const TypeEnv& env) {
  TypeEnv scratch = env;
  Checker checker(scratch);
  return checker.infer(e);
}

TypeEnv check_spec(const Spec& spec) {
  TypeEnv env;
  Checker checker(env);

  std::map<std::string, SourcePos> declared;
  auto declare = [&](const Ident& name) {
    auto [it, fresh] = declared.emplace(name.text, name.pos);
    if (!fresh) {
      type_error(name.pos, "'" + name.text + "' is already declared at line " +
                               std::to_string(it->second.line));
    }
  };

  for (const auto& p : spec.parameters) {
    declare(p.name);
    checker.add_pending(p.name.text, p.value.get());
  }
  for (const auto& d : spec.definitions) {
    declare(d.name);
    if (d.is_function) {
      env.functions.emplace(d.name.text, d);
    } else {
      checker.add_pending(d.name.text, d.cases.front().body.get());
    }
  }
  for (const auto* group : {&spec.inputs, &spec.outputs}) {
    for (const auto& s : *group) {
      declare(s.name);
      env.bindings.emplace(s.name.text, s.is_bus() ? Ty::bus() : Ty::signal());
    }
  }

  for (const auto& p : spec.parameters) {
    Ty t = checker.resolve(p.name.text, p.name.pos);
    if (!t.is(K::Nat)) {
      type_error(p.value->pos, "parameter '" + p.name.text + "' must be a natural, found " +
                                   to_string(t));
    }
  }
  for (const auto& d : spec.definitions) {
    if (!d.is_function) checker.resolve(d.name.text, d.name.pos);
  }
  for (const auto* group : {&spec.inputs, &spec.outputs}) {
    for (const auto& s : *group) {
      if (!s.is_bus()) continue;
      Ty t = checker.infer(*s.width);
      if (!is_subtype(t, Ty::nat())) {
        type_error(s.width->pos, "width of bus '" + s.name.text + "' must be a natural, found " +
                                     to_string(t));
      }
    }
  }

  auto section = [&](const std::vector<ExprPtr>& entries, const char* name) {
    for (const auto& e : entries) {
      Ty t = checker.infer(*e);
      if (!is_subtype(t, Ty::ltl())) {
        type_error(e->pos, std::string(name) + " entries must be LTL formulas, found " +
                               to_string(t));
      }
    }
  };
  section(spec.assumptions, "ASSUMPTIONS");
  section(spec.invariants, "INVARIANTS");
  section(spec.guarantees, "GUARANTEES");

  // Functions never called from the main sections still have to be well
  // formed; their parameters are checked with unknown types.
  for (const auto& d : spec.definitions) {
    if (!d.is_function || env.signature(d.name.text)) continue;
    std::vector<Ty> unknown(d.params.size(), Ty::var());
    checker.instantiate(d, unknown, d.name.pos, false);
  }
  return env;
}

}  // namespace tlsf
