#include "tlsf/reduce.hpp"

#include <set>

#include "tlsf/typecheck.hpp"

namespace tlsf {

bool is_ground(const Expr& e) {
  if (e.is<node::BoolConst>() || e.is<node::Id>()) return true;
  if (const auto* u = e.as<node::Unary>()) return is_formula_unary(u->op) && is_ground(*u->arg);
  if (const auto* b = e.as<node::Binary>()) {
    return is_formula_binary(b->op) && is_ground(*b->lhs) && is_ground(*b->rhs);
  }
  return false;
}

namespace {

void collect_atoms(const Expr& e, std::set<std::string>& out) {
  if (const auto* id = e.as<node::Id>()) {
    out.insert(id->name.text);
  } else if (const auto* u = e.as<node::Unary>()) {
    collect_atoms(*u->arg, out);
  } else if (const auto* b = e.as<node::Binary>()) {
    collect_atoms(*b->lhs, out);
    collect_atoms(*b->rhs, out);
  }
}

struct Elaborator {
  const Spec& spec;
  Env env;
  BasicSpec out;
  std::map<std::string, std::string> owner;  // scalar name -> declaration

  void declare(const SignalDecl& decl, std::vector<std::string>& names) {
    Value v = env.lookup(decl.name);
    std::vector<std::string> scalars;
    if (v.is(Value::Kind::Bus)) {
      for (Nat i = 0; i < v.width(); ++i) scalars.push_back(bus_bit_name(decl.name.text, i));
    } else {
      scalars.push_back(decl.name.text);
    }
    for (auto& s : scalars) {
      auto [it, fresh] = owner.emplace(s, decl.name.text);
      if (!fresh) {
        throw Error(ErrorKind::Eval, decl.name.pos,
                    "signal name '" + s + "' of '" + decl.name.text + "' collides with '" +
                        it->second + "'");
      }
      names.push_back(std::move(s));
    }
  }

  void section(const char* title, const std::vector<ExprPtr>& entries,
               std::vector<Formula>& target) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const Expr& e = *entries[i];
      try {
        Value v = eval(e, env);
        if (!v.is_formula_like()) {
          throw Error(ErrorKind::Eval, e.pos,
                      std::string("evaluates to a ") + to_string(v.kind()) +
                          ", not a formula");
        }
        Formula f = v.to_formula();
        if (!is_ground(*f)) {
          throw Error(ErrorKind::Internal, e.pos, "evaluation left a non-ground formula");
        }
        std::set<std::string> used;
        collect_atoms(*f, used);
        for (const auto& a : used) {
          if (!owner.count(a)) {
            throw Error(ErrorKind::Eval, e.pos, "formula refers to undeclared signal '" + a + "'");
          }
        }
        target.push_back(std::move(f));
      } catch (const Error& err) {
        throw Error(err.kind(), err.pos().valid() ? err.pos() : e.pos,
                    std::string("in ") + title + " entry " + std::to_string(i + 1) + ": " +
                        err.message());
      }
    }
  }
};

}  // namespace

std::set<std::string> atoms(const Expr& e) {
  std::set<std::string> out;
  collect_atoms(e, out);
  return out;
}

BasicSpec elaborate(const Spec& spec, const std::map<std::string, Nat>& overrides,
                    EvalOptions options) {
  for (const auto& [name, value] : overrides) {
    bool known = false;
    for (const auto& p : spec.parameters) known = known || p.name.text == name;
    if (!known) {
      throw Error(ErrorKind::Usage, {}, "'" + name + "' is not a parameter of this specification");
    }
  }
  check_spec(spec);

  BasicSpec result;
  run_with_large_stack([&] {
    Elaborator el{spec, Env(spec, overrides, options), {}, {}};
    el.out.info = spec.info;
    for (const auto& d : spec.inputs) el.declare(d, el.out.inputs);
    for (const auto& d : spec.outputs) el.declare(d, el.out.outputs);
    el.section("ASSUMPTIONS", spec.assumptions, el.out.assumptions);
    el.section("INVARIANTS", spec.invariants, el.out.invariants);
    el.section("GUARANTEES", spec.guarantees, el.out.guarantees);
    result = std::move(el.out);
  });
  return result;
}

}  // namespace tlsf
