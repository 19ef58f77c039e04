#include "tlsf/semantics.hpp"

#include <set>

namespace tlsf {

namespace {

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  const auto* b = f->as<node::Binary>();
  if (b && b->op == BinaryOp::And) {
    collect_conjuncts(b->lhs, out);
    collect_conjuncts(b->rhs, out);
  } else {
    out.push_back(f);
  }
}

// Boolean connectives over atoms and constants, where one X may be applied
// to a propositional subformula: a relation between two adjacent steps.
bool is_step_invariant(const Expr& f, bool under_next = false) {
  if (f.is<node::Id>() || f.is<node::BoolConst>()) return true;
  if (const auto* u = f.as<node::Unary>()) {
    if (u->op == UnaryOp::Next) return !under_next && is_step_invariant(*u->arg, true);
    return u->op == UnaryOp::Neg && is_step_invariant(*u->arg, under_next);
  }
  if (const auto* b = f.as<node::Binary>()) {
    return !is_temporal(b->op) && is_step_invariant(*b->lhs, under_next) &&
           is_step_invariant(*b->rhs, under_next);
  }
  return false;
}

Formula wrap_atoms(const Formula& f, const std::set<std::string>& names) {
  if (const auto* id = f->as<node::Id>()) return names.count(id->name.text) ? f_next(f) : f;
  if (const auto* u = f->as<node::Unary>()) return make_unary(u->op, wrap_atoms(u->arg, names));
  if (const auto* b = f->as<node::Binary>()) {
    return make_binary(b->op, wrap_atoms(b->lhs, names), wrap_atoms(b->rhs, names));
  }
  return f;
}

std::vector<Formula> wrap_all(const std::vector<Formula>& fs, const std::set<std::string>& names) {
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(wrap_atoms(f, names));
  return out;
}

}  // namespace

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect_conjuncts(f, out);
  return out;
}

bool has_temporal(const Expr& f) {
  if (const auto* u = f.as<node::Unary>()) return is_temporal(u->op) || has_temporal(*u->arg);
  if (const auto* b = f.as<node::Binary>()) {
    return is_temporal(b->op) || has_temporal(*b->lhs) || has_temporal(*b->rhs);
  }
  return false;
}

Formula assemble_standard(const BasicSpec& b) {
  std::vector<Formula> consequent;
  if (!b.invariants.empty()) consequent.push_back(f_globally(conjunction(b.invariants)));
  if (!b.guarantees.empty()) consequent.push_back(conjunction(b.guarantees));
  Formula system = conjunction(consequent);
  if (b.assumptions.empty()) return system;
  return f_implies(conjunction(b.assumptions), system);
}

EnvironmentSplit classify_assumptions(const std::vector<Formula>& assumptions) {
  std::vector<Formula> theta, psi, phi;
  for (const auto& a : assumptions) {
    for (const auto& c : conjuncts(a)) {
      const auto* g = c->as<node::Unary>();
      if (!has_temporal(*c)) {
        theta.push_back(c);
      } else if (g && g->op == UnaryOp::Globally && is_step_invariant(*g->arg)) {
        psi.push_back(g->arg);
      } else {
        phi.push_back(c);
      }
    }
  }
  return {conjunction(theta), conjunction(psi), conjunction(phi)};
}

StrictDecomposition decompose_strict(const BasicSpec& b) {
  EnvironmentSplit env = classify_assumptions(b.assumptions);
  std::vector<Formula> theta_s, phi_s;
  for (const auto& g : b.guarantees) {
    for (const auto& c : conjuncts(g)) (has_temporal(*c) ? phi_s : theta_s).push_back(c);
  }
  return {env.theta, env.psi, env.phi, conjunction(theta_s), conjunction(b.invariants),
          conjunction(phi_s)};
}

Formula to_nonstrict(const BasicSpec& b) {
  StrictDecomposition d = decompose_strict(b);
  Formula safety = f_weak_until(d.psi_s, f_not(d.psi_e));
  Formula live = f_implies(f_and(f_globally(d.psi_e), d.phi_e), f_and(f_globally(d.psi_s), d.phi_s));
  return f_implies(d.theta_e, f_and(f_and(d.theta_s, safety), live));
}

BasicSpec convert_target(const BasicSpec& b, Target to) {
  Target from = model_of(b.info.semantics);
  if (from == to) return b;
  BasicSpec out = b;
  out.info.target = to;
  const auto& side = from == Target::Moore ? b.inputs : b.outputs;
  std::set<std::string> names(side.begin(), side.end());
  out.assumptions = wrap_all(b.assumptions, names);
  out.invariants = wrap_all(b.invariants, names);
  out.guarantees = wrap_all(b.guarantees, names);
  out.info.semantics = with_model(b.info.semantics, to);
  return out;
}

Formula interpret(const BasicSpec& b) {
  BasicSpec aligned = convert_target(b, b.info.target);
  if (is_strict(aligned.info.semantics)) return to_nonstrict(aligned);
  return assemble_standard(aligned);
}

}  // namespace tlsf
