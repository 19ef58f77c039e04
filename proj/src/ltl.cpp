#include "tlsf/ltl.hpp"

namespace tlsf {

namespace {

const node::Unary* unary(const Formula& f, UnaryOp op) {
  const auto* u = f->as<node::Unary>();
  return u && u->op == op ? u : nullptr;
}

const node::Binary* binary(const Formula& f, BinaryOp op) {
  const auto* b = f->as<node::Binary>();
  return b && b->op == op ? b : nullptr;
}

bool is_literal_const(const Formula& f, bool value) {
  const auto* b = f->as<node::BoolConst>();
  return b && b->value == value;
}

// Rebuilds `f` with its children mapped by `fn`.
template <class Fn>
Formula map_children(const Formula& f, Fn&& fn) {
  if (const auto* u = f->as<node::Unary>()) return make_unary(u->op, fn(u->arg), f->pos);
  if (const auto* b = f->as<node::Binary>()) {
    return make_binary(b->op, fn(b->lhs), fn(b->rhs), f->pos);
  }
  return f;
}

// ---------------------------------------------------------------- derived

Formula core_not(Formula a) { return f_not(std::move(a)); }

Formula core_finally(Formula a) { return f_until(make_bool(true), std::move(a)); }

Formula core_globally(Formula a) { return core_not(core_finally(core_not(std::move(a)))); }

Formula core_and(Formula a, Formula b) {
  return core_not(f_or(core_not(std::move(a)), core_not(std::move(b))));
}

Formula core_implies(Formula a, Formula b) { return f_or(core_not(std::move(a)), std::move(b)); }

Formula derived(const Formula& f) {
  if (is_literal_const(f, false)) return core_not(make_bool(true));
  Formula g = map_children(f, derived);
  if (const auto* u = g->as<node::Unary>()) {
    switch (u->op) {
      case UnaryOp::Finally: return core_finally(u->arg);
      case UnaryOp::Globally: return core_globally(u->arg);
      default: return g;
    }
  }
  if (const auto* b = g->as<node::Binary>()) {
    switch (b->op) {
      case BinaryOp::And: return core_and(b->lhs, b->rhs);
      case BinaryOp::Implies: return core_implies(b->lhs, b->rhs);
      case BinaryOp::Equiv:
        return core_and(core_implies(b->lhs, b->rhs), core_implies(b->rhs, b->lhs));
      case BinaryOp::Release:
        return core_not(f_until(core_not(b->lhs), core_not(b->rhs)));
      case BinaryOp::WeakUntil:
        return f_or(f_until(b->lhs, b->rhs), core_globally(b->lhs));
      default: return g;
    }
  }
  return g;
}

// ---------------------------------------------------------------- nnf

Formula nnf(const Formula& f, bool negate);

Formula nnf_binary(BinaryOp op, const Formula& l, const Formula& r, bool negate) {
  switch (op) {
    case BinaryOp::And:
    case BinaryOp::Or: {
      BinaryOp out = (op == BinaryOp::And) != negate ? BinaryOp::And : BinaryOp::Or;
      return make_binary(out, nnf(l, negate), nnf(r, negate));
    }
    case BinaryOp::Implies:
      // a -> b == !a || b
      return negate ? f_and(nnf(l, false), nnf(r, true)) : f_or(nnf(l, true), nnf(r, false));
    case BinaryOp::Equiv:
      // a <-> b == (a && b) || (!a && !b); negated: (a && !b) || (!a && b)
      return f_or(f_and(nnf(l, false), nnf(r, negate)), f_and(nnf(l, true), nnf(r, !negate)));
    case BinaryOp::Until:
      return negate ? f_release(nnf(l, true), nnf(r, true)) : f_until(nnf(l, false), nnf(r, false));
    case BinaryOp::Release:
      return negate ? f_until(nnf(l, true), nnf(r, true)) : f_release(nnf(l, false), nnf(r, false));
    case BinaryOp::WeakUntil:
      // !(a W b) == !b U (!a && !b)
      if (negate) return f_until(nnf(r, true), f_and(nnf(l, true), nnf(r, true)));
      return f_weak_until(nnf(l, false), nnf(r, false));
    default:
      throw Error(ErrorKind::Internal, {}, "non-formula operator in NNF conversion");
  }
}

Formula nnf(const Formula& f, bool negate) {
  if (const auto* c = f->as<node::BoolConst>()) {
    return negate ? make_bool(!c->value, f->pos) : f;
  }
  if (f->is<node::Id>()) return negate ? f_not(f) : f;
  if (const auto* u = f->as<node::Unary>()) {
    switch (u->op) {
      case UnaryOp::Neg: return nnf(u->arg, !negate);
      case UnaryOp::Next: return f_next(nnf(u->arg, negate));
      case UnaryOp::Finally:
        return negate ? f_globally(nnf(u->arg, true)) : f_finally(nnf(u->arg, false));
      case UnaryOp::Globally:
        return negate ? f_finally(nnf(u->arg, true)) : f_globally(nnf(u->arg, false));
      default: break;
    }
  }
  if (const auto* b = f->as<node::Binary>()) return nnf_binary(b->op, b->lhs, b->rhs, negate);
  throw Error(ErrorKind::Internal, f->pos, "non-formula node in NNF conversion");
}

// ---------------------------------------------------------------- next

// X applied to an already pushed formula.
Formula distribute_next(const Formula& f) {
  if (const auto* u = f->as<node::Unary>()) {
    return make_unary(u->op, distribute_next(u->arg));
  }
  if (const auto* b = f->as<node::Binary>()) {
    return make_binary(b->op, distribute_next(b->lhs), distribute_next(b->rhs));
  }
  return f_next(f);
}

Formula push_next_rec(const Formula& f) {
  Formula g = map_children(f, push_next_rec);
  if (const auto* u = unary(g, UnaryOp::Next)) {
    if (u->arg->is<node::Unary>() || u->arg->is<node::Binary>()) return distribute_next(u->arg);
  }
  return g;
}

// Rebuilds an operator node over already pulled children, moving a shared
// leading X outwards.
Formula pull_node(const Formula& f) {
  if (const auto* u = f->as<node::Unary>()) {
    if (u->op == UnaryOp::Next) return f;
    if (const auto* inner = unary(u->arg, UnaryOp::Next)) {
      return f_next(pull_node(make_unary(u->op, inner->arg)));
    }
    return f;
  }
  if (const auto* b = f->as<node::Binary>()) {
    const auto* l = unary(b->lhs, UnaryOp::Next);
    const auto* r = unary(b->rhs, UnaryOp::Next);
    if (l && r) return f_next(pull_node(make_binary(b->op, l->arg, r->arg)));
  }
  return f;
}

Formula pull_next_rec(const Formula& f) { return pull_node(map_children(f, pull_next_rec)); }

// ---------------------------------------------------------------- G / F

Formula distribute(UnaryOp op, BinaryOp over, const Formula& f) {
  if (const auto* b = binary(f, over)) {
    return make_binary(over, distribute(op, over, b->lhs), distribute(op, over, b->rhs));
  }
  if (unary(f, op)) return f;
  return make_unary(op, f);
}

Formula push_unary(UnaryOp op, BinaryOp over, const Formula& f) {
  Formula g = map_children(f, [&](const Formula& c) { return push_unary(op, over, c); });
  if (const auto* u = unary(g, op)) return distribute(op, over, u->arg);
  return g;
}

}  // namespace

Formula expand_derived(const Formula& f) { return derived(f); }

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula push_next(const Formula& f) { return push_next_rec(f); }

Formula pull_next(const Formula& f) { return pull_next_rec(f); }

Formula push_globally(const Formula& f) {
  return push_unary(UnaryOp::Globally, BinaryOp::And, f);
}

Formula push_eventually(const Formula& f) {
  return push_unary(UnaryOp::Finally, BinaryOp::Or, f);
}

bool is_core(const Expr& f) {
  if (const auto* c = f.as<node::BoolConst>()) return c->value;
  if (f.is<node::Id>()) return true;
  if (const auto* u = f.as<node::Unary>()) {
    return (u->op == UnaryOp::Neg || u->op == UnaryOp::Next) && is_core(*u->arg);
  }
  if (const auto* b = f.as<node::Binary>()) {
    return (b->op == BinaryOp::Or || b->op == BinaryOp::Until) && is_core(*b->lhs) &&
           is_core(*b->rhs);
  }
  return false;
}

bool is_nnf(const Expr& f) {
  if (const auto* u = f.as<node::Unary>()) {
    if (u->op == UnaryOp::Neg) return u->arg->is<node::Id>();
    return is_nnf(*u->arg);
  }
  if (const auto* b = f.as<node::Binary>()) {
    if (b->op == BinaryOp::Implies || b->op == BinaryOp::Equiv) return false;
    return is_nnf(*b->lhs) && is_nnf(*b->rhs);
  }
  return true;
}

std::size_t formula_size(const Expr& f) {
  if (const auto* u = f.as<node::Unary>()) return 1 + formula_size(*u->arg);
  if (const auto* b = f.as<node::Binary>()) return 1 + formula_size(*b->lhs) + formula_size(*b->rhs);
  return 1;
}

}  // namespace tlsf
