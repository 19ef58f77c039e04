#pragma once

#include "tlsf/ast.hpp"

namespace tlsf {

// Formula rewrites. All of them take and return ground formulas, work
// bottom-up and are applied to a fixpoint.

/// Rewrites &&, ->, <->, F, G, R, W and `false` into the core operators
/// !, ||, X, U, `true` and atoms.
Formula expand_derived(const Formula& f);

/// Negation normal form: negations only directly above atoms. -> and <->
/// are eliminated; every other operator is kept.
Formula to_nnf(const Formula& f);

/// X distributed over every boolean connective and temporal operator, so
/// that X only applies to atoms, constants and other X.
Formula push_next(const Formula& f);

/// Inverse of push_next: an operator whose operands all start with X is
/// rewritten to X of the operator.
Formula pull_next(const Formula& f);

/// G(a && b) -> G a && G b, and G G a -> G a.
Formula push_globally(const Formula& f);

/// F(a || b) -> F a || F b, and F F a -> F a.
Formula push_eventually(const Formula& f);

/// Whether only !, ||, X, U, `true` and atoms occur.
bool is_core(const Expr& f);

/// Whether every negation applies to an atom and no -> / <-> occurs.
bool is_nnf(const Expr& f);

/// Number of nodes.
std::size_t formula_size(const Expr& f);

}  // namespace tlsf
