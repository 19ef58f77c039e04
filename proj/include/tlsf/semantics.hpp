#pragma once

#include <vector>

#include "tlsf/reduce.hpp"

namespace tlsf {

/// Environment assumptions split into an initial constraint, the body of
/// a safety constraint G ψ and a liveness remainder.
struct EnvironmentSplit {
  Formula theta;
  Formula psi;
  Formula phi;
};

/// Components of a strict specification.
struct StrictDecomposition {
  Formula theta_e, psi_e, phi_e;
  Formula theta_s, psi_s, phi_s;
};

/// (⋀ assumptions) -> ((G ⋀ invariants) && ⋀ guarantees). Empty parts are
/// dropped; the result is `true` when all sections are empty.
Formula assemble_standard(const BasicSpec& b);

/// Routes the top-level conjuncts of the assumptions: formulas without
/// temporal operators go to θ, G β with β a boolean combination of atoms
/// and X-prefixed atoms go to ψ (as β), everything else to φ.
EnvironmentSplit classify_assumptions(const std::vector<Formula>& assumptions);

/// ψ_s is the conjunction of the invariants; θ_s collects the guarantee
/// conjuncts without temporal operators and φ_s the others.
StrictDecomposition decompose_strict(const BasicSpec& b);

/// θe -> ((θs && (ψs W !ψe)) && ((G ψe && φe) -> (G ψs && φs)))
Formula to_nonstrict(const BasicSpec& b);

/// Moore -> Mealy puts one X above every input occurrence, Mealy -> Moore
/// above every output occurrence. The model component of SEMANTICS and the
/// TARGET field become `to`; strictness is kept.
BasicSpec convert_target(const BasicSpec& b, Target to);

/// The single LTL formula the specification denotes: the semantics model
/// is aligned with the target, then the strict or the standard reading is
/// applied.
Formula interpret(const BasicSpec& b);

/// Top-level conjuncts of `f` (the operands of nested &&, left to right).
std::vector<Formula> conjuncts(const Formula& f);

/// Whether `f` contains X, F, G, U, R or W.
bool has_temporal(const Expr& f);

}  // namespace tlsf
