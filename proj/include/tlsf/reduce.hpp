#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"
#include "tlsf/eval.hpp"

namespace tlsf {

/// A specification in the basic format: scalar signals and ground LTL.
struct BasicSpec {
  Info info;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Formula> assumptions;
  std::vector<Formula> invariants;
  std::vector<Formula> guarantees;
};

/// Type checks `spec`, applies parameter overrides and evaluates every
/// high-level construct. Bus `b` of width n becomes the scalars b@0 .. b@n-1.
/// Errors raised while evaluating a section entry name the section and the
/// 1-based entry index.
BasicSpec elaborate(const Spec& spec, const std::map<std::string, Nat>& overrides = {},
                    EvalOptions options = {});

/// Whether `e` only uses boolean constants, identifiers, boolean
/// connectives and temporal operators.
bool is_ground(const Expr& e);

/// Names of the atomic propositions of a ground formula.
std::set<std::string> atoms(const Expr& e);

}  // namespace tlsf
