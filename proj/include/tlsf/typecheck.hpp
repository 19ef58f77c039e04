#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"

namespace tlsf {

/// Expression types. `Var` stands for a type that is not known yet (an
/// argument of a function that is checked without a call site, or the
/// result of a recursive call still being instantiated); it is compatible
/// with every other type.
class Ty {
 public:
  enum class Kind { Signal, Bus, Nat, Bool, Ltl, Set, Var };

  static Ty signal() { return Ty(Kind::Signal); }
  static Ty bus() { return Ty(Kind::Bus); }
  static Ty nat() { return Ty(Kind::Nat); }
  static Ty boolean() { return Ty(Kind::Bool); }
  static Ty ltl() { return Ty(Kind::Ltl); }
  static Ty var() { return Ty(Kind::Var); }
  static Ty set_of(Ty element);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  /// Element type; only meaningful for sets.
  const Ty& element() const { return *element_; }

  friend bool operator==(const Ty& a, const Ty& b);

 private:
  explicit Ty(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const Ty> element_;
};

std::string to_string(const Ty& t);

/// `a ⊑ b`: equality, Bool ⊑ Ltl, Signal ⊑ Ltl, covariant sets, and Var on
/// either side.
bool is_subtype(const Ty& a, const Ty& b);

/// Least common supertype, if any (used for set literals and function cases).
std::optional<Ty> join(const Ty& a, const Ty& b);

/// One observed instantiation of a function.
struct FunctionSignature {
  std::string name;
  std::vector<Ty> args;
  Ty result;
};

class TypeEnv {
 public:
  /// Parameters, plain definitions, signals and buses.
  std::map<std::string, Ty> bindings;
  /// Function definitions by name.
  std::map<std::string, Definition> functions;
  /// Instantiations seen while checking, in first-use order.
  std::vector<FunctionSignature> instantiations;

  std::optional<Ty> lookup(const std::string& name) const;
  const Definition* function(const std::string& name) const;
  /// First recorded instantiation of `name`, if any.
  const FunctionSignature* signature(const std::string& name) const;
};

/// Type of `e` under `env`. Function applications are instantiated at the
/// argument types of the call.
Ty infer(const Expr& e, const TypeEnv& env);

/// Checks a whole specification and returns the environment it defines.
TypeEnv check_spec(const Spec& spec);

}  // namespace tlsf
