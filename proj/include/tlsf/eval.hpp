#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"

namespace tlsf {

class Value {
 public:
  enum class Kind { Nat, Bool, Set, Signal, Bus, Formula };

  static Value nat(Nat n);
  static Value boolean(bool b);
  /// Elements are sorted and deduplicated. Mixed boolean, signal and
  /// formula elements are all lifted to formulas.
  static Value set(std::vector<Value> elements);
  static Value signal(std::string name);
  static Value bus(std::string name, Nat width);
  static Value formula(Formula f);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  /// Bool, Signal and Formula values can all be used as formulas.
  bool is_formula_like() const;

  Nat as_nat() const { return nat_; }
  bool as_bool() const { return nat_ != 0; }
  const std::vector<Value>& elements() const { return elements_; }
  const std::string& name() const { return name_; }
  Nat width() const { return nat_; }

  /// `true`/`false`, the signal identifier, or the formula itself.
  Formula to_formula() const;

 private:
  Kind kind_ = Kind::Nat;
  Nat nat_ = 0;
  std::string name_;
  std::vector<Value> elements_;
  Formula formula_;
};

/// Total order used for set canonicalization; 0 iff the values are equal.
/// Formula-like values compare by their formula trees.
int compare(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);
std::string to_string(const Value& v);

const char* to_string(Value::Kind k);

/// Scalar name of bit `index` of bus `bus`: "b@i".
std::string bus_bit_name(std::string_view bus, Nat index);

/// Recursion bound for function application: TLSF_RECURSION_LIMIT when set,
/// 10000 otherwise.
std::size_t default_recursion_limit();

struct EvalOptions {
  std::size_t recursion_limit = default_recursion_limit();
};

/// Evaluation environment: global bindings of a specification plus a stack
/// of local frames. Globals are evaluated on first use and cached.
class Env {
 public:
  Env();
  explicit Env(const Spec& spec, std::map<std::string, Nat> overrides = {},
               EvalOptions options = {});
  ~Env();
  Env(Env&&) noexcept;
  Env& operator=(Env&&) noexcept;

  /// Adds a global binding (used by tests and by callers without a Spec).
  void bind(const std::string& name, Value v);
  /// Adds a function definition.
  void define(const Definition& def);

  Value lookup(const Ident& name);
  const Definition* function(const std::string& name) const;
  const EvalOptions& options() const;

  // Local scope handling.
  void push_frame();
  void pop_frame();
  void bind_local(const std::string& name, Value v);
  /// Number of bindings in the current frame; `restore` drops later ones.
  std::size_t mark() const;
  void restore(std::size_t mark);

  std::size_t depth() const;
  void enter_call(SourcePos pos);
  void leave_call();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Value eval(const Expr& e, Env& env);
Value eval(const ExprPtr& e, Env& env);

/// `{x, y .. z}` for x < y.
Value eval_range(Nat x, Nat y, Nat z, SourcePos pos = {});

/// Numeric domain of a range binder `lo (<|<=) id (<|<=) hi`.
std::vector<Nat> range_domain(Nat lo, bool lo_inclusive, Nat hi, bool hi_inclusive);

Value apply_function(const Definition& def, const std::vector<Value>& args, Env& env,
                     SourcePos pos = {});

/// Structural match of `subject` against `pattern`. Pattern identifiers
/// capture subtrees; a repeated identifier requires equal captures; `_`
/// matches anything and binds nothing.
std::optional<std::map<std::string, Formula>> match_pattern(const Formula& subject,
                                                            const Expr& pattern);

/// Big operator over already evaluated binder domains. Binder domains that
/// are expressions depending on earlier binders are handled by `eval`.
Value expand_big_op(BigOpKind kind, const std::vector<std::pair<std::string, Value>>& binders,
                    const Expr& body, Env& env, SourcePos pos = {});

/// Rewrites one layer of syntactic sugar: X[n], F[n:m] and G[n:m] become
/// plain X / && / || formulas over the body (which is evaluated), and range
/// binders of a big operator become membership in a set range. Any other
/// expression is returned unchanged.
ExprPtr expand_sugar(const ExprPtr& e, Env& env);

/// Runs `fn` on a thread with a large stack so deep recursion in evaluation
/// and formula rewriting does not overflow the default stack. Exceptions
/// propagate to the caller.
void run_with_large_stack(const std::function<void()>& fn);

}  // namespace tlsf
