#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"
#include "tlsf/lasso.hpp"

namespace tlsf {

/// A finite Mealy or Moore automaton over letters 2^I (inputs) and 2^O
/// (outputs). Letters are stored as bit masks in declaration order.
struct Machine {
  Target kind = Target::Mealy;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::size_t states = 1;
  std::size_t initial = 0;
  std::vector<std::vector<std::size_t>> delta;         // [state][input mask]
  std::vector<std::vector<std::uint64_t>> mealy_out;   // [state][input mask]
  std::vector<std::uint64_t> moore_out;                // [state]

  using Step = std::function<std::size_t(std::size_t state, const Letter& in)>;
  using MealyOut = std::function<Letter(std::size_t state, const Letter& in)>;
  using MooreOut = std::function<Letter(std::size_t state)>;

  static Machine mealy(std::vector<std::string> inputs, std::vector<std::string> outputs,
                       std::size_t states, std::size_t initial, const Step& delta,
                       const MealyOut& out);
  static Machine moore(std::vector<std::string> inputs, std::vector<std::string> outputs,
                       std::size_t states, std::size_t initial, const Step& delta,
                       const MooreOut& out);

  /// Throws unless the tables are total and consistent.
  void validate() const;
};

/// Combined input/output word of the run on `input`. Letter i holds the
/// input letter i and the output produced at step i.
LassoWord run_machine(const Machine& m, const LassoWord& input);

/// True iff every input lasso with |u| + |v| <= k yields a run satisfying
/// `f` at position 0. On failure the offending input word is stored in
/// `counterexample` when given. Throws when `f` mentions a signal that is
/// neither an input nor an output of `m`.
bool check_machine(const Machine& m, const Formula& f, std::size_t k,
                   LassoWord* counterexample = nullptr);

}  // namespace tlsf
