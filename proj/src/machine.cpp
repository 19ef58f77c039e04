#include "tlsf/machine.hpp"

#include <map>

#include "tlsf/reduce.hpp"

namespace tlsf {

namespace {

std::uint64_t mask_of(const std::vector<std::string>& names, const Letter& letter) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (letter.count(names[i])) m |= std::uint64_t{1} << i;
  }
  return m;
}

Machine skeleton(Target kind, std::vector<std::string> inputs, std::vector<std::string> outputs,
                 std::size_t states, std::size_t initial, const Machine::Step& step) {
  if (inputs.size() > 16 || outputs.size() > 64) {
    throw Error(ErrorKind::Usage, {}, "machine alphabet too large");
  }
  Machine m;
  m.kind = kind;
  m.inputs = std::move(inputs);
  m.outputs = std::move(outputs);
  m.states = states;
  m.initial = initial;
  const std::size_t letters = std::size_t{1} << m.inputs.size();
  m.delta.assign(states, std::vector<std::size_t>(letters));
  for (std::size_t q = 0; q < states; ++q) {
    for (std::size_t a = 0; a < letters; ++a) {
      m.delta[q][a] = step(q, detail::letter_of(m.inputs, a));
    }
  }
  return m;
}

}  // namespace

Machine Machine::mealy(std::vector<std::string> inputs, std::vector<std::string> outputs,
                       std::size_t states, std::size_t initial, const Step& delta,
                       const MealyOut& out) {
  Machine m = skeleton(Target::Mealy, std::move(inputs), std::move(outputs), states, initial,
                       delta);
  const std::size_t letters = std::size_t{1} << m.inputs.size();
  m.mealy_out.assign(states, std::vector<std::uint64_t>(letters));
  for (std::size_t q = 0; q < states; ++q) {
    for (std::size_t a = 0; a < letters; ++a) {
      m.mealy_out[q][a] = mask_of(m.outputs, out(q, detail::letter_of(m.inputs, a)));
    }
  }
  m.validate();
  return m;
}

Machine Machine::moore(std::vector<std::string> inputs, std::vector<std::string> outputs,
                       std::size_t states, std::size_t initial, const Step& delta,
                       const MooreOut& out) {
  Machine m = skeleton(Target::Moore, std::move(inputs), std::move(outputs), states, initial,
                       delta);
  m.moore_out.resize(states);
  for (std::size_t q = 0; q < states; ++q) m.moore_out[q] = mask_of(m.outputs, out(q));
  m.validate();
  return m;
}

void Machine::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::Usage, {}, msg); };
  if (states == 0) fail("machine without states");
  if (initial >= states) fail("initial state out of range");
  const std::size_t letters = std::size_t{1} << inputs.size();
  if (delta.size() != states) fail("transition table is not total");
  for (const auto& row : delta) {
    if (row.size() != letters) fail("transition table is not total");
    for (std::size_t q : row) {
      if (q >= states) fail("transition to an unknown state");
    }
  }
  if (kind == Target::Mealy) {
    if (mealy_out.size() != states) fail("output table is not total");
    for (const auto& row : mealy_out) {
      if (row.size() != letters) fail("output table is not total");
    }
  } else if (moore_out.size() != states) {
    fail("output table is not total");
  }
  for (const auto& i : inputs) {
    for (const auto& o : outputs) {
      if (i == o) fail("signal '" + i + "' is both an input and an output");
    }
  }
}

LassoWord run_machine(const Machine& m, const LassoWord& input) {
  if (input.loop.empty()) throw Error(ErrorKind::Eval, {}, "lasso word with an empty loop");
  std::size_t q = m.initial;
  auto step = [&](const Letter& in) {
    std::uint64_t a = mask_of(m.inputs, in);
    std::uint64_t o = m.kind == Target::Mealy ? m.mealy_out[q][a] : m.moore_out[q];
    Letter out = in;
    for (std::size_t i = 0; i < m.outputs.size(); ++i) {
      if (o & (std::uint64_t{1} << i)) out.insert(m.outputs[i]);
    }
    q = m.delta[q][a];
    return out;
  };

  LassoWord out;
  for (const auto& in : input.prefix) out.prefix.push_back(step(in));
  // Unroll the loop until the state at the start of an iteration repeats.
  std::map<std::size_t, std::size_t> seen;  // state -> iteration
  std::vector<std::vector<Letter>> iterations;
  while (!seen.count(q)) {
    seen[q] = iterations.size();
    std::vector<Letter> it;
    for (const auto& in : input.loop) it.push_back(step(in));
    iterations.push_back(std::move(it));
  }
  std::size_t start = seen[q];
  for (std::size_t k = 0; k < iterations.size(); ++k) {
    auto& part = k < start ? out.prefix : out.loop;
    part.insert(part.end(), iterations[k].begin(), iterations[k].end());
  }
  return out;
}

bool check_machine(const Machine& m, const Formula& f, std::size_t k, LassoWord* counterexample) {
  if (k < 1) throw Error(ErrorKind::Usage, {}, "bound must be at least 1");
  m.validate();
  std::set<std::string> alphabet(m.inputs.begin(), m.inputs.end());
  alphabet.insert(m.outputs.begin(), m.outputs.end());
  for (const auto& a : atoms(*f)) {
    if (!alphabet.count(a)) {
      throw Error(ErrorKind::Eval, {},
                  "formula refers to '" + a + "', which the machine neither reads nor writes");
    }
  }
  return for_each_lasso(m.inputs, k, [&](const LassoWord& in) {
    if (eval_lasso(f, run_machine(m, in), 0, alphabet)) return true;
    if (counterexample) *counterexample = in;
    return false;
  });
}

}  // namespace tlsf
