#pragma once

#include <set>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"

namespace tlsf {

/// One letter: the set of atomic propositions that hold.
using Letter = std::set<std::string>;

/// The ultimately periodic word u v^ω. The loop must be nonempty.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;

  std::size_t size() const { return prefix.size() + loop.size(); }
  /// Letter at an arbitrary position of the infinite word.
  const Letter& at(std::size_t position) const;
  /// Position in [0, size()) that reads the same suffix as `position`.
  std::size_t normalize(std::size_t position) const;
};

std::string to_string(const LassoWord& w);

/// α, i ⊨ φ. Until is decided by scanning forward from i; since positions
/// repeat with the period of the loop, |u| + 2|v| positions suffice.
/// Throws if φ mentions an atom that `atoms` does not list (when `atoms` is
/// nonempty) or if the loop is empty.
bool eval_lasso(const Formula& f, const LassoWord& w, std::size_t position = 0,
                const std::set<std::string>& atoms = {});

/// Calls `fn` on every lasso with 1 <= |u| + |v| <= max_size over the
/// given atoms (letters are all subsets). Stops early when `fn` returns
/// false; returns false in that case.
template <class Fn>
bool for_each_lasso(const std::vector<std::string>& atoms, std::size_t max_size, Fn&& fn);

// ---------------------------------------------------------------- details

namespace detail {
Letter letter_of(const std::vector<std::string>& atoms, std::size_t mask);
}

template <class Fn>
bool for_each_lasso(const std::vector<std::string>& atoms, std::size_t max_size, Fn&& fn) {
  const std::size_t letters = std::size_t{1} << atoms.size();
  std::vector<Letter> alphabet;
  for (std::size_t m = 0; m < letters; ++m) alphabet.push_back(detail::letter_of(atoms, m));
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::vector<std::size_t> digits(n, 0);
    for (;;) {
      for (std::size_t split = 0; split < n; ++split) {
        LassoWord w;
        for (std::size_t i = 0; i < n; ++i) {
          (i < split ? w.prefix : w.loop).push_back(alphabet[digits[i]]);
        }
        if (!fn(static_cast<const LassoWord&>(w))) return false;
      }
      std::size_t i = 0;
      while (i < n && ++digits[i] == letters) digits[i++] = 0;
      if (i == n) break;
    }
  }
  return true;
}

}  // namespace tlsf
