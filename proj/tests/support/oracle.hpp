#pragma once

// Test-side oracles. Nothing here shares code with the library's
// evaluators: satisfaction is computed by fixpoint iteration over all
// words of a lasso shape at once, one bit per word.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tlsf/ast.hpp"
#include "tlsf/lasso.hpp"

namespace tlsf::testing {

using Bits = std::vector<std::uint64_t>;

/// Every lasso of one shape (|u| = prefix, |v| = loop) over `atoms`, one
/// word per bit. Word w reads atom a at position p iff bit p*|atoms|+a of w
/// is set.
class ShapeOracle {
 public:
  ShapeOracle(std::vector<std::string> atoms, std::size_t prefix, std::size_t loop);

  std::size_t words() const { return words_; }
  /// Satisfaction at position 0, one bit per word.
  Bits sat(const Expr& f) const;
  /// The lasso encoded by word `w`.
  LassoWord word(std::size_t w) const;

 private:
  std::vector<Bits> eval(const Expr& f) const;
  Bits atom_bits(std::size_t position, std::size_t atom) const;
  std::size_t succ(std::size_t p) const { return p + 1 < n_ ? p + 1 : prefix_; }

  std::vector<std::string> atoms_;
  std::size_t prefix_, loop_, n_;
  std::size_t words_;
  std::size_t blocks_;
  std::uint64_t tail_mask_;
};

/// First lasso (|u| + |v| <= max_size, over `atoms`) on which `a` and `b`
/// differ at position 0, if any.
std::optional<LassoWord> find_difference(const Formula& a, const Formula& b,
                                         const std::vector<std::string>& atoms,
                                         std::size_t max_size);

/// Whether `f` holds at position 0 of `w`, computed by the fixpoint oracle.
bool oracle_holds(const Formula& f, const LassoWord& w, const std::vector<std::string>& atoms);

/// Random ground formulas over `atoms` with at most `depth` operator levels,
/// using every LTL operator and both constants.
class FormulaGen {
 public:
  FormulaGen(std::vector<std::string> atoms, std::uint64_t seed);
  Formula next(int depth);
  /// `count` pairwise distinct formulas.
  std::vector<Formula> corpus(std::size_t count, int depth);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::vector<std::string> atoms_;
  std::mt19937_64 rng_;
};

/// A random lasso over `atoms` with 1 <= |u| + |v| <= max_size.
LassoWord random_lasso(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                       std::size_t max_size);

/// Sorted atom names of `f`.
std::vector<std::string> atom_list(const Expr& f);

/// Random expression tree over every binary and prefix operator of the
/// operator table that the parser accepts in a section entry.
class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}
  ExprPtr next(int depth);

 private:
  std::mt19937_64 rng_;
};

/// Reads a file from the fixture directory.
std::string read_fixture(const std::string& relative);
std::string fixture_path(const std::string& relative);

}  // namespace tlsf::testing
