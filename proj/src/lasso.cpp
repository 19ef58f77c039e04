#include "tlsf/lasso.hpp"

#include <map>

namespace tlsf {

namespace detail {

Letter letter_of(const std::vector<std::string>& atoms, std::size_t mask) {
  Letter out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (mask & (std::size_t{1} << i)) out.insert(atoms[i]);
  }
  return out;
}

}  // namespace detail

std::size_t LassoWord::normalize(std::size_t position) const {
  if (position < prefix.size()) return position;
  return prefix.size() + (position - prefix.size()) % loop.size();
}

const Letter& LassoWord::at(std::size_t position) const {
  std::size_t p = normalize(position);
  return p < prefix.size() ? prefix[p] : loop[p - prefix.size()];
}

std::string to_string(const LassoWord& w) {
  auto letters = [](const std::vector<Letter>& part) {
    std::string out;
    for (const auto& l : part) {
      out += "{";
      bool first = true;
      for (const auto& a : l) {
        if (!first) out += ",";
        out += a;
        first = false;
      }
      out += "}";
    }
    return out;
  };
  return letters(w.prefix) + "(" + letters(w.loop) + ")^w";
}

namespace {

// Evaluates subformulas at normalized positions, memoizing per node.
class LassoEvaluator {
 public:
  LassoEvaluator(const LassoWord& w, const std::set<std::string>& atoms) : w_(w), atoms_(atoms) {}

  bool at(const Expr& f, std::size_t i) {
    i = w_.normalize(i);
    auto& row = memo_[&f];
    if (row.empty()) row.assign(w_.size(), -1);
    if (row[i] < 0) row[i] = compute(f, i) ? 1 : 0;
    return row[i] == 1;
  }

 private:
  std::size_t next(std::size_t i) const { return w_.normalize(i + 1); }

  // ∃n ≥ i. rhs at n and lhs on [i, n). Every suffix of the word is one of
  // size() suffixes, so a witness, if any, appears within size() steps.
  bool until(const Expr& lhs, const Expr& rhs, std::size_t i) {
    const std::size_t bound = w_.prefix.size() + 2 * w_.loop.size();
    for (std::size_t k = 0, j = i; k <= bound; ++k, j = next(j)) {
      if (at(rhs, j)) return true;
      if (!at(lhs, j)) return false;
    }
    return false;
  }

  bool compute(const Expr& f, std::size_t i) {
    if (const auto* c = f.as<node::BoolConst>()) return c->value;
    if (const auto* id = f.as<node::Id>()) {
      if (!atoms_.empty() && !atoms_.count(id->name.text)) {
        throw Error(ErrorKind::Eval, f.pos, "unknown atom '" + id->name.text + "'");
      }
      return w_.at(i).count(id->name.text) > 0;
    }
    if (const auto* u = f.as<node::Unary>()) {
      switch (u->op) {
        case UnaryOp::Neg: return !at(*u->arg, i);
        case UnaryOp::Next: return at(*u->arg, i + 1);
        case UnaryOp::Finally: {
          // true U φ
          const std::size_t bound = w_.prefix.size() + 2 * w_.loop.size();
          for (std::size_t k = 0, j = i; k <= bound; ++k, j = next(j)) {
            if (at(*u->arg, j)) return true;
          }
          return false;
        }
        case UnaryOp::Globally: {
          // ¬F¬φ: φ holds on every suffix reachable from i
          const std::size_t bound = w_.prefix.size() + 2 * w_.loop.size();
          for (std::size_t k = 0, j = i; k <= bound; ++k, j = next(j)) {
            if (!at(*u->arg, j)) return false;
          }
          return true;
        }
        default: break;
      }
    }
    if (const auto* b = f.as<node::Binary>()) {
      switch (b->op) {
        case BinaryOp::Or: return at(*b->lhs, i) || at(*b->rhs, i);
        case BinaryOp::And: return at(*b->lhs, i) && at(*b->rhs, i);
        case BinaryOp::Implies: return !at(*b->lhs, i) || at(*b->rhs, i);
        case BinaryOp::Equiv: return at(*b->lhs, i) == at(*b->rhs, i);
        case BinaryOp::Until: return until(*b->lhs, *b->rhs, i);
        case BinaryOp::Release: {
          // ¬(¬a U ¬b): b holds up to and including the first a, or forever
          const std::size_t bound = w_.prefix.size() + 2 * w_.loop.size();
          for (std::size_t k = 0, j = i; k <= bound; ++k, j = next(j)) {
            if (!at(*b->rhs, j)) return false;
            if (at(*b->lhs, j)) return true;
          }
          return true;
        }
        case BinaryOp::WeakUntil: {
          // (a U b) ∨ G a
          const std::size_t bound = w_.prefix.size() + 2 * w_.loop.size();
          for (std::size_t k = 0, j = i; k <= bound; ++k, j = next(j)) {
            if (at(*b->rhs, j)) return true;
            if (!at(*b->lhs, j)) return false;
          }
          return true;
        }
        default: break;
      }
    }
    throw Error(ErrorKind::Eval, f.pos, "not a ground LTL formula");
  }

  const LassoWord& w_;
  const std::set<std::string>& atoms_;
  std::map<const Expr*, std::vector<signed char>> memo_;
};

}  // namespace

bool eval_lasso(const Formula& f, const LassoWord& w, std::size_t position,
                const std::set<std::string>& atoms) {
  if (w.loop.empty()) throw Error(ErrorKind::Eval, {}, "lasso word with an empty loop");
  LassoEvaluator ev(w, atoms);
  return ev.at(*f, position);
}

}  // namespace tlsf
