#ifndef VK_CSP_HPP
#define VK_CSP_HPP

#include <span>
#include <string>
#include <vector>

#include "vk/relation.hpp"
#include "vk/variables.hpp"

namespace vk {

struct Constraint {
  Relation allowed;  // its domain is the constraint's scheme

  const Domain& scheme() const { return allowed.domain(); }
};

/// A CSP <X, D, C>. Frames of the universe play the role of the variable
/// domains D_i.
class CspInstance {
public:
  CspInstance(UniversePtr universe, Domain variables, std::vector<Constraint> constraints);

  const UniversePtr& universe() const noexcept { return universe_; }
  const Domain& variables() const noexcept { return variables_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

  /// v satisfies c on S iff S and Scheme(c) are disjoint, or v restricted to
  /// their overlap is the restriction of some allowed tuple.
  bool satisfies(const Assignment& v, const Constraint& c) const;

  /// M_S(C): all evaluations on S that satisfy every constraint.
  Relation models(const Domain& s) const;

private:
  UniversePtr universe_;
  Domain variables_;
  std::vector<Constraint> constraints_;
};

/// One information set M_T(C) per cover set T.
std::vector<Relation> csp_to_knowledgebase(const CspInstance& csp, std::span<const Domain> covers);

struct Formula {
  std::string text;
  Relation satisfying;  // model set over the formula's support

  const Domain& support() const { return satisfying.domain(); }
};

/// Propositional formulas over Boolean symbols, each kept as its model set.
struct PropositionalSystem {
  UniversePtr universe;
  Domain symbols;
  std::vector<Formula> formulas;

  std::vector<Relation> knowledgebase() const;
};

/// Boolean frame {0, 1}.
Frame boolean_frame();

enum class LiarClosure {
  negated,        // s_n <-> not s_1, the paradox
  biconditional,  // s_n <-> s_1, consistent variant
};

/// s_1 <-> s_2, ..., s_{n-1} <-> s_n, then the closing edge on {s_1, s_n}.
PropositionalSystem liar_cycle(int n, LiarClosure closure = LiarClosure::negated);

}  // namespace vk

#endif  // VK_CSP_HPP
