#ifndef MC_EVALUATOR_HPP
#define MC_EVALUATOR_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mc/formula.hpp"
#include "mc/structure.hpp"

namespace mc {

/// Partial map from variables to universe elements.
using Assignment = std::map<std::string, int>;

/// Tarskian truth of a sentence on a finite structure. Memoized recursive game
/// evaluation with short-circuiting; the trusted oracle for everything else.
bool evaluate(const Structure& s, const FormulaPtr& f);
bool evaluate(const Structure& s, const FormulaPtr& f, const Assignment& a);

/// Quantifier-free path; throws SemanticError on a quantifier or an uncovered
/// free variable.
bool evaluate_ground(const Structure& s, const FormulaPtr& f, const Assignment& a);

/// First suite sentence where evaluate(s1, phi) != evaluate(s2, translate(phi)),
/// or nullopt. translate defaults to identity; verdict_flip compares against the
/// negated verdict on s2 (for duality checks).
std::optional<FormulaPtr> agree_on_suite(
    const Structure& s1, const Structure& s2, const std::vector<PrenexSentence>& suite,
    const std::function<FormulaPtr(const FormulaPtr&)>& translate = nullptr,
    bool verdict_flip = false);

}  // namespace mc

#endif
