#ifndef MC_CLASSIFIER_HPP
#define MC_CLASSIFIER_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mc/structure.hpp"

namespace mc {

enum class ComplexityClass { Logspace, NpComplete, CoNpComplete, PspaceComplete };

ComplexityClass dual_class(ComplexityClass c);
std::string class_name(ComplexityClass c);  // "Logspace", "NP-complete", ...

/// Machine-checkable justification of a verdict: the structural rule applied
/// plus the witnesses it needs (canon vertices, good pair, closure chain,
/// gadget name, twin pair).
struct Certificate {
    ComplexityClass verdict;
    std::string rule;
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::vector<std::string> chain;       // composable reduction links, kernel last
    std::shared_ptr<Certificate> inner;   // for dual-of certificates

    std::string to_text() const;
    std::string to_json() const;
};

struct CanonReport {
    std::vector<int> forall_canons;
    std::vector<int> exists_canons;
    std::vector<std::pair<int, int>> good_pairs;
};

std::vector<int> forall_canons(const Digraph& h);
std::vector<int> exists_canons(const Digraph& h);

/// Ordered pairs (x,y) such that instantiating universals at x and existentials
/// at y preserves truth of every positive sentence (conditions G1-G4).
std::vector<std::pair<int, int>> good_pairs(const Digraph& h);

CanonReport canon_report(const Digraph& h);

/// Witness that hi does NOT dominate lo: a tuple of the named relation whose
/// flip at the given positions leaves the relation.
struct BooleanDominationWitness {
    std::string relation;
    std::vector<int> tuple;
    std::vector<int> flipped_positions;
};

/// nullopt iff hi dominates lo (per-relation flip criterion). Precondition:
/// no empty and no full relations.
std::optional<BooleanDominationWitness> dominates_boolean(const Structure& b, int lo, int hi);

std::pair<ComplexityClass, Certificate> classify_boolean(const Structure& b);
std::pair<ComplexityClass, Certificate> classify_digraph(const Digraph& h);

/// Independent semantic cross-check: good pair -> Logspace; forall-canon ->
/// NP-complete; exists-canon -> coNP-complete; else PSPACE-complete.
ComplexityClass classify_digraph_semantic(const Digraph& h);

struct TableRow {
    Digraph h;
    ComplexityClass cls;
    Certificate cert;
};

/// All 2^(size^2) labeled digraphs classified, with the duality / isomorphism /
/// cross-classifier / canon-membership checks asserted before returning.
std::vector<TableRow> classification_table(int size, bool up_to_iso);

}  // namespace mc

#endif
