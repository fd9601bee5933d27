#ifndef MC_REDUCTIONS_HPP
#define MC_REDUCTIONS_HPP

#include <string>
#include <utility>
#include <vector>

#include "mc/formula.hpp"
#include "mc/structure.hpp"

namespace mc {

/// Sentence-level rewrite rules. TranClos carries the host size n; each E-atom
/// expands with n-2 auxiliary existential variables.
struct RewriteRule {
    enum class Id { Dual, SymClos, Doub, TranClos, NaeToK2, Gadget };

    Id id;
    int host_size = 0;        // TranClos
    std::string gadget_name;  // Gadget

    static RewriteRule dual() { return {Id::Dual}; }
    static RewriteRule symclos() { return {Id::SymClos}; }
    static RewriteRule doub() { return {Id::Doub}; }
    static RewriteRule tranclos(int n) { return {Id::TranClos, n}; }
    static RewriteRule nae_to_k2() { return {Id::NaeToK2}; }
    static RewriteRule gadget(std::string name) { return {Id::Gadget, 0, std::move(name)}; }

    static RewriteRule from_name(const std::string& name);  // "dual", "tranclos(3)", ...
    std::string name() const;
};

FormulaPtr reduce_sentence(const RewriteRule& rule, const FormulaPtr& f);

/// The digraph on host's universe with edge (u,v) iff host satisfies the
/// gadget body under free_vars = (u,v).
Digraph interpret_gadget(const Structure& host, const GadgetDefinition& g);

/// Which premise pattern a boolean structure falls under, by membership of the
/// two constant tuples in the canonical (product) relation.
enum class BooleanGadgetCase {
    NoConstantTuples,    // neither all-zeros nor all-ones; gadget defines K2
    BothConstantTuples,  // both present; gadget defines K2bar
    OnesOnly,            // all-ones present, all-zeros absent; needs no forall-canon
    ZerosOnly,           // all-zeros present, all-ones absent; needs no forall-canon
};

/// Witness data for the boolean gadget constructions: chosen per-relation
/// tuples and the partition of the global (concatenated) positions.
struct BooleanGadgetContext {
    std::vector<std::vector<int>> witness;  // per-relation component of the witness tuple
    std::vector<int> block_I, block_J, block_J0, block_J1;  // global position indices
};

/// Builds the two-variable formula that defines K2 / K2bar over b under the
/// given case's premises; throws SemanticError naming the failing premise.
std::pair<GadgetDefinition, BooleanGadgetContext> build_boolean_gadget(const Structure& b,
                                                                       BooleanGadgetCase c);

BooleanGadgetCase boolean_gadget_case(const Structure& b);

/// Every display-formula gadget, each carrying its host structure name and
/// expected interpretation result.
const std::vector<GadgetDefinition>& gadget_catalog();
const GadgetDefinition& find_gadget(const std::string& name);

/// Catalog lookup that also accepts "~X" for the complement of digraph X.
Structure resolve_structure_name(const std::string& name);

}  // namespace mc

#endif
