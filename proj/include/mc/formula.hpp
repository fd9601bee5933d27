#ifndef MC_FORMULA_HPP
#define MC_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mc {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Relational signature: ordered list of (name, arity).
struct Signature {
    std::vector<std::pair<std::string, int>> relations;

    Signature() = default;
    Signature(std::initializer_list<std::pair<std::string, int>> rels) : relations(rels) {}

    int index_of(std::string_view name) const;
    int arity_of(std::string_view name) const;  // throws SemanticError if unknown

    bool operator==(const Signature&) const = default;

    static Signature digraph();  // <E:2>
};

/// Connective/quantifier availability. Default is the positive fragment {exists,forall,and,or}.
struct Fragment {
    bool allow_negation = false;
    bool allow_universal = true;
    bool allow_disjunction = true;

    static Fragment positive() { return {}; }
    static Fragment equality_free() { return {true, true, true}; }
};

/// Atom argument: a variable or an element constant. Constants are produced
/// only by instantiation, never by the parser.
struct Term {
    bool is_element = false;
    std::string var;
    int element = -1;

    static Term variable(std::string v) { return {false, std::move(v), -1}; }
    static Term constant(int e) { return {true, {}, e}; }

    bool operator==(const Term&) const = default;
    bool operator<(const Term& o) const {
        if (is_element != o.is_element) return is_element < o.is_element;
        return is_element ? element < o.element : var < o.var;
    }
};

enum class Kind { Atom, And, Or, Not, Exists, Forall, True, False };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable AST node. And/Or are n-ary; Not and quantifiers have one child.
class Formula {
public:
    Kind kind;
    std::string rel;                   // Atom
    std::vector<Term> args;            // Atom
    std::vector<FormulaPtr> children;  // And, Or, Not, Exists, Forall
    std::string var;                   // Exists, Forall

    static FormulaPtr atom(std::string rel, std::vector<Term> args);
    static FormulaPtr conj(std::vector<FormulaPtr> children);  // collapses 0/1-ary
    static FormulaPtr disj(std::vector<FormulaPtr> children);
    static FormulaPtr neg(FormulaPtr child);
    static FormulaPtr exists(std::string var, FormulaPtr child);
    static FormulaPtr forall(std::string var, FormulaPtr child);
    static FormulaPtr truth();
    static FormulaPtr falsity();

private:
    Formula() = default;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Total order on formulas, used to canonicalize enumeration output.
int compare(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> all_variables(const FormulaPtr& f);
bool is_sentence(const FormulaPtr& f);
bool contains_negation(const FormulaPtr& f);
bool within_fragment(const FormulaPtr& f, const Fragment& frag);

/// Throws SemanticError on unknown relation or arity mismatch.
void check_signature(const FormulaPtr& f, const Signature& sig);

enum class Quant { Exists, Forall };

struct PrenexSentence {
    std::vector<std::pair<Quant, std::string>> prefix;
    FormulaPtr matrix;

    FormulaPtr to_formula() const;
};

/// A positive formula with designated free variables, interpreted over a host
/// structure to define a relation.
struct GadgetDefinition {
    enum class Provenance { Printed, Corrected, Constructed };

    std::string name;
    Signature sig;                       // signature of the host structure
    std::vector<std::string> free_vars;  // length = arity of the defined relation
    FormulaPtr body;
    std::string host;             // catalog name of the host; "~X" means complement of X
    std::string expected_result;  // catalog name (same "~" convention), or empty
    Provenance provenance = Provenance::Constructed;
};

FormulaPtr parse_formula(std::string_view text, const Signature& sig,
                         const Fragment& frag = Fragment::positive());
std::string render_formula(const FormulaPtr& f);
std::string render_prenex(const PrenexSentence& s);

/// Substitute free occurrences of variables; capture-avoiding is not needed for
/// the uses here (replacement terms are constants or fresh variables), but
/// shadowed occurrences are left alone.
FormulaPtr substitute(const FormulaPtr& f, const std::vector<std::pair<std::string, Term>>& map);

PrenexSentence to_prenex(const FormulaPtr& f);

FormulaPtr dualize(const FormulaPtr& f, bool negate_atoms = false);

FormulaPtr instantiate(const PrenexSentence& s, std::optional<int> universal_value,
                       std::optional<int> existential_value);

FormulaPtr substitute_atom(const FormulaPtr& f, const std::string& target_relation,
                           const GadgetDefinition& gadget);

enum class EnumMode { Exhaustive, SeededRandom };

/// Prenex sentences over sig with <= max_quantifiers quantifiers and an
/// or-of-and matrix of <= max_atoms atoms. Exhaustive mode is canonical up to
/// bound-variable renaming and duplicate-free; seeded mode is deterministic.
std::vector<PrenexSentence> enumerate_sentences(const Signature& sig, int max_quantifiers,
                                                int max_atoms, EnumMode mode,
                                                std::uint64_t seed = 0, int count = 0,
                                                bool allow_negation = false);

}  // namespace mc

#endif
