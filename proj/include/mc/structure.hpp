#ifndef MC_STRUCTURE_HPP
#define MC_STRUCTURE_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mc/formula.hpp"

namespace mc {

/// Finite relational structure over universe {0..size-1}.
struct Structure {
    Signature sig;
    int size = 0;
    std::vector<std::set<std::vector<int>>> tables;  // one table per signature relation

    Structure() = default;
    Structure(Signature s, int n);

    const std::set<std::vector<int>>& table(std::string_view rel) const;
    void add(std::string_view rel, std::vector<int> tuple);  // range-checks
    void validate() const;                                   // throws SemanticError

    bool operator==(const Structure&) const = default;
};

Structure parse_structure(std::string_view text);
std::string render_structure(const Structure& s);

/// Single-binary-relation specialization.
struct Digraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;

    Digraph() = default;
    Digraph(int n, std::set<std::pair<int, int>> e) : n(n), edges(std::move(e)) {}

    bool edge(int u, int v) const { return edges.count({u, v}) > 0; }
    bool operator==(const Digraph&) const = default;
    bool has_loop(int v) const { return edge(v, v); }
    int loop_count() const;

    Structure to_structure() const;
    static Digraph from_structure(const Structure& s);  // throws unless sig is <E:2>
};

Digraph complement(const Digraph& h);

enum class ClosureKind { Sym, Tran, Doub };
Digraph closure(const Digraph& h, ClosureKind kind);

/// Weakly connected components (reachability in sym-clos; a lone vertex with a
/// self-loop is its own component but is not isolated).
std::vector<std::vector<int>> components(const Digraph& h);
bool is_isolated(const Digraph& h, int v);

/// Brute-force permutation search; intended for size <= 4.
std::optional<std::vector<int>> find_isomorphism(const Digraph& g, const Digraph& h);

/// Pairs (x,y), x < y scan order, with identical in/out neighbourhoods in the
/// sense that the map x -> y is atom-preserving both ways.
std::vector<std::pair<int, int>> find_twins(const Digraph& h);
Digraph contract_twin(const Digraph& h, int x, int y);  // removes x; throws if not twins

struct CatalogEntry {
    enum class Provenance { Fixed, Reconstructed };

    std::string name;
    Structure structure;
    bool is_digraph = true;
    Provenance provenance = Provenance::Fixed;
    std::vector<std::string> constraints;  // prose constraints for reconstructed entries

    Digraph digraph() const { return Digraph::from_structure(structure); }
};

const CatalogEntry& catalog(const std::string& name);  // throws SemanticError if unknown
std::vector<std::string> catalog_names();

}  // namespace mc

#endif
