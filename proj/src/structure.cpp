#include "mc/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace mc {

Structure::Structure(Signature s, int n) : sig(std::move(s)), size(n) {
    tables.resize(sig.relations.size());
}

const std::set<std::vector<int>>& Structure::table(std::string_view rel) const {
    int i = sig.index_of(rel);
    if (i < 0) throw SemanticError("unknown relation: " + std::string(rel));
    return tables[i];
}

void Structure::add(std::string_view rel, std::vector<int> tuple) {
    int i = sig.index_of(rel);
    if (i < 0) throw SemanticError("unknown relation: " + std::string(rel));
    if (static_cast<int>(tuple.size()) != sig.relations[i].second)
        throw SemanticError("arity mismatch in tuple for " + std::string(rel));
    for (int e : tuple)
        if (e < 0 || e >= size)
            throw SemanticError("tuple entry " + std::to_string(e) + " out of range [0," +
                                std::to_string(size) + ") in relation " + std::string(rel));
    tables[i].insert(std::move(tuple));
}

void Structure::validate() const {
    if (tables.size() != sig.relations.size())
        throw SemanticError("structure: table count does not match signature");
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (const auto& t : tables[i]) {
            if (static_cast<int>(t.size()) != sig.relations[i].second)
                throw SemanticError("structure: arity mismatch in " + sig.relations[i].first);
            for (int e : t)
                if (e < 0 || e >= size)
                    throw SemanticError("structure: tuple entry out of range in " +
                                        sig.relations[i].first);
        }
}

// ------------------------------------------------------------- file format

namespace {

struct Tokens {
    std::vector<std::string> toks;
    std::size_t pos = 0;

    explicit Tokens(std::string_view text) {
        std::string cur;
        bool comment = false;
        for (char c : text) {
            if (c == '\n') comment = false;
            if (comment) continue;
            if (c == '#') {
                comment = true;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) toks.push_back(std::move(cur));
    }

    bool done() const { return pos >= toks.size(); }
    const std::string& peek() const {
        if (done()) throw SemanticError("structure file: unexpected end of input");
        return toks[pos];
    }
    std::string next() {
        std::string t = peek();
        ++pos;
        return t;
    }
    int next_int() {
        std::string t = next();
        try {
            std::size_t used;
            int v = std::stoi(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw SemanticError("structure file: expected integer, got '" + t + "'");
        }
    }
};

}  // namespace

Structure parse_structure(std::string_view text) {
    Tokens tk(text);
    if (tk.next() != "universe") throw SemanticError("structure file: expected 'universe'");
    int n = tk.next_int();
    if (n < 0) throw SemanticError("structure file: negative universe size");
    Structure s;
    s.size = n;
    while (!tk.done()) {
        if (tk.next() != "rel") throw SemanticError("structure file: expected 'rel'");
        std::string name = tk.next();
        int arity = tk.next_int();
        if (arity < 1) throw SemanticError("structure file: arity must be >= 1");
        if (s.sig.index_of(name) >= 0)
            throw SemanticError("structure file: duplicate relation name " + name);
        s.sig.relations.emplace_back(name, arity);
        s.tables.emplace_back();
        std::vector<int> ints;
        while (!tk.done() && tk.peek() != "end") ints.push_back(tk.next_int());
        if (tk.done()) throw SemanticError("structure file: missing 'end'");
        tk.next();  // end
        if (ints.size() % arity != 0)
            throw SemanticError("structure file: tuple count not a multiple of arity in " + name);
        for (std::size_t i = 0; i < ints.size(); i += arity)
            s.add(name, std::vector<int>(ints.begin() + i, ints.begin() + i + arity));
    }
    return s;
}

std::string render_structure(const Structure& s) {
    std::ostringstream out;
    out << "universe " << s.size << "\n";
    for (std::size_t i = 0; i < s.sig.relations.size(); ++i) {
        out << "rel " << s.sig.relations[i].first << " " << s.sig.relations[i].second << "\n";
        for (const auto& t : s.tables[i]) {  // std::set iterates lexicographically
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
            out << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

// ----------------------------------------------------------------- digraph

int Digraph::loop_count() const {
    int c = 0;
    for (int v = 0; v < n; ++v)
        if (has_loop(v)) ++c;
    return c;
}

Structure Digraph::to_structure() const {
    Structure s(Signature::digraph(), n);
    for (auto [u, v] : edges) s.add("E", {u, v});
    return s;
}

Digraph Digraph::from_structure(const Structure& s) {
    if (s.sig != Signature::digraph())
        throw SemanticError("not a digraph: signature must be exactly <E:2>");
    Digraph h;
    h.n = s.size;
    for (const auto& t : s.tables[0]) h.edges.insert({t[0], t[1]});
    return h;
}

Digraph complement(const Digraph& h) {
    Digraph out;
    out.n = h.n;
    for (int u = 0; u < h.n; ++u)
        for (int v = 0; v < h.n; ++v)
            if (!h.edge(u, v)) out.edges.insert({u, v});
    return out;
}

Digraph closure(const Digraph& h, ClosureKind kind) {
    Digraph out = h;
    switch (kind) {
        case ClosureKind::Sym:
            for (auto [u, v] : h.edges) out.edges.insert({v, u});
            break;
        case ClosureKind::Tran: {
            bool changed = true;
            while (changed) {
                changed = false;
                std::vector<std::pair<int, int>> add;
                for (auto [u, v] : out.edges)
                    for (auto [x, y] : out.edges)
                        if (v == x && !out.edge(u, y)) add.push_back({u, y});
                for (auto e : add) out.edges.insert(e);
                changed = !add.empty();
            }
            break;
        }
        case ClosureKind::Doub:
            out.edges.clear();
            for (auto [u, v] : h.edges)
                if (h.edge(v, u)) out.edges.insert({u, v});
            break;
    }
    return out;
}

bool is_isolated(const Digraph& h, int v) {
    for (int y = 0; y < h.n; ++y)
        if (h.edge(v, y) || h.edge(y, v)) return false;
    return true;
}

std::vector<std::vector<int>> components(const Digraph& h) {
    std::vector<int> parent(h.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : h.edges)
        if (u != v) parent[find(u)] = find(v);
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < h.n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, vs] : groups) out.push_back(std::move(vs));
    return out;
}

std::optional<std::vector<int>> find_isomorphism(const Digraph& g, const Digraph& h) {
    if (g.n != h.n || g.edges.size() != h.edges.size()) return std::nullopt;
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < g.n && ok; ++u)
            for (int v = 0; v < g.n && ok; ++v)
                if (g.edge(u, v) != h.edge(perm[u], perm[v])) ok = false;
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

std::vector<std::pair<int, int>> find_twins(const Digraph& h) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < h.n; ++x)
        for (int y = x + 1; y < h.n; ++y) {
            bool twin = true;
            for (int z = 0; z < h.n && twin; ++z)
                twin = h.edge(x, z) == h.edge(y, z) && h.edge(z, x) == h.edge(z, y);
            if (twin) out.push_back({x, y});
        }
    return out;
}

Digraph contract_twin(const Digraph& h, int x, int y) {
    auto twins = find_twins(h);
    bool ok = false;
    for (auto [a, b] : twins)
        if ((a == x && b == y) || (a == y && b == x)) ok = true;
    if (!ok) throw SemanticError("contract_twin: not a twin pair");
    Digraph out;
    out.n = h.n - 1;
    auto remap = [&](int v) { return v < x ? v : v - 1; };
    for (auto [u, v] : h.edges)
        if (u != x && v != x) out.edges.insert({remap(u), remap(v)});
    return out;
}

// ----------------------------------------------------------------- catalog

namespace {

Structure dg(int n, std::initializer_list<std::pair<int, int>> edges) {
    Structure s(Signature::digraph(), n);
    for (auto [u, v] : edges) s.add("E", {u, v});
    return s;
}

std::map<std::string, CatalogEntry> build_catalog() {
    using P = CatalogEntry::Provenance;
    std::map<std::string, CatalogEntry> cat;
    auto put = [&](std::string name, Structure s, P prov, std::vector<std::string> constraints = {},
                   bool is_digraph = true) {
        CatalogEntry e;
        e.name = name;
        e.structure = std::move(s);
        e.is_digraph = is_digraph;
        e.provenance = prov;
        e.constraints = std::move(constraints);
        cat.emplace(std::move(name), std::move(e));
    };

    put("K1", dg(1, {}), P::Fixed);
    put("K2", dg(2, {{0, 1}, {1, 0}}), P::Fixed);
    put("K2bar", dg(2, {{0, 0}, {1, 1}}), P::Fixed);
    put("K3", dg(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}), P::Fixed);
    put("K3bar", dg(3, {{0, 0}, {1, 1}, {2, 2}}), P::Fixed);
    put("K1_1", dg(1, {{0, 0}}), P::Fixed);
    put("K11_2", dg(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}), P::Fixed);
    {
        Structure k111(Signature::digraph(), 3);
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) k111.add("E", {u, v});
        put("K111_3", std::move(k111), P::Fixed);
    }
    put("K1+K2", dg(3, {{1, 2}, {2, 1}}), P::Fixed);
    put("K1_1+K11_2", dg(3, {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {2, 1}}), P::Fixed);
    put("P000_3", dg(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}), P::Fixed);
    put("P010_3", dg(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {1, 1}}), P::Fixed);
    put("P100_3", dg(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 0}}), P::Fixed);
    put("P101_3", dg(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 0}, {2, 2}}), P::Fixed);
    put("P110_3", dg(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 0}, {1, 1}}), P::Fixed);
    put("DP010_3", dg(3, {{0, 1}, {1, 2}, {1, 1}}), P::Fixed);
    put("DP110_3", dg(3, {{0, 1}, {1, 2}, {0, 0}, {1, 1}}), P::Fixed);
    put("DP011_3", dg(3, {{0, 1}, {1, 2}, {1, 1}, {2, 2}}), P::Fixed);
    put("DP100_3", dg(3, {{0, 1}, {1, 2}, {0, 0}}), P::Fixed);
    {
        Structure nae(Signature{{"NAE", 3}}, 2);
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b)
                for (int c = 0; c <= 1; ++c)
                    if (!(a == b && b == c)) nae.add("NAE", {a, b, c});
        put("B_NAE", std::move(nae), P::Fixed, {}, false);
    }

    // Reconstructed middle-loop path digraphs (labels a,b,c = 0,1,2; path a-b-c).
    put("H1", dg(3, {{0, 1}, {2, 1}, {1, 1}}), P::Reconstructed,
        {"middle-loop path, both path edges into the looped middle vertex",
         "a,c are twins; contracting them yields a two-vertex digraph carrying a forall-canon"
         " and an exists-canon"});
    put("H1p", dg(3, {{1, 0}, {1, 2}, {1, 1}}), P::Reconstructed,
        {"middle-loop path, both path edges out of the looped middle vertex",
         "a,c are twins; contracting them yields a two-vertex digraph carrying a forall-canon"
         " and an exists-canon"});
    put("H2", dg(3, {{0, 1}, {1, 0}, {1, 2}, {1, 1}}), P::Reconstructed,
        {"middle-loop path, double edge a-b, single edge b->c",
         "vertex c is a forall-canon and vertex b is an exists-canon"});
    put("H2p", dg(3, {{0, 1}, {1, 0}, {2, 1}, {1, 1}}), P::Reconstructed,
        {"middle-loop path, double edge a-b, single edge c->b",
         "vertex c is a forall-canon and vertex b is an exists-canon"});
    put("H3", dg(3, {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {1, 2}}), P::Reconstructed,
        {"loops at a,b; double edge a-b; single edge b->c",
         "vertex c is a forall-canon and vertex b is an exists-canon"});
    put("H3p", dg(3, {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {2, 1}}), P::Reconstructed,
        {"loops at a,b; double edge a-b; single edge c->b",
         "vertex c is a forall-canon and vertex b is an exists-canon"});
    put("H4", dg(3, {{0, 0}, {1, 1}, {0, 1}, {2, 1}}), P::Reconstructed,
        {"loops at a,b; single edges a->b and c->b",
         "vertex c is a forall-canon; b is not an exists-canon; (c,b) is a good pair"});
    put("H4p", dg(3, {{0, 0}, {1, 1}, {1, 0}, {1, 2}}), P::Reconstructed,
        {"loops at a,b; single edges b->a and b->c",
         "vertex c is a forall-canon; b is not an exists-canon; (c,b) is a good pair"});
    put("H5", dg(3, {{0, 0}, {1, 1}, {0, 1}, {1, 2}, {2, 1}}), P::Reconstructed,
        {"loops at a,b; single edge a->b; double edge b-c",
         "doub(tran-clos(H)) is K11_2 + K1_1"});
    put("H5p", dg(3, {{0, 0}, {1, 1}, {1, 0}, {1, 2}, {2, 1}}), P::Reconstructed,
        {"loops at a,b; single edge b->a; double edge b-c",
         "doub(tran-clos(H)) is K11_2 + K1_1"});
    put("H6", dg(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}}), P::Reconstructed,
        {"cyclic triangle orientation plus one self-loop"});
    put("H7", dg(3, {{0, 1}, {1, 2}, {0, 2}, {0, 0}}), P::Reconstructed,
        {"transitive tournament with self-loop at the source",
         "the complement has no canon of either kind but carries a good pair"});
    put("H7p", dg(3, {{0, 1}, {1, 2}, {0, 2}, {2, 2}}), P::Reconstructed,
        {"transitive tournament with self-loop at the sink",
         "the complement has no canon of either kind but carries a good pair"});
    put("H8", dg(3, {{0, 1}, {1, 2}, {0, 2}, {1, 1}}), P::Reconstructed,
        {"transitive tournament with self-loop at the middle vertex",
         "the loopless vertex b of the complement is a forall-canon"});
    return cat;
}

}  // namespace

const CatalogEntry& catalog(const std::string& name) {
    static const std::map<std::string, CatalogEntry> cat = build_catalog();
    auto it = cat.find(name);
    if (it == cat.end()) throw SemanticError("unknown catalog name: " + name);
    return it->second;
}

std::vector<std::string> catalog_names() {
    static const std::map<std::string, CatalogEntry> cat = build_catalog();
    std::vector<std::string> names;
    for (const auto& [k, v] : cat) names.push_back(k);
    return names;
}

}  // namespace mc
