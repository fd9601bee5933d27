#include <doctest.h>

#include <algorithm>

#include "mc/evaluator.hpp"
#include "mc/structure.hpp"

using namespace mc;

namespace {
Digraph dg3(std::set<std::pair<int, int>> e) { return Digraph(3, std::move(e)); }
}  // namespace

TEST_CASE("parse_structure reads the documented format") {
    Structure k2 = parse_structure("universe 2\nrel E 2\n0 1\n1 0\nend\n");
    CHECK(k2 == catalog("K2").structure);
    Structure k2bar = parse_structure("universe 2\nrel E 2\n0 0\n1 1\nend\n");
    CHECK(k2bar == catalog("K2bar").structure);
    // empty relation block is legal
    Structure empty = parse_structure("universe 3\nrel E 2\nend\n");
    CHECK(empty.table("E").empty());
    // comments are skipped
    Structure c = parse_structure("# a digraph\nuniverse 2\nrel E 2\n# the only edge\n0 1\nend\n");
    CHECK(c.table("E") == std::set<std::vector<int>>{{0, 1}});
}

TEST_CASE("parse_structure rejects malformed input") {
    CHECK_THROWS(parse_structure("universe 2\nrel E 2\n0 2\nend\n"));  // out of range
    CHECK_THROWS(parse_structure("universe 2\nrel E 2\n0\nend\n"));    // arity mismatch
    CHECK_THROWS(parse_structure("universe 2\nrel E 2\nend\nrel E 1\nend\n"));  // dup name
}

TEST_CASE("render_structure round-trips") {
    for (const auto& name : catalog_names()) {
        const Structure& s = catalog(name).structure;
        CHECK(parse_structure(render_structure(s)) == s);
    }
}

TEST_CASE("complement is the set complement within the square") {
    CHECK(complement(catalog("K2").digraph()) == catalog("K2bar").digraph());
    CHECK(complement(catalog("K3").digraph()) == catalog("K3bar").digraph());
    Digraph dp010 = catalog("DP010_3").digraph();
    CHECK(dp010.edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 1}});
    CHECK(complement(dp010).edges ==
          std::set<std::pair<int, int>>{{0, 0}, {0, 2}, {1, 0}, {2, 0}, {2, 1}, {2, 2}});
    for (const auto& name : catalog_names()) {
        const CatalogEntry& e = catalog(name);
        if (!e.is_digraph) continue;
        Digraph h = e.digraph();
        CHECK(complement(complement(h)) == h);
        CHECK(h.edges.size() + complement(h).edges.size() ==
              static_cast<std::size_t>(h.n * h.n));
    }
}

TEST_CASE("closures satisfy their definitions") {
    Digraph path = dg3({{0, 1}, {1, 2}});
    CHECK(closure(path, ClosureKind::Sym).edges ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    CHECK(closure(path, ClosureKind::Tran).edges ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}});
    CHECK(closure(path, ClosureKind::Doub).edges.empty());
    // loops survive doub iff present
    Digraph looped = dg3({{0, 0}, {0, 1}, {1, 0}});
    CHECK(closure(looped, ClosureKind::Doub).edges ==
          std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}});
    // a directed cycle's transitive closure has all loops
    Digraph cyc = dg3({{0, 1}, {1, 2}, {2, 0}});
    CHECK(closure(cyc, ClosureKind::Tran).edges.size() == 9);
}

TEST_CASE("closure operations are idempotent and monotone") {
    for (std::uint32_t mask = 0; mask < 512; ++mask) {
        Digraph h(3, {});
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v)
                if (mask & (1u << (u * 3 + v))) h.edges.insert({u, v});
        for (ClosureKind k : {ClosureKind::Sym, ClosureKind::Tran, ClosureKind::Doub}) {
            Digraph once = closure(h, k);
            CHECK(closure(once, k) == once);
        }
        auto subset = [](const Digraph& a, const Digraph& b) {
            return std::includes(b.edges.begin(), b.edges.end(), a.edges.begin(),
                                 a.edges.end());
        };
        CHECK(subset(closure(h, ClosureKind::Doub), h));
        CHECK(subset(h, closure(h, ClosureKind::Sym)));
        CHECK(subset(h, closure(h, ClosureKind::Tran)));
    }
}

TEST_CASE("doub after tranclos matches the worked example") {
    // loops at 0,1; 0->1; 1<->2
    Digraph x = dg3({{0, 0}, {1, 1}, {0, 1}, {1, 2}, {2, 1}});
    Digraph k = closure(closure(x, ClosureKind::Tran), ClosureKind::Doub);
    CHECK(find_isomorphism(k, catalog("K1_1+K11_2").digraph()).has_value());
}

TEST_CASE("components and isolation") {
    auto comps = components(catalog("K1+K2").digraph());
    REQUIRE(comps.size() == 2);
    Digraph k1k2 = catalog("K1+K2").digraph();
    CHECK(is_isolated(k1k2, 0));
    CHECK_FALSE(is_isolated(k1k2, 1));
    // a vertex with only a self-loop forms its own component but is not isolated
    Digraph loop = dg3({{0, 0}, {1, 2}});
    CHECK(components(loop).size() == 2);
    CHECK_FALSE(is_isolated(loop, 0));
    CHECK(components(dg3({{0, 1}, {1, 2}})).size() == 1);
}

TEST_CASE("find_isomorphism") {
    Digraph dp010 = catalog("DP010_3").digraph();
    Digraph reversed(3, {});
    for (auto [u, v] : dp010.edges) reversed.edges.insert({v, u});
    CHECK(find_isomorphism(dp010, reversed).has_value());
    CHECK_FALSE(find_isomorphism(catalog("K2").digraph(), catalog("K2bar").digraph()));
    for (const auto& name : {"K3", "DP010_3", "H6", "H8"}) {
        Digraph h = catalog(name).digraph();
        auto perm = find_isomorphism(h, h);
        REQUIRE(perm.has_value());
        // returned map preserves edges in both directions
        for (int u = 0; u < h.n; ++u)
            for (int v = 0; v < h.n; ++v)
                CHECK(h.edge(u, v) == h.edge((*perm)[u], (*perm)[v]));
    }
    // isomorphism respects complement
    Digraph g = dg3({{0, 1}, {1, 0}, {2, 2}});
    Digraph h = dg3({{1, 2}, {2, 1}, {0, 0}});
    CHECK(find_isomorphism(g, h).has_value());
    CHECK(find_isomorphism(complement(g), complement(h)).has_value());
}

TEST_CASE("twins and contraction on the named examples") {
    Digraph p000 = catalog("P000_3").digraph();
    auto tw = find_twins(p000);
    REQUIRE(std::count(tw.begin(), tw.end(), std::make_pair(0, 2)) == 1);
    CHECK(find_isomorphism(contract_twin(p000, 0, 2), catalog("K2").digraph()).has_value());

    Digraph mix = catalog("K1_1+K11_2").digraph();
    auto tw2 = find_twins(mix);
    REQUIRE(std::count(tw2.begin(), tw2.end(), std::make_pair(1, 2)) == 1);
    CHECK(find_isomorphism(contract_twin(mix, 1, 2), catalog("K2bar").digraph()).has_value());

    CHECK(find_twins(catalog("K3").digraph()).empty());
    CHECK_THROWS_AS(contract_twin(catalog("K3").digraph(), 0, 1), SemanticError);
}

TEST_CASE("twin contraction preserves sentences with negation") {
    Digraph p000 = catalog("P000_3").digraph();
    Digraph k2 = contract_twin(p000, 0, 2);
    Structure s1 = p000.to_structure();
    Structure s2 = k2.to_structure();
    auto suite = enumerate_sentences(Signature::digraph(), 4, 3, EnumMode::SeededRandom, 11,
                                     200, true);
    for (const auto& ps : suite) {
        FormulaPtr f = ps.to_formula();
        CHECK(evaluate(s1, f) == evaluate(s2, f));
    }
}

TEST_CASE("catalog entries match their documented edge sets") {
    CHECK(catalog("DP110_3").digraph().edges ==
          std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {0, 1}, {1, 2}});
    CHECK(catalog("H8").digraph().edges ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {1, 1}});
    CHECK(catalog("H6").digraph().edges ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}, {0, 0}});
    const CatalogEntry& nae = catalog("B_NAE");
    CHECK_FALSE(nae.is_digraph);
    CHECK(nae.structure.size == 2);
    CHECK(nae.structure.table("NAE").size() == 6);
    CHECK(nae.structure.table("NAE").count({0, 0, 0}) == 0);
    CHECK(nae.structure.table("NAE").count({1, 1, 1}) == 0);
    CHECK_THROWS_AS(catalog("H9"), SemanticError);
}

TEST_CASE("reconstructed catalog entries carry constraints") {
    int reconstructed = 0;
    for (const auto& name : catalog_names()) {
        const CatalogEntry& e = catalog(name);
        if (e.provenance == CatalogEntry::Provenance::Reconstructed) {
            ++reconstructed;
            CHECK_FALSE(e.constraints.empty());
        }
    }
    CHECK(reconstructed == 14);  // H1..H8 and primed variants
}
