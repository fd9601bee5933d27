#include <doctest.h>

#include "mc/evaluator.hpp"
#include "mc/formula.hpp"
#include "mc/structure.hpp"

using namespace mc;

namespace {
const Signature kDg = Signature::digraph();

FormulaPtr dg(const std::string& text, Fragment frag = Fragment::positive()) {
    return parse_formula(text, kDg, frag);
}
}  // namespace

TEST_CASE("parse/render round trip on basic shapes") {
    CHECK(render_formula(Formula::forall("x", Formula::atom("E", {Term::variable("x"),
                                                                  Term::variable("x")}))) ==
          "forall x. E(x,x)");
    CHECK(render_formula(dg("(E(x,y) & E(y,x)) | E(x,x)")) == "(E(x,y) & E(y,x)) | E(x,x)");
    // '&' binds tighter than '|'
    CHECK(equal(dg("E(x,y) & E(y,x) | E(x,x)"), dg("(E(x,y) & E(y,x)) | E(x,x)")));
    CHECK(equal(dg("# comment line\nE(x,y)"), dg("E(x,y)")));
    CHECK(render_formula(dg("true")) == "true");
    CHECK(render_formula(dg("~E(x,y)", Fragment::equality_free())) == "~E(x,y)");
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(dg("forall x E(x,x)"), ParseError);
    CHECK_THROWS_AS(dg("E(x,"), ParseError);
    CHECK_THROWS_AS(dg("E(x,y) &"), ParseError);
    try {
        dg("E(x,y) @");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position >= 7);
    }
}

TEST_CASE("fragment gating") {
    // negation is rejected in the positive fragment, accepted when allowed
    CHECK_THROWS_AS(dg("~E(x,y)"), ParseError);
    CHECK_NOTHROW(dg("~E(x,y)", Fragment::equality_free()));
    Fragment no_forall;
    no_forall.allow_universal = false;
    CHECK_THROWS_AS(parse_formula("forall x. E(x,x)", kDg, no_forall), ParseError);
    Fragment no_or;
    no_or.allow_disjunction = false;
    CHECK_THROWS_AS(parse_formula("E(x,y) | E(y,x)", kDg, no_or), ParseError);
}

TEST_CASE("signature checking") {
    CHECK_THROWS_AS(dg("R(x)"), SemanticError);
    CHECK_THROWS_AS(dg("E(x)"), SemanticError);
    CHECK_THROWS_AS(dg("E(x,y,z)"), SemanticError);
}

TEST_CASE("free variables and sentence detection") {
    CHECK(free_variables(dg("exists y. E(x,y)")) == std::set<std::string>{"x"});
    CHECK(free_variables(dg("forall x. exists y. E(x,y)")).empty());
    CHECK(is_sentence(dg("forall x. exists y. E(x,y)")));
    CHECK_FALSE(is_sentence(dg("E(x,y)")));
    CHECK_FALSE(contains_negation(dg("E(x,y)")));
    CHECK(contains_negation(dg("~E(x,y)", Fragment::equality_free())));
}

TEST_CASE("parse after render is the identity on enumerated sentences") {
    for (bool neg : {false, true}) {
        auto suite = enumerate_sentences(kDg, 4, 3, EnumMode::SeededRandom, 17, 300, neg);
        Fragment frag = neg ? Fragment::equality_free() : Fragment::positive();
        for (const auto& ps : suite) {
            FormulaPtr f = ps.to_formula();
            CHECK(equal(parse_formula(render_formula(f), kDg, frag), f));
        }
    }
}

TEST_CASE("to_prenex leaves prenex input unchanged") {
    FormulaPtr f = dg("forall x. exists y. E(x,y) | E(y,x)");
    PrenexSentence ps = to_prenex(f);
    CHECK(render_prenex(ps) == "forall x. exists y. E(x,y) | E(y,x)");
    CHECK(equal(ps.to_formula(), f));
}

TEST_CASE("to_prenex renames to avoid capture") {
    PrenexSentence ps = to_prenex(dg("(exists x. E(x,x)) | (exists x. E(x,x))"));
    REQUIRE(ps.prefix.size() == 2);
    CHECK(ps.prefix[0].second != ps.prefix[1].second);
    CHECK(render_prenex(ps) == "exists x. exists x'. E(x,x) | E(x',x')");
}

TEST_CASE("to_prenex rejects free variables and negation") {
    CHECK_THROWS_AS(to_prenex(dg("E(x,y)")), SemanticError);
    CHECK_THROWS_AS(to_prenex(dg("~(exists x. E(x,x))", Fragment::equality_free())),
                    SemanticError);
}

TEST_CASE("to_prenex preserves truth on all size<=3 digraphs") {
    const char* sentences[] = {
        "(exists x. E(x,x)) | (exists x. E(x,x))",
        "(forall x. exists y. E(x,y)) & (exists z. E(z,z))",
        "forall x. (exists y. E(x,y)) | (exists y. E(y,x))",
        "(forall x. E(x,x)) | (forall y. exists z. E(y,z))",
        "exists x. (forall y. E(y,x)) & (exists y. E(x,y))",
    };
    for (const char* text : sentences) {
        FormulaPtr f = dg(text);
        FormulaPtr p = to_prenex(f).to_formula();
        for (int n = 1; n <= 3; ++n) {
            for (std::uint32_t mask = 0; mask < (1u << (n * n)); ++mask) {
                Digraph h(n, {});
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v)
                        if (mask & (1u << (u * n + v))) h.edges.insert({u, v});
                Structure s = h.to_structure();
                CHECK(evaluate(s, f) == evaluate(s, p));
            }
        }
    }
}

TEST_CASE("dualize swaps quantifiers and connectives") {
    CHECK(render_formula(dualize(dg("forall x. exists y. E(x,y) & E(y,x)"))) ==
          "exists x. forall y. E(x,y) | E(y,x)");
    FormulaPtr a = dg("E(x,y)");
    CHECK(equal(dualize(a), a));  // nothing to swap
}

TEST_CASE("dualize is an involution") {
    auto suite = enumerate_sentences(kDg, 5, 3, EnumMode::SeededRandom, 3, 200, false);
    for (const auto& ps : suite) {
        FormulaPtr f = ps.to_formula();
        CHECK(equal(dualize(dualize(f)), f));
    }
}

TEST_CASE("dualize with atom negation restores under double application") {
    FormulaPtr f = dg("forall x. exists y. E(x,y) & E(y,x)");
    FormulaPtr once = dualize(f, true);
    CHECK(contains_negation(once));
    // double application gives back the original modulo double negation
    FormulaPtr twice = dualize(once, true);
    Structure k2 = catalog("K2").structure;
    CHECK(evaluate(k2, twice) == evaluate(k2, f));
}

TEST_CASE("instantiate replaces quantified variables by constants") {
    PrenexSentence ps = to_prenex(dg("forall x. exists y. E(x,y)"));
    CHECK(render_formula(instantiate(ps, 0, std::nullopt)) == "exists y. E(0,y)");
    FormulaPtr ground = instantiate(ps, 0, 1);
    CHECK(render_formula(ground) == "E(0,1)");
    CHECK(free_variables(ground).empty());
    CHECK_THROWS_AS(instantiate(ps, std::nullopt, std::nullopt), SemanticError);
}

TEST_CASE("constants evaluate against the universe") {
    PrenexSentence ps = to_prenex(dg("forall x. exists y. E(x,y)"));
    Structure k2 = catalog("K2").structure;
    CHECK(evaluate(k2, instantiate(ps, 0, 1)));   // E(0,1) holds in K2
    CHECK(!evaluate(k2, instantiate(ps, 0, 0)));  // E(0,0) does not
    // constant outside the universe is a semantic error at evaluation time
    CHECK_THROWS_AS(evaluate(k2, instantiate(ps, 2, std::nullopt)), SemanticError);
}

TEST_CASE("substitute leaves shadowed occurrences alone") {
    FormulaPtr f = dg("E(x,y) & (exists x. E(x,y))");
    FormulaPtr g = substitute(f, {{"x", Term::constant(0)}});
    CHECK(render_formula(g) == "E(0,y) & (exists x. E(x,y))");
}

TEST_CASE("substitute_atom with the identity gadget is the identity") {
    GadgetDefinition ident{"identity", kDg, {"u", "v"}, dg("E(u,v)"), "", "",
                           GadgetDefinition::Provenance::Constructed};
    auto suite = enumerate_sentences(kDg, 4, 3, EnumMode::SeededRandom, 5, 100, false);
    for (const auto& ps : suite) {
        FormulaPtr f = ps.to_formula();
        CHECK(equal(substitute_atom(f, "E", ident), f));
    }
}

TEST_CASE("substitute_atom renames gadget-bound variables apart") {
    // gadget introduces a bound w per occurrence; two occurrences must not share it
    GadgetDefinition g{"step", kDg, {"u", "v"},
                       dg("exists w. E(u,w) & E(w,v)"), "", "",
                       GadgetDefinition::Provenance::Constructed};
    FormulaPtr f = dg("exists w. E(w,w) & E(w,w)");
    FormulaPtr out = substitute_atom(f, "E", g);
    CHECK(is_sentence(out));
    // semantics: a closed walk of length 2; K2's double edge gives one, the
    // directed triangle has none
    CHECK(evaluate(catalog("K2").structure, out));
    Digraph tri(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(!evaluate(tri.to_structure(), out));
}

TEST_CASE("exhaustive enumeration at the smallest bound") {
    auto suite = enumerate_sentences(kDg, 1, 1, EnumMode::Exhaustive);
    REQUIRE(suite.size() == 2);
    std::set<std::string> rendered;
    for (const auto& ps : suite) rendered.insert(render_prenex(ps));
    CHECK(rendered == std::set<std::string>{"exists x0. E(x0,x0)", "forall x0. E(x0,x0)"});
}

TEST_CASE("enumeration is duplicate-free under AST equality") {
    auto suite = enumerate_sentences(kDg, 3, 2, EnumMode::Exhaustive);
    std::set<std::string> seen;
    for (const auto& ps : suite) CHECK(seen.insert(render_prenex(ps)).second);
    CHECK(suite.size() > 100);
}

TEST_CASE("seeded enumeration is deterministic per seed") {
    auto a = enumerate_sentences(kDg, 6, 3, EnumMode::SeededRandom, 42, 50);
    auto b = enumerate_sentences(kDg, 6, 3, EnumMode::SeededRandom, 42, 50);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(equal(a[i].to_formula(), b[i].to_formula()));
    auto c = enumerate_sentences(kDg, 6, 3, EnumMode::SeededRandom, 43, 50);
    bool all_same = true;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!equal(a[i].to_formula(), c[i].to_formula())) all_same = false;
    CHECK_FALSE(all_same);
}

TEST_CASE("enumeration bounds are validated") {
    CHECK_THROWS_AS(enumerate_sentences(kDg, 0, 1, EnumMode::Exhaustive), SemanticError);
    CHECK_THROWS_AS(enumerate_sentences(kDg, 1, 0, EnumMode::Exhaustive), SemanticError);
}
