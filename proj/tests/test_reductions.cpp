#include <doctest.h>

#include "mc/evaluator.hpp"
#include "mc/reductions.hpp"
#include "mc/structure.hpp"

using namespace mc;

namespace {
const Signature kDg = Signature::digraph();
FormulaPtr dg(const std::string& text) { return parse_formula(text, kDg); }
}  // namespace

TEST_CASE("rewrite rule names round-trip") {
    for (const char* n : {"dual", "symclos", "doub", "tranclos(3)", "nae_to_k2",
                          "gadget(H8bar-defines-K1K2)"})
        CHECK(RewriteRule::from_name(n).name() == n);
    CHECK_THROWS_AS(RewriteRule::from_name("tranclos(x)"), SemanticError);
    CHECK_THROWS_AS(RewriteRule::from_name("frobnicate"), SemanticError);
}

TEST_CASE("dual rewrite swaps quantifiers and connectives") {
    CHECK(render_formula(reduce_sentence(RewriteRule::dual(),
                                         dg("forall x. exists y. E(x,y) & E(y,x)"))) ==
          "exists x. forall y. E(x,y) | E(y,x)");
}

TEST_CASE("closure rewrites have the documented shapes") {
    FormulaPtr f = dg("forall x. forall y. E(x,y)");
    CHECK(render_formula(reduce_sentence(RewriteRule::symclos(), f)) ==
          "forall x. forall y. E(x,y) | E(y,x)");
    CHECK(render_formula(reduce_sentence(RewriteRule::doub(), f)) ==
          "forall x. forall y. E(x,y) & E(y,x)");
    // walk disjunction up to length n; two auxiliaries at n = 3 so that a
    // 3-cycle's closure loops are expressible
    CHECK(render_formula(reduce_sentence(RewriteRule::tranclos(3), f)) ==
          "forall x. forall y. exists w1_1. exists w2_1. E(x,y) | (E(x,w1_1) & E(w1_1,y)) | "
          "(E(x,w1_1) & E(w1_1,w2_1) & E(w2_1,y))");
    // degenerate host sizes keep the plain atom
    CHECK(render_formula(reduce_sentence(RewriteRule::tranclos(2), f)) ==
          "forall x. forall y. E(x,y)");
}

TEST_CASE("tranclos rewrite is exact on the directed 3-cycle") {
    // the cycle's transitive closure is complete including loops, reachable
    // only by walks of length 3 - the case that bounds the expansion length
    Digraph cyc(3, {{0, 1}, {1, 2}, {2, 0}});
    Structure host = cyc.to_structure();
    Structure closed = closure(cyc, ClosureKind::Tran).to_structure();
    FormulaPtr loops = dg("forall x. E(x,x)");
    CHECK(evaluate(closed, loops));
    CHECK(evaluate(host, reduce_sentence(RewriteRule::tranclos(3), loops)));
}

TEST_CASE("nae rewrite substitutes the triangle-of-edges formula") {
    Signature nsig{{"NAE", 3}};
    FormulaPtr f = parse_formula("forall v. exists v1. exists v2. NAE(v,v1,v2)", nsig);
    CHECK(render_formula(reduce_sentence(RewriteRule::nae_to_k2(), f)) ==
          "forall v. exists v1. exists v2. E(v,v1) | E(v1,v2) | E(v,v2)");
    CHECK(evaluate(catalog("B_NAE").structure, f) ==
          evaluate(catalog("K2").structure, reduce_sentence(RewriteRule::nae_to_k2(), f)));
}

TEST_CASE("interpret_gadget on the identity gadget") {
    GadgetDefinition ident{"identity", kDg, {"u", "v"}, dg("E(u,v)"), "", "",
                           GadgetDefinition::Provenance::Constructed};
    Digraph h = catalog("DP110_3").digraph();
    CHECK(interpret_gadget(h.to_structure(), ident) == h);
}

TEST_CASE("interpret_gadget checks signature and free variables") {
    GadgetDefinition bad{"bad", Signature{{"R", 1}}, {"u", "v"}, dg("E(u,v)"), "", "",
                         GadgetDefinition::Provenance::Constructed};
    CHECK_THROWS_AS(interpret_gadget(catalog("K2").structure, bad), SemanticError);
}

TEST_CASE("boolean gadget case detection") {
    CHECK(boolean_gadget_case(catalog("B_NAE").structure) ==
          BooleanGadgetCase::NoConstantTuples);
    Structure k2bar(Signature{{"R", 2}}, 2);
    k2bar.add("R", {0, 0});
    k2bar.add("R", {1, 1});
    CHECK(boolean_gadget_case(k2bar) == BooleanGadgetCase::BothConstantTuples);
    Structure b2(Signature{{"R", 3}}, 2);
    b2.add("R", {0, 0, 0});
    b2.add("R", {0, 1, 1});
    CHECK(boolean_gadget_case(b2) == BooleanGadgetCase::ZerosOnly);
}

TEST_CASE("no-constant-tuples construction defines K2 on B_NAE") {
    const Structure& nae = catalog("B_NAE").structure;
    auto [g, ctx] = build_boolean_gadget(nae, BooleanGadgetCase::NoConstantTuples);
    CHECK(g.name == "omits-both-constants");
    CHECK(interpret_gadget(nae, g) == catalog("K2").digraph());
    // the witness tuple is a member of its relation
    REQUIRE(ctx.witness.size() == 1);
    CHECK(nae.table("NAE").count(ctx.witness[0]) == 1);
    CHECK(ctx.block_I.size() + ctx.block_J.size() == 3);
}

TEST_CASE("both-constant-tuples construction defines K2bar") {
    Structure k2bar(Signature{{"R", 2}}, 2);
    k2bar.add("R", {0, 0});
    k2bar.add("R", {1, 1});
    auto [g, ctx] = build_boolean_gadget(k2bar, BooleanGadgetCase::BothConstantTuples);
    CHECK(g.name == "contains-both-constants");
    CHECK(interpret_gadget(k2bar, g) == catalog("K2bar").digraph());
}

TEST_CASE("single-constant construction defines K2bar on B2") {
    Structure b2(Signature{{"R", 3}}, 2);
    b2.add("R", {0, 0, 0});
    b2.add("R", {0, 1, 1});
    auto [g, ctx] = build_boolean_gadget(b2, BooleanGadgetCase::ZerosOnly);
    CHECK(g.name == "zeros-only-no-domination");
    CHECK(interpret_gadget(b2, g) == catalog("K2bar").digraph());
    // context records a genuine domination violation split I | J0 | J1
    CHECK_FALSE(ctx.block_I.empty());
    std::vector<int> flipped = ctx.witness[0];
    for (int p : ctx.block_I) flipped[p] = 1 - flipped[p];
    CHECK(b2.table("R").count(ctx.witness[0]) == 1);
    CHECK(b2.table("R").count(flipped) == 0);
}

TEST_CASE("gadget constructions reject violated premises") {
    const Structure& nae = catalog("B_NAE").structure;
    CHECK_THROWS_AS(build_boolean_gadget(nae, BooleanGadgetCase::BothConstantTuples),
                    SemanticError);
    CHECK_THROWS_AS(build_boolean_gadget(nae, BooleanGadgetCase::ZerosOnly), SemanticError);
    // unnormalized input (full relation) is rejected outright
    Structure full(Signature{{"R", 1}}, 2);
    full.add("R", {0});
    full.add("R", {1});
    CHECK_THROWS_AS(build_boolean_gadget(full, BooleanGadgetCase::BothConstantTuples),
                    SemanticError);
    // structures whose domination holds have no violation to build from
    Structure b1(Signature{{"R", 3}}, 2);
    b1.add("R", {0, 0, 0});
    b1.add("R", {0, 0, 1});
    CHECK_THROWS_AS(build_boolean_gadget(b1, BooleanGadgetCase::ZerosOnly), SemanticError);
}

TEST_CASE("catalog gadgets interpret as recorded") {
    // passing entries
    struct Case {
        const char* gadget;
        const char* expect;
    } ok[] = {
        {"H8bar-defines-K1K2", "K1+K2"},
        {"DP010bar-defines-K1K2-corrected", "K1+K2"},
        {"DP110-defines-H5", "H5"},
        {"DP011-defines-H5prime-corrected", "DP110_3"},
        {"H6bar-defines-DP100bar", "~DP100_3"},
    };
    for (const auto& c : ok) {
        const GadgetDefinition& g = find_gadget(c.gadget);
        Digraph out = interpret_gadget(resolve_structure_name(g.host), g);
        Digraph want = Digraph::from_structure(resolve_structure_name(c.expect));
        CHECK(find_isomorphism(out, want).has_value());
    }
}

TEST_CASE("documented discrepancies reproduce exactly") {
    // the printed two-line formula over complement(DP010_3) misses K1+K2
    const GadgetDefinition& printed = find_gadget("DP010bar-defines-K1K2");
    CHECK(printed.provenance == GadgetDefinition::Provenance::Printed);
    Digraph got = interpret_gadget(resolve_structure_name(printed.host), printed);
    CHECK(got == Digraph(3, {{0, 0}, {2, 0}}));
    CHECK_FALSE(find_isomorphism(got, catalog("K1+K2").digraph()).has_value());

    // the printed DP011 display lands on DP110_3, not on the H5' shape
    const GadgetDefinition& dp011 = find_gadget("DP011-defines-H5prime");
    Digraph out = interpret_gadget(resolve_structure_name(dp011.host), dp011);
    CHECK(find_isomorphism(out, catalog("DP110_3").digraph()).has_value());
    CHECK_FALSE(find_isomorphism(out, catalog("H5p").digraph()).has_value());
}

TEST_CASE("gadget rewrite rule composes with evaluation") {
    // MC over complement(H8) reduces to MC over K1+K2 by atom substitution
    RewriteRule rule = RewriteRule::gadget("H8bar-defines-K1K2");
    Structure host = resolve_structure_name("~H8");
    const GadgetDefinition& g = find_gadget("H8bar-defines-K1K2");
    Digraph target = interpret_gadget(host, g);
    auto suite = enumerate_sentences(kDg, 3, 2, EnumMode::Exhaustive);
    for (const auto& ps : suite) {
        FormulaPtr f = ps.to_formula();
        CHECK(evaluate(target.to_structure(), f) ==
              evaluate(host, reduce_sentence(rule, f)));
    }
}

TEST_CASE("resolve_structure_name handles the complement prefix") {
    CHECK(Digraph::from_structure(resolve_structure_name("~K2")) ==
          catalog("K2bar").digraph());
    CHECK(resolve_structure_name("B_NAE") == catalog("B_NAE").structure);
    CHECK_THROWS_AS(resolve_structure_name("~B_NAE"), SemanticError);  // not a digraph
    CHECK_THROWS_AS(resolve_structure_name("nope"), SemanticError);
    CHECK_THROWS_AS(find_gadget("nope"), SemanticError);
}
