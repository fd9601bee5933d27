#include <doctest.h>

#include <chrono>

#include "mc/evaluator.hpp"
#include "mc/formula.hpp"
#include "mc/reductions.hpp"
#include "mc/structure.hpp"
#include "mc/verify.hpp"

using namespace mc;

namespace {

const Signature kDg = Signature::digraph();

// Reference evaluator: plain recursion over explicit environments, no sharing,
// no memo. Everything the fast evaluator reports is checked against this.
bool naive(const Structure& s, const FormulaPtr& f,
           std::vector<std::pair<std::string, int>>& env) {
    switch (f->kind) {
        case Kind::True:
            return true;
        case Kind::False:
            return false;
        case Kind::Atom: {
            std::vector<int> t;
            for (const auto& a : f->args) {
                if (a.is_element) {
                    t.push_back(a.element);
                } else {
                    int val = -1;
                    for (auto it = env.rbegin(); it != env.rend(); ++it)
                        if (it->first == a.var) {
                            val = it->second;
                            break;
                        }
                    t.push_back(val);
                }
            }
            return s.table(f->rel).count(t) > 0;
        }
        case Kind::Not:
            return !naive(s, f->children[0], env);
        case Kind::And:
            for (const auto& c : f->children)
                if (!naive(s, c, env)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : f->children)
                if (naive(s, c, env)) return true;
            return false;
        case Kind::Exists:
        case Kind::Forall:
            for (int v = 0; v < s.size; ++v) {
                env.emplace_back(f->var, v);
                bool r = naive(s, f->children[0], env);
                env.pop_back();
                if (f->kind == Kind::Exists ? r : !r) return r;
            }
            return f->kind == Kind::Forall;
    }
    return false;
}

bool naive(const Structure& s, const FormulaPtr& f) {
    std::vector<std::pair<std::string, int>> env;
    return naive(s, f, env);
}

}  // namespace

TEST_CASE("evaluate on the documented examples") {
    Structure k2 = catalog("K2").structure;
    Structure k2bar = catalog("K2bar").structure;
    CHECK(evaluate(k2, parse_formula("forall x. exists y. E(x,y)", kDg)));
    CHECK_FALSE(evaluate(k2, parse_formula("exists x. E(x,x)", kDg)));
    CHECK(evaluate(k2bar, parse_formula("exists x. E(x,x)", kDg)));
}

TEST_CASE("evaluate rejects open formulas and wrong signatures") {
    Structure k2 = catalog("K2").structure;
    CHECK_THROWS_AS(evaluate(k2, parse_formula("E(x,y)", kDg)), SemanticError);
    CHECK_THROWS_AS(evaluate(k2, parse_formula("exists x. R(x)", Signature{{"R", 1}})),
                    SemanticError);
}

TEST_CASE("explicit assignments cover free variables") {
    Structure k2 = catalog("K2").structure;
    FormulaPtr f = parse_formula("exists y. E(x,y)", kDg);
    CHECK(evaluate(k2, f, {{"x", 0}}));
    CHECK_THROWS_AS(evaluate(k2, f, {{"x", 5}}), SemanticError);
}

TEST_CASE("memoized evaluation agrees with naive recursion") {
    auto suite = enumerate_sentences(kDg, 3, 2, EnumMode::Exhaustive, 0, 0, true);
    auto rnd = enumerate_sentences(kDg, 6, 3, EnumMode::SeededRandom, 9, 120, true);
    suite.insert(suite.end(), rnd.begin(), rnd.end());
    std::vector<FormulaPtr> fs;
    for (const auto& ps : suite) fs.push_back(ps.to_formula());
    for (int n = 2; n <= 3; ++n) {
        for (const Digraph& h : digraph_representatives(n)) {
            Structure s = h.to_structure();
            for (const auto& f : fs) CHECK(evaluate(s, f) == naive(s, f));
        }
    }
}

TEST_CASE("evaluate_ground on the boolean example table") {
    Structure b1(Signature{{"R", 3}}, 2);
    b1.add("R", {0, 0, 0});
    b1.add("R", {0, 0, 1});
    FormulaPtr atom = parse_formula("R(x,y,z)", Signature{{"R", 3}});
    CHECK(evaluate_ground(b1, atom, {{"x", 0}, {"y", 0}, {"z", 1}}));
    CHECK_FALSE(evaluate_ground(b1, atom, {{"x", 1}, {"y", 1}, {"z", 1}}));
    CHECK(evaluate_ground(b1, parse_formula("true", kDg), {}));
    CHECK_THROWS_AS(evaluate_ground(b1, atom, {{"x", 0}}), SemanticError);
    CHECK_THROWS_AS(
        evaluate_ground(b1, parse_formula("exists x. R(x,x,x)", Signature{{"R", 3}}), {}),
        SemanticError);
}

TEST_CASE("agree_on_suite finds agreement and counterexamples") {
    auto suite = enumerate_sentences(kDg, 3, 2, EnumMode::Exhaustive, 0, 0, true);
    Structure p000 = catalog("P000_3").structure;
    Structure k2 = catalog("K2").structure;
    Structure k2bar = catalog("K2bar").structure;
    CHECK_FALSE(agree_on_suite(p000, k2, suite, nullptr, false).has_value());
    auto cex = agree_on_suite(k2, k2bar, suite, nullptr, false);
    REQUIRE(cex.has_value());
    CHECK(evaluate(k2, *cex) != evaluate(k2bar, *cex));
}

TEST_CASE("agree_on_suite supports translation and verdict flip") {
    auto suite = enumerate_sentences(kDg, 3, 2, EnumMode::Exhaustive);
    Digraph h = catalog("DP010_3").digraph();
    Structure s = h.to_structure();
    Structure cs = complement(h).to_structure();
    auto cex = agree_on_suite(
        s, cs, suite, [](const FormulaPtr& f) { return dualize(f); }, true);
    CHECK_FALSE(cex.has_value());
}

TEST_CASE("twelve quantifier sentences stay fast") {
    // naive recursion would visit up to 3^12 assignments; the memo keeps the
    // evaluation to (subformula count) x 3^(max free vars) entries
    std::string text;
    for (int i = 0; i < 12; ++i)
        text += (i % 2 ? "exists x" : "forall x") + std::to_string(i) + ". ";
    text += "E(x0,x11) | (E(x11,x1) & E(x1,x10)) | (E(x10,x2) & E(x2,x9)) | "
            "(E(x9,x3) & E(x3,x8)) | (E(x8,x4) & E(x4,x7)) | (E(x7,x5) & E(x5,x6))";
    FormulaPtr f = parse_formula(text, kDg);
    Digraph h = catalog("H6").digraph();
    auto t0 = std::chrono::steady_clock::now();
    evaluate(h.to_structure(), f);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(dt < 1.0);
}
