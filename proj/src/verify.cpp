#include "mc/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "mc/classifier.hpp"
#include "mc/evaluator.hpp"
#include "mc/reductions.hpp"

namespace mc {

bool SuiteReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string SuiteReport::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
        os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) os << " - " << c.detail;
        os << "\n";
    }
    os << (passed() ? "PASSED" : "FAILED") << "\n";
    return os.str();
}

std::vector<Digraph> all_digraphs(int size) {
    const int nn = size * size;
    std::vector<Digraph> out;
    out.reserve(1u << nn);
    for (std::uint32_t mask = 0; mask < (1u << nn); ++mask) {
        Digraph d;
        d.n = size;
        for (int b = 0; b < nn; ++b)
            if (mask & (1u << b)) d.edges.insert({b / size, b % size});
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Digraph> digraph_representatives(int size) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(size));
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto mask_of = [&](const Digraph& d) {
        std::uint32_t m = 0;
        for (auto [u, v] : d.edges) m |= 1u << (u * size + v);
        return m;
    };
    std::vector<Digraph> out;
    for (auto& d : all_digraphs(size)) {
        std::uint32_t m = mask_of(d);
        bool minimal = true;
        for (const auto& q : perms) {
            Digraph r;
            r.n = size;
            for (auto [u, v] : d.edges) r.edges.insert({q[u], q[v]});
            if (mask_of(r) < m) minimal = false;
        }
        if (minimal) out.push_back(std::move(d));
    }
    return out;
}

namespace {

std::string describe(const Digraph& h) {
    std::string s = "digraph{";
    bool first = true;
    for (auto [u, v] : h.edges) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(u) + std::to_string(v);
    }
    return s + "}";
}

std::vector<PrenexSentence> sentence_suite(const Signature& sig, std::uint64_t seed,
                                           bool with_negation = false) {
    auto suite = enumerate_sentences(sig, 3, 2, EnumMode::Exhaustive, 0, 0, with_negation);
    auto random = enumerate_sentences(sig, 6, 3, EnumMode::SeededRandom, seed, 100,
                                      with_negation);
    suite.insert(suite.end(), random.begin(), random.end());
    return suite;
}

const std::vector<PrenexSentence>& digraph_suite(std::uint64_t seed) {
    static std::uint64_t cached_seed = 0;
    static std::vector<PrenexSentence> suite;
    if (suite.empty() || cached_seed != seed) {
        suite = sentence_suite(Signature::digraph(), seed);
        cached_seed = seed;
    }
    return suite;
}

struct Scan {
    long checked = 0;
    std::string counterexample;

    bool ok() const { return counterexample.empty(); }
    CheckResult result(std::string name) const {
        if (ok())
            return {std::move(name), true, std::to_string(checked) + " checks"};
        return {std::move(name), false, counterexample};
    }
    void fail(const std::string& what) {
        if (counterexample.empty()) counterexample = what;
    }
};

// ------------------------------------------------- catalog reconstruction

CheckResult catalog_constraints() {
    Scan scan;
    auto expect = [&](bool cond, const std::string& what) {
        ++scan.checked;
        if (!cond) scan.fail("catalog constraint violated: " + what);
    };
    auto has_canons = [&](const Digraph& d, bool fa, bool ex) {
        return (fa == !forall_canons(d).empty()) && (ex == !exists_canons(d).empty());
    };

    for (const auto& name : {"H1", "H1p"}) {
        Digraph d = catalog(name).digraph();
        auto tw = find_twins(d);
        expect(tw.size() == 1 && tw[0] == std::make_pair(0, 2),
               std::string(name) + " has twins a,c");
        Digraph small = contract_twin(d, 0, 2);
        expect(has_canons(small, true, true),
               std::string(name) + " contracts to a digraph with both canons");
    }
    for (const auto& name : {"H2", "H2p", "H3", "H3p", "P110_3"}) {
        Digraph d = catalog(name).digraph();
        auto fa = forall_canons(d);
        auto ex = exists_canons(d);
        expect(std::count(fa.begin(), fa.end(), 2) == 1,
               std::string(name) + ": vertex c is a forall-canon");
        expect(std::count(ex.begin(), ex.end(), 1) == 1,
               std::string(name) + ": vertex b is an exists-canon");
    }
    for (const auto& name : {"H4", "H4p"}) {
        Digraph d = catalog(name).digraph();
        auto fa = forall_canons(d);
        auto ex = exists_canons(d);
        auto gp = good_pairs(d);
        expect(std::count(fa.begin(), fa.end(), 2) == 1,
               std::string(name) + ": vertex c is a forall-canon");
        expect(std::count(ex.begin(), ex.end(), 1) == 0,
               std::string(name) + ": vertex b is not an exists-canon");
        expect(std::count(gp.begin(), gp.end(), std::make_pair(2, 1)) == 1,
               std::string(name) + ": (c,b) is a good pair");
    }
    for (const auto& name : {"H5", "H5p"}) {
        Digraph d = catalog(name).digraph();
        Digraph k = closure(closure(d, ClosureKind::Tran), ClosureKind::Doub);
        expect(find_isomorphism(k, catalog("K1_1+K11_2").digraph()).has_value(),
               std::string(name) + ": doub(tran-clos) is K1_1+K11_2");
        expect(has_canons(d, false, false), std::string(name) + ": no canons");
    }
    {
        Digraph d = catalog("H6").digraph();
        expect(d.loop_count() == 1 && d.edges.size() == 4, "H6: one loop, three arcs");
        expect(d.edge(0, 1) && d.edge(1, 2) && d.edge(2, 0), "H6: cyclic orientation");
    }
    for (const auto& name : {"H7", "H7p"}) {
        Digraph d = complement(catalog(name).digraph());
        expect(has_canons(d, false, false),
               std::string(name) + ": complement has no canon of either kind");
        expect(!good_pairs(d).empty(), std::string(name) + ": complement has a good pair");
    }
    {
        Digraph d = complement(catalog("H8").digraph());
        auto fa = forall_canons(d);
        expect(std::count(fa.begin(), fa.end(), 1) == 1 && !d.has_loop(1),
               "H8: loopless vertex b of the complement is a forall-canon");
    }
    return scan.result("catalog-reconstruction-constraints");
}

// ----------------------------------------------------------- suite bodies

void canon_lemma_checks(SuiteReport& rep, std::uint64_t seed) {
    const auto& suite = digraph_suite(seed);
    Scan fa, ex;
    for (const auto& h : digraph_representatives(3)) {
        Structure s = h.to_structure();
        auto fas = forall_canons(h);
        auto exs = exists_canons(h);
        for (const auto& ps : suite) {
            if (!fas.empty()) {
                ++fa.checked;
                if (evaluate(s, ps.to_formula()) !=
                    evaluate(s, instantiate(ps, fas.front(), std::nullopt)))
                    fa.fail(render_prenex(ps) + " on " + describe(h));
            }
            if (!exs.empty()) {
                ++ex.checked;
                if (evaluate(s, ps.to_formula()) !=
                    evaluate(s, instantiate(ps, std::nullopt, exs.front())))
                    ex.fail(render_prenex(ps) + " on " + describe(h));
            }
        }
    }
    rep.checks.push_back(fa.result("forall-canon-instantiation"));
    rep.checks.push_back(ex.result("exists-canon-instantiation"));

    Scan dualc;
    for (const auto& h : all_digraphs(3)) {
        ++dualc.checked;
        if (forall_canons(h) != exists_canons(complement(h)) ||
            exists_canons(h) != forall_canons(complement(h)))
            dualc.fail(describe(h));
    }
    rep.checks.push_back(dualc.result("canon-complement-duality"));

    // boolean domination instantiation, single relation of arity <= 2
    Scan dom;
    for (int arity = 1; arity <= 2; ++arity) {
        Signature sig{{"R", arity}};
        auto bsuite = sentence_suite(sig, seed);
        int cells = 1 << arity;
        for (std::uint32_t mask = 1; mask + 1 < (1u << cells); ++mask) {
            Structure b(sig, 2);
            for (int t = 0; t < cells; ++t)
                if (mask & (1u << t)) {
                    std::vector<int> tuple;
                    for (int p = arity - 1; p >= 0; --p) tuple.push_back((t >> p) & 1);
                    b.add("R", tuple);
                }
            for (int hi = 0; hi <= 1; ++hi) {
                int lo = 1 - hi;
                if (dominates_boolean(b, lo, hi)) continue;
                for (const auto& ps : bsuite) {
                    ++dom.checked;
                    if (evaluate(b, ps.to_formula()) != evaluate(b, instantiate(ps, lo, hi)))
                        dom.fail(render_prenex(ps) + " on R-mask " + std::to_string(mask) +
                                 " hi=" + std::to_string(hi));
                }
            }
        }
    }
    rep.checks.push_back(dom.result("boolean-domination-instantiation"));
}

void duality_checks(SuiteReport& rep, std::uint64_t seed) {
    const auto& suite = digraph_suite(seed);
    Scan inv;
    for (const auto& ps : suite) {
        ++inv.checked;
        FormulaPtr f = ps.to_formula();
        if (!equal(dualize(dualize(f)), f)) inv.fail(render_prenex(ps));
    }
    rep.checks.push_back(inv.result("dualize-involution"));

    Scan dual;
    for (const auto& h : digraph_representatives(3)) {
        Structure s = h.to_structure();
        Structure cs = complement(h).to_structure();
        for (const auto& ps : suite) {
            ++dual.checked;
            FormulaPtr f = ps.to_formula();
            if (evaluate(s, f) == evaluate(cs, dualize(f)))
                dual.fail(render_prenex(ps) + " on " + describe(h));
        }
    }
    rep.checks.push_back(dual.result("complement-duality"));
}

void closure_checks(SuiteReport& rep, std::uint64_t seed) {
    const auto& suite = digraph_suite(seed);
    struct Case {
        const char* name;
        ClosureKind kind;
        RewriteRule rule;
    } cases[] = {{"symclos-rewrite", ClosureKind::Sym, RewriteRule::symclos()},
                 {"doub-rewrite", ClosureKind::Doub, RewriteRule::doub()},
                 {"tranclos-rewrite", ClosureKind::Tran, RewriteRule::tranclos(3)}};
    for (const auto& c : cases) {
        Scan scan;
        for (const auto& h : digraph_representatives(3)) {
            Structure host = h.to_structure();
            Structure closed = closure(h, c.kind).to_structure();
            for (const auto& ps : suite) {
                ++scan.checked;
                FormulaPtr f = ps.to_formula();
                if (evaluate(closed, f) != evaluate(host, reduce_sentence(c.rule, f)))
                    scan.fail(render_prenex(ps) + " on " + describe(h));
            }
        }
        rep.checks.push_back(scan.result(c.name));
    }

    Scan nae;
    const Structure& b_nae = catalog("B_NAE").structure;
    Structure k2 = catalog("K2").structure;
    auto nae_suite = sentence_suite(b_nae.sig, seed);
    for (const auto& ps : nae_suite) {
        ++nae.checked;
        FormulaPtr f = ps.to_formula();
        if (evaluate(b_nae, f) != evaluate(k2, reduce_sentence(RewriteRule::nae_to_k2(), f)))
            nae.fail(render_prenex(ps));
    }
    rep.checks.push_back(nae.result("nae-to-k2-rewrite"));
}

void enumerate_boolean_structures(int max_total_arity,
                                  const std::function<void(const Structure&)>& fn) {
    // single relation
    for (int a1 = 1; a1 <= max_total_arity; ++a1) {
        int cells = 1 << a1;
        for (std::uint32_t m = 1; m + 1 < (1u << cells); ++m) {
            Structure b(Signature{{"R1", a1}}, 2);
            for (int t = 0; t < cells; ++t)
                if (m & (1u << t)) {
                    std::vector<int> tuple;
                    for (int p = a1 - 1; p >= 0; --p) tuple.push_back((t >> p) & 1);
                    b.add("R1", tuple);
                }
            fn(b);
        }
    }
    // two relations
    for (int a1 = 1; a1 <= max_total_arity - 1; ++a1)
        for (int a2 = a1; a1 + a2 <= max_total_arity; ++a2) {
            int c1 = 1 << a1, c2 = 1 << a2;
            for (std::uint32_t m1 = 1; m1 + 1 < (1u << c1); ++m1)
                for (std::uint32_t m2 = 1; m2 + 1 < (1u << c2); ++m2) {
                    Structure b(Signature{{"R1", a1}, {"R2", a2}}, 2);
                    for (int t = 0; t < c1; ++t)
                        if (m1 & (1u << t)) {
                            std::vector<int> tuple;
                            for (int p = a1 - 1; p >= 0; --p) tuple.push_back((t >> p) & 1);
                            b.add("R1", tuple);
                        }
                    for (int t = 0; t < c2; ++t)
                        if (m2 & (1u << t)) {
                            std::vector<int> tuple;
                            for (int p = a2 - 1; p >= 0; --p) tuple.push_back((t >> p) & 1);
                            b.add("R2", tuple);
                        }
                    fn(b);
                }
        }
}

void boolean_gadget_checks(SuiteReport& rep) {
    Digraph k2 = catalog("K2").digraph();
    Digraph k2bar = catalog("K2bar").digraph();
    Scan no_const, both_const, split;
    enumerate_boolean_structures(4, [&](const Structure& b) {
        BooleanGadgetCase c = boolean_gadget_case(b);
        switch (c) {
            case BooleanGadgetCase::NoConstantTuples: {
                ++no_const.checked;
                auto [g, ctx] = build_boolean_gadget(b, c);
                if (!(interpret_gadget(b, g) == k2)) no_const.fail(render_structure(b));
                break;
            }
            case BooleanGadgetCase::BothConstantTuples: {
                ++both_const.checked;
                auto [g, ctx] = build_boolean_gadget(b, c);
                if (!(interpret_gadget(b, g) == k2bar)) both_const.fail(render_structure(b));
                break;
            }
            case BooleanGadgetCase::OnesOnly:
            case BooleanGadgetCase::ZerosOnly: {
                int from = c == BooleanGadgetCase::OnesOnly ? 0 : 1;
                if (!dominates_boolean(b, from, 1 - from)) break;  // premise: no forall-canon
                ++split.checked;
                auto [g, ctx] = build_boolean_gadget(b, c);
                if (!(interpret_gadget(b, g) == k2bar)) split.fail(render_structure(b));
                if (ctx.block_I.empty() || ctx.block_J0.empty() || ctx.block_J1.empty())
                    split.fail("empty partition block on " + render_structure(b));
                break;
            }
        }
    });
    rep.checks.push_back(no_const.result("omits-both-constants-defines-K2"));
    rep.checks.push_back(both_const.result("contains-both-constants-defines-K2bar"));
    rep.checks.push_back(split.result("one-constant-no-domination-defines-K2bar"));
}

void digraph_gadget_checks(SuiteReport& rep) {
    Scan groups;
    std::map<std::string, bool> group_passed;
    for (const auto& g : gadget_catalog()) {
        if (g.expected_result.empty() || g.free_vars.size() != 2) continue;
        std::string base = g.name;
        if (base.size() > 10 && base.substr(base.size() - 10) == "-corrected")
            base = base.substr(0, base.size() - 10);
        Structure host = resolve_structure_name(g.host);
        Digraph got = interpret_gadget(host, g);
        Digraph want = Digraph::from_structure(resolve_structure_name(g.expected_result));
        bool ok = find_isomorphism(got, want).has_value();
        auto it = group_passed.find(base);
        if (it == group_passed.end())
            group_passed.emplace(base, ok);
        else
            it->second = it->second || ok;
    }
    for (const auto& [base, ok] : group_passed) {
        ++groups.checked;
        if (!ok) groups.fail("no passing form for " + base);
    }
    rep.checks.push_back(groups.result("catalog-interpretations"));

    // The two displays that do not interpret as printed, pinned to the exact
    // digraphs they produce instead.
    Scan disc;
    {
        ++disc.checked;
        const auto& g = find_gadget("DP010bar-defines-K1K2");
        Digraph got = interpret_gadget(resolve_structure_name(g.host), g);
        if (!(got == Digraph(3, {{0, 0}, {2, 0}})))
            disc.fail("DP010bar printed form: " + describe(got));
        ++disc.checked;
        const auto& gc = find_gadget("DP010bar-defines-K1K2-corrected");
        Digraph gotc = interpret_gadget(resolve_structure_name(gc.host), gc);
        if (!find_isomorphism(gotc, catalog("K1+K2").digraph()))
            disc.fail("DP010bar corrected form: " + describe(gotc));
    }
    {
        ++disc.checked;
        const auto& g = find_gadget("DP011-defines-H5prime");
        Digraph got = interpret_gadget(resolve_structure_name(g.host), g);
        if (!find_isomorphism(got, catalog("DP110_3").digraph()))
            disc.fail("DP011 printed form: " + describe(got));
        ++disc.checked;
        if (find_isomorphism(got, catalog("H5p").digraph()))
            disc.fail("DP011 printed form unexpectedly matches H5p");
    }
    rep.checks.push_back(disc.result("documented-discrepancies"));
}

void twin_checks(SuiteReport& rep, std::uint64_t seed) {
    auto neg_suite = sentence_suite(Signature::digraph(), seed, true);

    Scan named;
    ++named.checked;
    if (!find_isomorphism(contract_twin(catalog("P000_3").digraph(), 0, 2),
                          catalog("K2").digraph()))
        named.fail("P000_3 does not contract to K2");
    ++named.checked;
    {
        Digraph h = catalog("K1_1+K11_2").digraph();
        auto tw = find_twins(h);
        if (tw.size() != 1 ||
            !find_isomorphism(contract_twin(h, tw[0].first, tw[0].second),
                              catalog("K2bar").digraph()))
            named.fail("K1_1+K11_2 does not contract to K2bar");
    }
    rep.checks.push_back(named.result("named-contractions"));

    Scan agree;
    for (const auto& h : digraph_representatives(3)) {
        for (auto [x, y] : find_twins(h)) {
            Structure s1 = h.to_structure();
            Structure s2 = contract_twin(h, x, y).to_structure();
            for (const auto& ps : neg_suite) {
                ++agree.checked;
                FormulaPtr f = ps.to_formula();
                if (evaluate(s1, f) != evaluate(s2, f))
                    agree.fail(render_prenex(ps) + " on " + describe(h));
            }
        }
    }
    rep.checks.push_back(agree.result("twin-contraction-agreement"));
}

void good_pair_checks(SuiteReport& rep, std::uint64_t seed) {
    const auto& suite = digraph_suite(seed);

    Scan inst;
    for (const auto& h : digraph_representatives(3)) {
        auto gp = good_pairs(h);
        if (gp.empty()) continue;
        Structure s = h.to_structure();
        for (const auto& ps : suite) {
            ++inst.checked;
            if (evaluate(s, ps.to_formula()) !=
                evaluate(s, instantiate(ps, gp.front().first, gp.front().second)))
                inst.fail(render_prenex(ps) + " on " + describe(h));
        }
    }
    rep.checks.push_back(inst.result("good-pair-instantiation"));

    Scan canon_pair;
    for (const auto& h : all_digraphs(3)) {
        auto fas = forall_canons(h);
        auto exs = exists_canons(h);
        auto gp = good_pairs(h);
        for (int x : fas)
            for (int y : exs) {
                ++canon_pair.checked;
                if (!std::count(gp.begin(), gp.end(), std::make_pair(x, y)))
                    canon_pair.fail(describe(h) + " pair (" + std::to_string(x) + "," +
                                    std::to_string(y) + ")");
            }
    }
    rep.checks.push_back(canon_pair.result("canon-pair-is-good-pair"));

    Scan cover;
    for (const auto& h : all_digraphs(3)) {
        ++cover.checked;
        if (classify_digraph(h).first == ComplexityClass::Logspace && good_pairs(h).empty())
            cover.fail(describe(h));
    }
    rep.checks.push_back(cover.result("logspace-has-good-pair"));

    Scan ddag;
    for (const auto& name : {"H7", "H7p"}) {
        Digraph h = complement(catalog(name).digraph());
        auto gp = good_pairs(h);
        if (gp.empty()) {
            ddag.fail(std::string("no good pair on complement(") + name + ")");
            continue;
        }
        Structure s = h.to_structure();
        for (const auto& ps : suite) {
            ++ddag.checked;
            if (evaluate(s, ps.to_formula()) !=
                evaluate(s, instantiate(ps, gp.front().first, gp.front().second)))
                ddag.fail(render_prenex(ps) + " on complement(" + name + ")");
        }
    }
    rep.checks.push_back(ddag.result("tournament-complement-instantiation"));
}

void cross_classifier_checks(SuiteReport& rep) {
    Scan tables;
    for (int size = 1; size <= 3; ++size) {
        ++tables.checked;
        try {
            classification_table(size, false);
        } catch (const std::exception& e) {
            tables.fail(e.what());
        }
    }
    rep.checks.push_back(tables.result("classification-table-invariants"));

    Scan iso;
    ++iso.checked;
    std::size_t classes = digraph_representatives(3).size();
    if (classes != 104)
        iso.fail("expected 104 isomorphism classes, found " + std::to_string(classes));
    rep.checks.push_back(iso.result("isomorphism-class-count"));
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"canon-lemma", "duality",   "closures",  "boolean-gadgets", "digraph-gadgets",
            "twins",       "good-pair", "cross-classifier", "all"};
}

SuiteReport run_suite(const std::string& id, std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = id;
    rep.checks.push_back(catalog_constraints());
    if (id == "canon-lemma")
        canon_lemma_checks(rep, seed);
    else if (id == "duality")
        duality_checks(rep, seed);
    else if (id == "closures")
        closure_checks(rep, seed);
    else if (id == "boolean-gadgets")
        boolean_gadget_checks(rep);
    else if (id == "digraph-gadgets")
        digraph_gadget_checks(rep);
    else if (id == "twins")
        twin_checks(rep, seed);
    else if (id == "good-pair")
        good_pair_checks(rep, seed);
    else if (id == "cross-classifier")
        cross_classifier_checks(rep);
    else if (id == "all") {
        canon_lemma_checks(rep, seed);
        duality_checks(rep, seed);
        closure_checks(rep, seed);
        boolean_gadget_checks(rep);
        digraph_gadget_checks(rep);
        twin_checks(rep, seed);
        good_pair_checks(rep, seed);
        cross_classifier_checks(rep);
    } else {
        throw SemanticError("unknown verify suite: " + id);
    }
    return rep;
}

}  // namespace mc
