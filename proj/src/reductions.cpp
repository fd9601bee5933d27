#include "mc/reductions.hpp"

#include <algorithm>
#include <map>

#include "mc/classifier.hpp"
#include "mc/evaluator.hpp"

namespace mc {

// ------------------------------------------------------------- rewrite rules

std::string RewriteRule::name() const {
    switch (id) {
        case Id::Dual:
            return "dual";
        case Id::SymClos:
            return "symclos";
        case Id::Doub:
            return "doub";
        case Id::TranClos:
            return "tranclos(" + std::to_string(host_size) + ")";
        case Id::NaeToK2:
            return "nae_to_k2";
        case Id::Gadget:
            return "gadget(" + gadget_name + ")";
    }
    return "?";
}

RewriteRule RewriteRule::from_name(const std::string& name) {
    if (name == "dual") return dual();
    if (name == "symclos") return symclos();
    if (name == "doub") return doub();
    if (name == "nae_to_k2") return nae_to_k2();
    auto paren = name.find('(');
    if (paren != std::string::npos && name.back() == ')') {
        std::string head = name.substr(0, paren);
        std::string arg = name.substr(paren + 1, name.size() - paren - 2);
        if (head == "tranclos") {
            try {
                return tranclos(std::stoi(arg));
            } catch (const std::exception&) {
                throw SemanticError("bad tranclos host size: " + arg);
            }
        }
        if (head == "gadget") return gadget(arg);
    }
    throw SemanticError("unknown rewrite rule: " + name);
}

namespace {

const Signature& dg_sig() {
    static const Signature s = Signature::digraph();
    return s;
}

FormulaPtr parse_dg(std::string_view text) { return parse_formula(text, dg_sig()); }

GadgetDefinition symclos_gadget() {
    return {"symclos", dg_sig(), {"u", "v"}, parse_dg("E(u,v) | E(v,u)"), "", "",
            GadgetDefinition::Provenance::Constructed};
}

GadgetDefinition doub_gadget() {
    return {"doub", dg_sig(), {"u", "v"}, parse_dg("E(u,v) & E(v,u)"), "", "",
            GadgetDefinition::Provenance::Constructed};
}

// Walks of length 1..n from u to v. The length-n disjunct is what makes loops
// created by a Hamiltonian cycle expressible; a bound of n-1 misses them.
GadgetDefinition tranclos_gadget(int n) {
    std::string name = "tranclos(" + std::to_string(n) + ")";
    if (n < 3)
        return {name, dg_sig(), {"u", "v"}, parse_dg("E(u,v)"), "", "",
                GadgetDefinition::Provenance::Constructed};
    Term u = Term::variable("u"), v = Term::variable("v");
    auto w = [](int i) { return Term::variable("w" + std::to_string(i)); };
    std::vector<FormulaPtr> lengths;
    for (int len = 1; len <= n; ++len) {
        std::vector<FormulaPtr> steps;
        Term prev = u;
        for (int i = 1; i < len; ++i) {
            steps.push_back(Formula::atom("E", {prev, w(i)}));
            prev = w(i);
        }
        steps.push_back(Formula::atom("E", {prev, v}));
        lengths.push_back(Formula::conj(std::move(steps)));
    }
    FormulaPtr body = Formula::disj(std::move(lengths));
    for (int i = n - 1; i >= 1; --i) body = Formula::exists("w" + std::to_string(i), body);
    return {name, dg_sig(), {"u", "v"}, body, "", "", GadgetDefinition::Provenance::Constructed};
}

GadgetDefinition nae_gadget() {
    return {"nae_to_k2",
            dg_sig(),
            {"x1", "x2", "x3"},
            parse_dg("E(x1,x2) | E(x2,x3) | E(x1,x3)"),
            "K2",
            "",
            GadgetDefinition::Provenance::Constructed};
}

}  // namespace

FormulaPtr reduce_sentence(const RewriteRule& rule, const FormulaPtr& f) {
    switch (rule.id) {
        case RewriteRule::Id::Dual:
            return dualize(f);
        case RewriteRule::Id::SymClos:
            return substitute_atom(f, "E", symclos_gadget());
        case RewriteRule::Id::Doub:
            return substitute_atom(f, "E", doub_gadget());
        case RewriteRule::Id::TranClos:
            return substitute_atom(f, "E", tranclos_gadget(rule.host_size));
        case RewriteRule::Id::NaeToK2:
            return substitute_atom(f, "NAE", nae_gadget());
        case RewriteRule::Id::Gadget:
            return substitute_atom(f, "E", find_gadget(rule.gadget_name));
    }
    throw SemanticError("unreachable rewrite rule");
}

Digraph interpret_gadget(const Structure& host, const GadgetDefinition& g) {
    if (!(g.sig == host.sig)) throw SemanticError("gadget/host signature mismatch: " + g.name);
    if (g.free_vars.size() != 2)
        throw SemanticError("gadget does not define a binary relation: " + g.name);
    Digraph d;
    d.n = host.size;
    for (int u = 0; u < host.size; ++u)
        for (int v = 0; v < host.size; ++v) {
            Assignment a{{g.free_vars[0], u}, {g.free_vars[1], v}};
            if (evaluate(host, g.body, a)) d.edges.insert({u, v});
        }
    return d;
}

// --------------------------------------------------------- boolean gadgets

namespace {

bool contains_constant(const Structure& b, int value) {
    for (std::size_t r = 0; r < b.sig.relations.size(); ++r) {
        std::vector<int> t(static_cast<std::size_t>(b.sig.relations[r].second), value);
        if (b.tables[r].count(t) == 0) return false;
    }
    return true;
}

void require_normalized(const Structure& b) {
    if (b.size != 2) throw SemanticError("boolean gadget: universe must be {0,1}");
    if (b.sig.relations.empty()) throw SemanticError("boolean gadget: no relations");
    for (std::size_t r = 0; r < b.sig.relations.size(); ++r) {
        std::size_t cells = 1;
        for (int i = 0; i < b.sig.relations[r].second; ++i) cells *= 2;
        if (b.tables[r].empty())
            throw SemanticError("premise violated: relation " + b.sig.relations[r].first +
                                " is empty (structure not normalized)");
        if (b.tables[r].size() == cells)
            throw SemanticError("premise violated: relation " + b.sig.relations[r].first +
                                " is full (structure not normalized)");
    }
}

}  // namespace

BooleanGadgetCase boolean_gadget_case(const Structure& b) {
    bool zeros = contains_constant(b, 0);
    bool ones = contains_constant(b, 1);
    if (zeros && ones) return BooleanGadgetCase::BothConstantTuples;
    if (!zeros && !ones) return BooleanGadgetCase::NoConstantTuples;
    return ones ? BooleanGadgetCase::OnesOnly : BooleanGadgetCase::ZerosOnly;
}

std::pair<GadgetDefinition, BooleanGadgetContext> build_boolean_gadget(const Structure& b,
                                                                       BooleanGadgetCase c) {
    require_normalized(b);
    bool zeros = contains_constant(b, 0);
    bool ones = contains_constant(b, 1);
    const auto& rels = b.sig.relations;
    BooleanGadgetContext ctx;
    GadgetDefinition g;
    g.sig = b.sig;
    g.free_vars = {"u", "v"};
    g.provenance = GadgetDefinition::Provenance::Constructed;
    Term u = Term::variable("u"), v = Term::variable("v"), w = Term::variable("w");

    auto global = [&](std::size_t rel, int pos) {
        int off = 0;
        for (std::size_t r = 0; r < rel; ++r) off += rels[r].second;
        return off + pos;
    };

    switch (c) {
        case BooleanGadgetCase::NoConstantTuples: {
            if (zeros || ones)
                throw SemanticError(
                    "premise violated: the canonical relation contains a constant tuple");
            // One witness tuple per relation; identify positions by its bits.
            auto half = [&](const Term& a, const Term& bb) {
                std::vector<FormulaPtr> atoms;
                for (std::size_t r = 0; r < rels.size(); ++r) {
                    const auto& t = *b.tables[r].begin();
                    std::vector<Term> args;
                    for (int bit : t) args.push_back(bit == 0 ? a : bb);
                    atoms.push_back(Formula::atom(rels[r].first, std::move(args)));
                }
                return Formula::conj(std::move(atoms));
            };
            for (std::size_t r = 0; r < rels.size(); ++r) {
                const auto& t = *b.tables[r].begin();
                ctx.witness.push_back(t);
                for (int p = 0; p < rels[r].second; ++p)
                    (t[p] == 0 ? ctx.block_I : ctx.block_J).push_back(global(r, p));
            }
            g.name = "omits-both-constants";
            g.expected_result = "K2";
            g.body = Formula::disj({half(u, v), half(v, u)});
            break;
        }
        case BooleanGadgetCase::BothConstantTuples: {
            if (!zeros || !ones)
                throw SemanticError(
                    "premise violated: the canonical relation must contain both constant tuples");
            // A tuple omitted by some relation; remaining relations collapse to u.
            std::size_t k = rels.size();
            std::vector<int> t;
            for (std::size_t r = 0; r < rels.size() && k == rels.size(); ++r) {
                int arity = rels[r].second;
                std::vector<int> cur(static_cast<std::size_t>(arity), 0);
                for (;;) {
                    if (b.tables[r].count(cur) == 0) {
                        k = r;
                        t = cur;
                        break;
                    }
                    int p = arity - 1;
                    while (p >= 0 && cur[p] == 1) cur[p--] = 0;
                    if (p < 0) break;
                    cur[p] = 1;
                }
            }
            if (k == rels.size())
                throw SemanticError("premise violated: no relation omits a tuple");
            for (std::size_t r = 0; r < rels.size(); ++r) {
                if (r == k) {
                    ctx.witness.push_back(t);
                    for (int p = 0; p < rels[r].second; ++p)
                        (t[p] == 0 ? ctx.block_I : ctx.block_J).push_back(global(r, p));
                } else {
                    ctx.witness.push_back(std::vector<int>(rels[r].second, 0));
                    for (int p = 0; p < rels[r].second; ++p)
                        ctx.block_I.push_back(global(r, p));
                }
            }
            auto half = [&](const Term& a, const Term& bb) {
                std::vector<FormulaPtr> atoms;
                std::vector<Term> args;
                for (int bit : t) args.push_back(bit == 0 ? a : bb);
                atoms.push_back(Formula::atom(rels[k].first, std::move(args)));
                for (std::size_t r = 0; r < rels.size(); ++r)
                    if (r != k)
                        atoms.push_back(Formula::atom(
                            rels[r].first, std::vector<Term>(rels[r].second, a)));
                return Formula::conj(std::move(atoms));
            };
            g.name = "contains-both-constants";
            g.expected_result = "K2bar";
            g.body = Formula::conj({half(u, v), half(v, u)});
            break;
        }
        case BooleanGadgetCase::OnesOnly:
        case BooleanGadgetCase::ZerosOnly: {
            bool ones_case = c == BooleanGadgetCase::OnesOnly;
            if (ones_case && (zeros || !ones))
                throw SemanticError(
                    "premise violated: need all-ones present and all-zeros absent");
            if (!ones_case && (ones || !zeros))
                throw SemanticError(
                    "premise violated: need all-zeros present and all-ones absent");
            int from = ones_case ? 0 : 1;  // the value the violating flip starts from
            auto viol = dominates_boolean(b, from, 1 - from);
            if (!viol)
                throw SemanticError(
                    "premise violated: domination holds, the structure has a forall-canon");
            std::size_t k = static_cast<std::size_t>(b.sig.index_of(viol->relation));
            const std::vector<int>& t = viol->tuple;
            const std::vector<int>& S = viol->flipped_positions;
            for (std::size_t r = 0; r < rels.size(); ++r) {
                if (r == k) {
                    ctx.witness.push_back(t);
                    for (int p = 0; p < rels[r].second; ++p) {
                        bool in_S = std::find(S.begin(), S.end(), p) != S.end();
                        if (in_S)
                            ctx.block_I.push_back(global(r, p));
                        else if (t[p] == from)
                            ctx.block_J0.push_back(global(r, p));
                        else
                            ctx.block_J1.push_back(global(r, p));
                    }
                } else {
                    // Positions held at the constant the existential variable is
                    // forced to; their witness component is that constant tuple.
                    ctx.witness.push_back(std::vector<int>(rels[r].second, 1 - from));
                    for (int p = 0; p < rels[r].second; ++p)
                        ctx.block_J1.push_back(global(r, p));
                }
            }
            // half(a,b) = exists w: every relation holds at the constant tuple w..w
            // (forcing w) and R_k holds with S -> a, unflipped from-positions -> b.
            auto half = [&](const Term& a, const Term& bb) {
                std::vector<FormulaPtr> atoms;
                for (std::size_t r = 0; r < rels.size(); ++r)
                    atoms.push_back(
                        Formula::atom(rels[r].first, std::vector<Term>(rels[r].second, w)));
                std::vector<Term> args;
                for (int p = 0; p < rels[k].second; ++p) {
                    bool in_S = std::find(S.begin(), S.end(), p) != S.end();
                    if (in_S)
                        args.push_back(a);
                    else if (t[p] == from)
                        args.push_back(bb);
                    else
                        args.push_back(w);
                }
                atoms.push_back(Formula::atom(rels[k].first, std::move(args)));
                return Formula::exists("w", Formula::conj(std::move(atoms)));
            };
            g.name = ones_case ? "ones-only-no-domination" : "zeros-only-no-domination";
            g.expected_result = "K2bar";
            g.body = Formula::conj({half(u, v), half(v, u)});
            break;
        }
    }
    return {std::move(g), std::move(ctx)};
}

// ------------------------------------------------------------ gadget catalog

namespace {

std::vector<GadgetDefinition> build_gadget_catalog() {
    using P = GadgetDefinition::Provenance;
    std::vector<GadgetDefinition> out;
    auto put = [&](std::string name, std::string_view body, std::string host,
                   std::string expected, P prov) {
        out.push_back(
            {std::move(name), dg_sig(), {"u", "v"}, parse_dg(body), std::move(host),
             std::move(expected), prov});
    };

    // Two-line formula over the complement of the directed middle-loop path. As
    // displayed it interprets to {(a,a),(c,a)}; flipping the second line's
    // direction pattern (to match the H8-complement display) recovers K1+K2.
    put("DP010bar-defines-K1K2",
        "(forall w. E(w,w) | (E(u,w) & E(w,v))) | (forall w. E(w,w) | (E(w,u) & E(w,v)))",
        "~DP010_3", "K1+K2", P::Printed);
    put("DP010bar-defines-K1K2-corrected",
        "(forall w. E(w,w) | (E(u,w) & E(w,v))) | (forall w. E(w,w) | (E(w,u) & E(v,w)))",
        "~DP010_3", "K1+K2", P::Corrected);

    put("DP110-defines-H5",
        "E(u,v) | (forall w. E(w,w) | (E(v,w) & (exists w'. E(w',w) & E(w',u))))", "DP110_3",
        "H5", P::Printed);

    // Displayed as the H5' definition over DP011_3, but it interprets to a copy
    // of DP110_3; usable as the first link of a composed reduction instead.
    put("DP011-defines-H5prime",
        "E(v,u) | (forall w. E(w,w) | (E(w,u) & (exists w'. E(w,w') & E(v,w'))))", "DP011_3",
        "H5p", P::Printed);
    put("DP011-defines-H5prime-corrected",
        "E(v,u) | (forall w. E(w,w) | (E(w,u) & (exists w'. E(w,w') & E(v,w'))))", "DP011_3",
        "DP110_3", P::Corrected);

    put("H6bar-defines-DP100bar",
        "E(u,v) | (forall w. E(w,w) | ((exists w'. E(w,w') & E(w',u)) & (exists w''. E(w'',w) &"
        " E(w'',v))))",
        "~H6", "~DP100_3", P::Printed);

    put("H8bar-defines-K1K2",
        "(forall w. E(w,w) | (E(u,w) & E(w,v))) | (forall w. E(w,w) | (E(w,u) & E(v,w)))",
        "~H8", "K1+K2", P::Printed);

    return out;
}

}  // namespace

const std::vector<GadgetDefinition>& gadget_catalog() {
    static const std::vector<GadgetDefinition> cat = build_gadget_catalog();
    return cat;
}

const GadgetDefinition& find_gadget(const std::string& name) {
    for (const auto& g : gadget_catalog())
        if (g.name == name) return g;
    throw SemanticError("unknown gadget: " + name);
}

Structure resolve_structure_name(const std::string& name) {
    if (!name.empty() && name[0] == '~')
        return complement(catalog(name.substr(1)).digraph()).to_structure();
    return catalog(name).structure;
}

}  // namespace mc
