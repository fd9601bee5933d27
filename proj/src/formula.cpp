#include "mc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace mc {

int Signature::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].first == name) return static_cast<int>(i);
    return -1;
}

int Signature::arity_of(std::string_view name) const {
    int i = index_of(name);
    if (i < 0) throw SemanticError("unknown relation: " + std::string(name));
    return relations[i].second;
}

Signature Signature::digraph() { return Signature{{"E", 2}}; }

FormulaPtr Formula::atom(std::string rel, std::vector<Term> args) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::Atom;
    f->rel = std::move(rel);
    f->args = std::move(args);
    return f;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> children) {
    if (children.empty()) return truth();
    if (children.size() == 1) return children[0];
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::And;
    f->children = std::move(children);
    return f;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> children) {
    if (children.empty()) return falsity();
    if (children.size() == 1) return children[0];
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::Or;
    f->children = std::move(children);
    return f;
}

FormulaPtr Formula::neg(FormulaPtr child) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::Not;
    f->children = {std::move(child)};
    return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr child) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::Exists;
    f->var = std::move(var);
    f->children = {std::move(child)};
    return f;
}

FormulaPtr Formula::forall(std::string var, FormulaPtr child) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::Forall;
    f->var = std::move(var);
    f->children = {std::move(child)};
    return f;
}

FormulaPtr Formula::truth() {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::True;
    return f;
}

FormulaPtr Formula::falsity() {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind = Kind::False;
    return f;
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->rel != b->rel) return a->rel < b->rel ? -1 : 1;
    if (a->args != b->args) return a->args < b->args ? -1 : 1;
    if (a->var != b->var) return a->var < b->var ? -1 : 1;
    if (a->children.size() != b->children.size())
        return a->children.size() < b->children.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (int c = compare(a->children[i], b->children[i]); c != 0) return c;
    return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

static void collect_vars(const FormulaPtr& f, std::set<std::string>& bound,
                         std::set<std::string>& free, std::set<std::string>* all) {
    switch (f->kind) {
        case Kind::Atom:
            for (const auto& t : f->args)
                if (!t.is_element) {
                    if (all) all->insert(t.var);
                    if (!bound.count(t.var)) free.insert(t.var);
                }
            break;
        case Kind::Exists:
        case Kind::Forall: {
            if (all) all->insert(f->var);
            bool was_bound = bound.count(f->var) > 0;
            bound.insert(f->var);
            collect_vars(f->children[0], bound, free, all);
            if (!was_bound) bound.erase(f->var);
            break;
        }
        default:
            for (const auto& c : f->children) collect_vars(c, bound, free, all);
            break;
    }
}

std::set<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> bound, free;
    collect_vars(f, bound, free, nullptr);
    return free;
}

std::set<std::string> all_variables(const FormulaPtr& f) {
    std::set<std::string> bound, free, all;
    collect_vars(f, bound, free, &all);
    return all;
}

bool is_sentence(const FormulaPtr& f) { return free_variables(f).empty(); }

bool contains_negation(const FormulaPtr& f) {
    if (f->kind == Kind::Not) return true;
    for (const auto& c : f->children)
        if (contains_negation(c)) return true;
    return false;
}

bool within_fragment(const FormulaPtr& f, const Fragment& frag) {
    switch (f->kind) {
        case Kind::Not:
            if (!frag.allow_negation) return false;
            break;
        case Kind::Forall:
            if (!frag.allow_universal) return false;
            break;
        case Kind::Or:
            if (!frag.allow_disjunction) return false;
            break;
        default:
            break;
    }
    for (const auto& c : f->children)
        if (!within_fragment(c, frag)) return false;
    return true;
}

void check_signature(const FormulaPtr& f, const Signature& sig) {
    if (f->kind == Kind::Atom) {
        int arity = sig.arity_of(f->rel);
        if (static_cast<int>(f->args.size()) != arity)
            throw SemanticError("arity mismatch for relation " + f->rel + ": expected " +
                                std::to_string(arity) + ", got " + std::to_string(f->args.size()));
    }
    for (const auto& c : f->children) check_signature(c, sig);
}

FormulaPtr PrenexSentence::to_formula() const {
    FormulaPtr f = matrix;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
        f = it->first == Quant::Exists ? Formula::exists(it->second, f)
                                       : Formula::forall(it->second, f);
    return f;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    const Signature& sig;
    const Fragment& frag;

    Parser(std::string_view t, const Signature& s, const Fragment& f) : text(t), sig(s), frag(f) {}

    void skip_ws() {
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else if (text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    std::optional<std::string> try_ident() {
        skip_ws();
        if (pos >= text.size() || !ident_start(text[pos])) return std::nullopt;
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    std::string ident() {
        auto id = try_ident();
        if (!id) throw ParseError("expected identifier", pos);
        return *id;
    }

    FormulaPtr formula() {
        skip_ws();
        std::size_t save = pos;
        if (auto id = try_ident()) {
            if (*id == "forall" || *id == "exists") {
                if (*id == "forall" && !frag.allow_universal)
                    throw ParseError("connective outside fragment: forall", save);
                std::string v = ident();
                expect('.');
                FormulaPtr body = formula();
                return *id == "forall" ? Formula::forall(v, body) : Formula::exists(v, body);
            }
            pos = save;
        }
        return disj();
    }

    FormulaPtr disj() {
        std::vector<FormulaPtr> parts{conj()};
        std::size_t bar = pos;
        while (eat('|')) {
            if (!frag.allow_disjunction)
                throw ParseError("connective outside fragment: |", bar);
            parts.push_back(conj());
            bar = pos;
        }
        return Formula::disj(std::move(parts));
    }

    FormulaPtr conj() {
        std::vector<FormulaPtr> parts{unit()};
        while (eat('&')) parts.push_back(unit());
        return Formula::conj(std::move(parts));
    }

    FormulaPtr unit() {
        skip_ws();
        std::size_t save = pos;
        if (eat('~')) {
            if (!frag.allow_negation)
                throw ParseError("connective outside fragment: ~", save);
            return Formula::neg(unit());
        }
        if (eat('(')) {
            FormulaPtr f = formula();
            expect(')');
            return f;
        }
        auto id = try_ident();
        if (!id) throw ParseError("expected atom, '~', '(' or constant", pos);
        if (*id == "true") return Formula::truth();
        if (*id == "false") return Formula::falsity();
        if (*id == "forall" || *id == "exists")
            throw ParseError("quantifier must be parenthesized here", save);
        // atom
        if (sig.index_of(*id) < 0) throw SemanticError("unknown relation: " + *id);
        expect('(');
        std::vector<Term> args;
        args.push_back(Term::variable(ident()));
        while (eat(',')) args.push_back(Term::variable(ident()));
        expect(')');
        int arity = sig.arity_of(*id);
        if (static_cast<int>(args.size()) != arity)
            throw SemanticError("arity mismatch for relation " + *id + ": expected " +
                                std::to_string(arity) + ", got " + std::to_string(args.size()));
        return Formula::atom(*id, std::move(args));
    }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const Signature& sig, const Fragment& frag) {
    Parser p(text, sig, frag);
    FormulaPtr f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return f;
}

// --------------------------------------------------------------- rendering

namespace {

std::string render_term(const Term& t) {
    return t.is_element ? std::to_string(t.element) : t.var;
}

void render(const FormulaPtr& f, std::string& out, bool as_unit) {
    switch (f->kind) {
        case Kind::True:
            out += "true";
            break;
        case Kind::False:
            out += "false";
            break;
        case Kind::Atom: {
            out += f->rel;
            out += '(';
            for (std::size_t i = 0; i < f->args.size(); ++i) {
                if (i) out += ',';
                out += render_term(f->args[i]);
            }
            out += ')';
            break;
        }
        case Kind::Not:
            out += '~';
            render(f->children[0], out, true);
            break;
        case Kind::And:
        case Kind::Or: {
            bool paren = as_unit;
            if (paren) out += '(';
            const char* sep = f->kind == Kind::And ? " & " : " | ";
            for (std::size_t i = 0; i < f->children.size(); ++i) {
                if (i) out += sep;
                const FormulaPtr& c = f->children[i];
                bool child_unit = !(c->kind == Kind::Atom || c->kind == Kind::True ||
                                    c->kind == Kind::False || c->kind == Kind::Not);
                render(c, out, child_unit);
            }
            if (paren) out += ')';
            break;
        }
        case Kind::Exists:
        case Kind::Forall: {
            bool paren = as_unit;
            if (paren) out += '(';
            out += f->kind == Kind::Exists ? "exists " : "forall ";
            out += f->var;
            out += ". ";
            render(f->children[0], out, false);
            if (paren) out += ')';
            break;
        }
    }
}

}  // namespace

std::string render_formula(const FormulaPtr& f) {
    std::string out;
    render(f, out, false);
    return out;
}

std::string render_prenex(const PrenexSentence& s) { return render_formula(s.to_formula()); }

// ----------------------------------------------------------- substitution

FormulaPtr substitute(const FormulaPtr& f, const std::vector<std::pair<std::string, Term>>& map) {
    switch (f->kind) {
        case Kind::Atom: {
            std::vector<Term> args = f->args;
            bool changed = false;
            for (auto& t : args) {
                if (t.is_element) continue;
                for (const auto& [v, repl] : map)
                    if (t.var == v) {
                        t = repl;
                        changed = true;
                        break;
                    }
            }
            return changed ? Formula::atom(f->rel, std::move(args)) : f;
        }
        case Kind::Exists:
        case Kind::Forall: {
            std::vector<std::pair<std::string, Term>> inner;
            for (const auto& m : map)
                if (m.first != f->var) inner.push_back(m);
            FormulaPtr child = substitute(f->children[0], inner);
            if (child == f->children[0]) return f;
            return f->kind == Kind::Exists ? Formula::exists(f->var, child)
                                           : Formula::forall(f->var, child);
        }
        case Kind::True:
        case Kind::False:
            return f;
        default: {
            std::vector<FormulaPtr> children;
            children.reserve(f->children.size());
            bool changed = false;
            for (const auto& c : f->children) {
                FormulaPtr nc = substitute(c, map);
                changed |= nc != c;
                children.push_back(std::move(nc));
            }
            if (!changed) return f;
            if (f->kind == Kind::Not) return Formula::neg(children[0]);
            return f->kind == Kind::And ? Formula::conj(std::move(children))
                                        : Formula::disj(std::move(children));
        }
    }
}

// ------------------------------------------------------------------ prenex

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    std::string name = base;
    while (taken.count(name)) name += '\'';
    return name;
}

struct PrenexBuilder {
    std::set<std::string> taken;  // names already used in the output prefix

    PrenexSentence run(const FormulaPtr& f) {
        switch (f->kind) {
            case Kind::Atom:
            case Kind::True:
            case Kind::False:
                return {{}, f};
            case Kind::Not:
                throw SemanticError("to_prenex: negation not supported");
            case Kind::Exists:
            case Kind::Forall: {
                std::string name = f->var;
                FormulaPtr child = f->children[0];
                if (taken.count(name)) {
                    name = fresh_name(name, taken);
                    child = substitute(child, {{f->var, Term::variable(name)}});
                }
                taken.insert(name);
                PrenexSentence inner = run(child);
                inner.prefix.insert(inner.prefix.begin(),
                                    {f->kind == Kind::Exists ? Quant::Exists : Quant::Forall, name});
                return inner;
            }
            case Kind::And:
            case Kind::Or: {
                PrenexSentence out;
                std::vector<FormulaPtr> matrices;
                for (const auto& c : f->children) {
                    PrenexSentence part = run(c);
                    out.prefix.insert(out.prefix.end(), part.prefix.begin(), part.prefix.end());
                    matrices.push_back(part.matrix);
                }
                out.matrix = f->kind == Kind::And ? Formula::conj(std::move(matrices))
                                                  : Formula::disj(std::move(matrices));
                return out;
            }
        }
        throw SemanticError("to_prenex: unreachable");
    }
};

}  // namespace

PrenexSentence to_prenex(const FormulaPtr& f) {
    if (!is_sentence(f)) throw SemanticError("to_prenex: input has free variables");
    if (contains_negation(f)) throw SemanticError("to_prenex: negation not supported");
    PrenexBuilder b;
    return b.run(f);
}

// ------------------------------------------------------------------- dual

FormulaPtr dualize(const FormulaPtr& f, bool negate_atoms) {
    switch (f->kind) {
        case Kind::True:
            return Formula::falsity();
        case Kind::False:
            return Formula::truth();
        case Kind::Atom:
            return negate_atoms ? Formula::neg(f) : f;
        case Kind::Not:
            // double negation elimination keeps dualize-with-negation an involution
            if (negate_atoms && f->children[0]->kind == Kind::Atom) return f->children[0];
            return Formula::neg(dualize(f->children[0], negate_atoms));
        case Kind::And:
        case Kind::Or: {
            std::vector<FormulaPtr> children;
            for (const auto& c : f->children) children.push_back(dualize(c, negate_atoms));
            return f->kind == Kind::And ? Formula::disj(std::move(children))
                                        : Formula::conj(std::move(children));
        }
        case Kind::Exists:
            return Formula::forall(f->var, dualize(f->children[0], negate_atoms));
        case Kind::Forall:
            return Formula::exists(f->var, dualize(f->children[0], negate_atoms));
    }
    throw SemanticError("dualize: unreachable");
}

// ----------------------------------------------------------- instantiation

FormulaPtr instantiate(const PrenexSentence& s, std::optional<int> universal_value,
                       std::optional<int> existential_value) {
    if (!universal_value && !existential_value)
        throw SemanticError("instantiate: no value given");
    std::vector<std::pair<std::string, Term>> map;
    std::vector<std::pair<Quant, std::string>> kept;
    for (const auto& [q, v] : s.prefix) {
        if (q == Quant::Forall && universal_value) {
            map.emplace_back(v, Term::constant(*universal_value));
        } else if (q == Quant::Exists && existential_value) {
            map.emplace_back(v, Term::constant(*existential_value));
        } else {
            kept.push_back({q, v});
        }
    }
    FormulaPtr body = substitute(s.matrix, map);
    for (auto it = kept.rbegin(); it != kept.rend(); ++it)
        body = it->first == Quant::Exists ? Formula::exists(it->second, body)
                                          : Formula::forall(it->second, body);
    return body;
}

// ------------------------------------------------------- atom substitution

namespace {

// Renames both binders and occurrences; `map` must not touch free variables.
FormulaPtr rename_bound(const FormulaPtr& f, const std::map<std::string, std::string>& map) {
    switch (f->kind) {
        case Kind::Atom: {
            std::vector<Term> args = f->args;
            for (auto& t : args) {
                if (t.is_element) continue;
                auto it = map.find(t.var);
                if (it != map.end()) t = Term::variable(it->second);
            }
            return Formula::atom(f->rel, std::move(args));
        }
        case Kind::Exists:
        case Kind::Forall: {
            auto it = map.find(f->var);
            std::string name = it != map.end() ? it->second : f->var;
            FormulaPtr child = rename_bound(f->children[0], map);
            return f->kind == Kind::Exists ? Formula::exists(name, child)
                                           : Formula::forall(name, child);
        }
        case Kind::True:
        case Kind::False:
            return f;
        default: {
            std::vector<FormulaPtr> children;
            for (const auto& c : f->children) children.push_back(rename_bound(c, map));
            if (f->kind == Kind::Not) return Formula::neg(children[0]);
            return f->kind == Kind::And ? Formula::conj(std::move(children))
                                        : Formula::disj(std::move(children));
        }
    }
}

struct AtomSubst {
    const std::string& target;
    const GadgetDefinition& gadget;
    std::vector<std::string> gadget_bound;
    int counter = 0;

    FormulaPtr run(const FormulaPtr& f) {
        if (f->kind == Kind::Atom) {
            if (f->rel != target) return f;
            if (f->args.size() != gadget.free_vars.size())
                throw SemanticError("substitute_atom: arity mismatch on " + target);
            // fresh bound variables per occurrence, so instantiations never capture
            std::map<std::string, std::string> renaming;
            ++counter;
            for (const auto& v : gadget_bound)
                renaming[v] = v + "_" + std::to_string(counter);
            FormulaPtr body = rename_bound(gadget.body, renaming);
            std::vector<std::pair<std::string, Term>> argmap;
            for (std::size_t i = 0; i < gadget.free_vars.size(); ++i)
                argmap.emplace_back(gadget.free_vars[i], f->args[i]);
            return substitute(body, argmap);
        }
        if (f->children.empty()) return f;
        std::vector<FormulaPtr> children;
        for (const auto& c : f->children) children.push_back(run(c));
        switch (f->kind) {
            case Kind::And:
                return Formula::conj(std::move(children));
            case Kind::Or:
                return Formula::disj(std::move(children));
            case Kind::Not:
                return Formula::neg(children[0]);
            case Kind::Exists:
                return Formula::exists(f->var, children[0]);
            case Kind::Forall:
                return Formula::forall(f->var, children[0]);
            default:
                return f;
        }
    }
};

}  // namespace

FormulaPtr substitute_atom(const FormulaPtr& f, const std::string& target_relation,
                           const GadgetDefinition& gadget) {
    AtomSubst s{target_relation, gadget};
    std::set<std::string> free(gadget.free_vars.begin(), gadget.free_vars.end());
    for (const auto& v : all_variables(gadget.body))
        if (!free.count(v)) s.gadget_bound.push_back(v);
    return s.run(f);
}

// ------------------------------------------------------------ enumeration

namespace {

// all set partitions of {0..k-1}, as lists of blocks
void set_partitions(int k, std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<int> assign(k, 0);
    auto emit = [&] {
        int blocks = *std::max_element(assign.begin(), assign.end()) + 1;
        std::vector<std::vector<int>> part(blocks);
        for (int i = 0; i < k; ++i) part[assign[i]].push_back(i);
        out.push_back(std::move(part));
    };
    // restricted growth strings: assign[i] may exceed max(assign[0..i-1]) by at most 1
    while (true) {
        emit();
        int i = k - 1;
        while (i > 0 &&
               assign[i] > *std::max_element(assign.begin(), assign.begin() + i))
            --i;
        if (i == 0) break;
        ++assign[i];
        std::fill(assign.begin() + i + 1, assign.end(), 0);
    }
}

FormulaPtr sort_children(const FormulaPtr& f) {
    if (f->kind != Kind::And && f->kind != Kind::Or) return f;
    std::vector<FormulaPtr> children;
    for (const auto& c : f->children) children.push_back(sort_children(c));
    std::sort(children.begin(), children.end(),
              [](const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) < 0; });
    return f->kind == Kind::And ? Formula::conj(std::move(children))
                                : Formula::disj(std::move(children));
}

// Canonical representative under bound-variable renamings that respect the
// quantifier pattern: try every block-preserving permutation, keep the
// lexicographically least render.
std::string canonical_render(const std::vector<Quant>& quants,
                             const std::vector<std::string>& vars, const FormulaPtr& matrix,
                             PrenexSentence& best_out) {
    int q = static_cast<int>(quants.size());
    std::vector<int> perm(q);
    for (int i = 0; i < q; ++i) perm[i] = i;
    std::string best;
    bool first = true;
    do {
        bool ok = true;
        for (int i = 0; i < q; ++i)
            if (quants[perm[i]] != quants[i]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        // variable at position i is renamed to vars[perm^{-1}? ] -- map old var
        // vars[i] to the var of the position it moves to
        std::vector<std::pair<std::string, Term>> map;
        for (int i = 0; i < q; ++i)
            if (perm[i] != i) map.emplace_back(vars[perm[i]], Term::variable(vars[i] + "#"));
        FormulaPtr m = substitute(matrix, map);
        if (!map.empty()) {
            std::vector<std::pair<std::string, Term>> unhash;
            for (int i = 0; i < q; ++i) unhash.emplace_back(vars[i] + "#", Term::variable(vars[i]));
            m = substitute(m, unhash);
        }
        m = sort_children(m);
        PrenexSentence cand;
        for (int i = 0; i < q; ++i) cand.prefix.push_back({quants[i], vars[i]});
        cand.matrix = m;
        std::string r = render_prenex(cand);
        if (first || r < best) {
            best = r;
            best_out = cand;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<PrenexSentence> enumerate_sentences(const Signature& sig, int max_quantifiers,
                                                int max_atoms, EnumMode mode, std::uint64_t seed,
                                                int count, bool allow_negation) {
    if (max_quantifiers < 1 || max_atoms < 1)
        throw SemanticError("enumerate_sentences: bounds must be >= 1");
    std::vector<PrenexSentence> out;

    if (mode == EnumMode::SeededRandom) {
        std::mt19937_64 rng(seed);
        std::set<std::string> seen;
        while (static_cast<int>(out.size()) < count) {
            int q = 1 + static_cast<int>(rng() % max_quantifiers);
            std::vector<Quant> quants(q);
            std::vector<std::string> vars(q);
            for (int i = 0; i < q; ++i) {
                quants[i] = rng() % 2 ? Quant::Forall : Quant::Exists;
                vars[i] = "x" + std::to_string(i);
            }
            int natoms = 1 + static_cast<int>(rng() % max_atoms);
            std::vector<FormulaPtr> literals;
            for (int a = 0; a < natoms; ++a) {
                const auto& [rname, arity] = sig.relations[rng() % sig.relations.size()];
                std::vector<Term> args;
                for (int j = 0; j < arity; ++j)
                    args.push_back(Term::variable(vars[rng() % q]));
                FormulaPtr lit = Formula::atom(rname, std::move(args));
                if (allow_negation && rng() % 2) lit = Formula::neg(lit);
                literals.push_back(lit);
            }
            // random or-of-and grouping
            std::vector<std::vector<FormulaPtr>> groups;
            for (const auto& lit : literals) {
                if (groups.empty() || rng() % 2) groups.push_back({lit});
                else groups[rng() % groups.size()].push_back(lit);
            }
            std::vector<FormulaPtr> disjuncts;
            for (auto& g : groups) disjuncts.push_back(Formula::conj(std::move(g)));
            PrenexSentence s;
            for (int i = 0; i < q; ++i) s.prefix.push_back({quants[i], vars[i]});
            s.matrix = Formula::disj(std::move(disjuncts));
            std::string r = render_prenex(s);
            if (seen.insert(r).second) out.push_back(std::move(s));
        }
        return out;
    }

    std::set<std::string> seen;
    for (int q = 1; q <= max_quantifiers; ++q) {
        std::vector<std::string> vars(q);
        for (int i = 0; i < q; ++i) vars[i] = "x" + std::to_string(i);

        // all atoms (or literals) over the q variables
        std::vector<FormulaPtr> literals;
        for (const auto& [rname, arity] : sig.relations) {
            std::vector<int> idx(arity, 0);
            while (true) {
                std::vector<Term> args;
                for (int j = 0; j < arity; ++j) args.push_back(Term::variable(vars[idx[j]]));
                FormulaPtr a = Formula::atom(rname, std::move(args));
                literals.push_back(a);
                if (allow_negation) literals.push_back(Formula::neg(a));
                int j = arity - 1;
                while (j >= 0 && idx[j] == q - 1) idx[j--] = 0;
                if (j < 0) break;
                ++idx[j];
            }
        }
        int nlit = static_cast<int>(literals.size());

        std::vector<std::vector<std::vector<int>>> partitions_by_k[1 + 8];
        for (int k = 1; k <= max_atoms && k <= 8; ++k)
            set_partitions(k, partitions_by_k[k]);

        for (std::uint64_t qs = 0; qs < (1ull << q); ++qs) {
            std::vector<Quant> quants(q);
            for (int i = 0; i < q; ++i)
                quants[i] = (qs >> i) & 1 ? Quant::Forall : Quant::Exists;

            for (int k = 1; k <= max_atoms; ++k) {
                std::vector<int> comb(k);
                for (int i = 0; i < k; ++i) comb[i] = i;
                if (k > nlit) break;
                while (true) {
                    // all q variables must occur in the matrix
                    std::set<std::string> used;
                    for (int i : comb)
                        for (const auto& v : free_variables(literals[i])) used.insert(v);
                    if (static_cast<int>(used.size()) == q) {
                        for (const auto& part : partitions_by_k[k]) {
                            std::vector<FormulaPtr> disjuncts;
                            for (const auto& block : part) {
                                std::vector<FormulaPtr> atoms;
                                for (int b : block) atoms.push_back(literals[comb[b]]);
                                disjuncts.push_back(Formula::conj(std::move(atoms)));
                            }
                            FormulaPtr matrix = sort_children(Formula::disj(std::move(disjuncts)));
                            PrenexSentence best;
                            std::string r = canonical_render(quants, vars, matrix, best);
                            if (seen.insert(r).second) out.push_back(std::move(best));
                        }
                    }
                    // next combination
                    int i = k - 1;
                    while (i >= 0 && comb[i] == nlit - k + i) --i;
                    if (i < 0) break;
                    ++comb[i];
                    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                }
            }
        }
    }
    return out;
}

}  // namespace mc
