#include "mc/evaluator.hpp"

#include <algorithm>
#include <unordered_map>

namespace mc {

namespace {

struct Evaluator {
    const Structure& s;
    int n;

    std::vector<const Formula*> nodes;
    std::unordered_map<const Formula*, int> node_id;
    std::vector<std::vector<int>> node_free;  // sorted interned free vars per node

    std::vector<std::string> var_names;
    std::unordered_map<std::string, int> var_id;
    std::vector<int> cur;  // current assignment, -1 = unset

    // flat membership tables, mixed-radix indexing
    std::vector<std::vector<char>> member;

    // memo: per-node offset into a global key space; stride skipped when the
    // key space would overflow
    std::vector<std::uint64_t> offset;
    std::vector<bool> memoizable;
    std::unordered_map<std::uint64_t, bool> memo;

    explicit Evaluator(const Structure& st) : s(st), n(st.size) {
        member.resize(s.sig.relations.size());
        for (std::size_t r = 0; r < s.sig.relations.size(); ++r) {
            int arity = s.sig.relations[r].second;
            std::uint64_t cells = 1;
            for (int i = 0; i < arity; ++i) cells *= std::max(n, 1);
            member[r].assign(cells, 0);
            for (const auto& t : s.tables[r]) {
                std::uint64_t idx = 0;
                for (int e : t) idx = idx * std::max(n, 1) + e;
                member[r][idx] = 1;
            }
        }
    }

    int intern(const std::string& v) {
        auto it = var_id.find(v);
        if (it != var_id.end()) return it->second;
        int id = static_cast<int>(var_names.size());
        var_id.emplace(v, id);
        var_names.push_back(v);
        cur.push_back(-1);
        return id;
    }

    // assigns ids bottom-up and computes free-variable sets
    int index(const FormulaPtr& f) {
        auto it = node_id.find(f.get());
        if (it != node_id.end()) return it->second;
        std::vector<int> free;
        switch (f->kind) {
            case Kind::Atom:
                for (const auto& t : f->args)
                    if (!t.is_element) free.push_back(intern(t.var));
                break;
            case Kind::Exists:
            case Kind::Forall: {
                int v = intern(f->var);
                int c = index(f->children[0]);
                free = node_free[c];
                std::erase(free, v);
                break;
            }
            default:
                for (const auto& c : f->children) {
                    int ci = index(c);
                    for (int v : node_free[ci]) free.push_back(v);
                }
                break;
        }
        std::sort(free.begin(), free.end());
        free.erase(std::unique(free.begin(), free.end()), free.end());
        int id = static_cast<int>(nodes.size());
        nodes.push_back(f.get());
        node_id.emplace(f.get(), id);
        node_free.push_back(std::move(free));
        return id;
    }

    void finalize_memo() {
        offset.assign(nodes.size(), 0);
        memoizable.assign(nodes.size(), false);
        std::uint64_t next = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            Kind k = nodes[i]->kind;
            if (k == Kind::Atom || k == Kind::True || k == Kind::False) continue;
            std::uint64_t cells = 1;
            bool ok = true;
            for (std::size_t j = 0; j < node_free[i].size(); ++j) {
                cells *= std::max(n, 1);
                if (cells > (1ull << 40)) {
                    ok = false;
                    break;
                }
            }
            if (!ok || next > (1ull << 62)) continue;
            memoizable[i] = true;
            offset[i] = next;
            next += cells;
        }
    }

    bool eval_atom(const Formula* f) {
        int r = s.sig.index_of(f->rel);
        std::uint64_t idx = 0;
        for (const auto& t : f->args) {
            int e;
            if (t.is_element) {
                e = t.element;
                if (e < 0 || e >= n)
                    throw SemanticError("constant " + std::to_string(e) + " outside universe");
            } else {
                e = cur[var_id.at(t.var)];
                if (e < 0) throw SemanticError("free variable remains: " + t.var);
            }
            idx = idx * std::max(n, 1) + e;
        }
        return member[r][idx] != 0;
    }

    bool eval(int id) {
        const Formula* f = nodes[id];
        switch (f->kind) {
            case Kind::True:
                return true;
            case Kind::False:
                return false;
            case Kind::Atom:
                return eval_atom(f);
            default:
                break;
        }
        std::uint64_t key = 0;
        bool use_memo = memoizable[id];
        if (use_memo) {
            for (int v : node_free[id]) {
                int e = cur[v];
                if (e < 0) throw SemanticError("free variable remains: " + var_names[v]);
                key = key * n + e;
            }
            key += offset[id];
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        bool result = false;
        switch (f->kind) {
            case Kind::Not:
                result = !eval(node_id.at(f->children[0].get()));
                break;
            case Kind::And: {
                result = true;
                for (const auto& c : f->children)
                    if (!eval(node_id.at(c.get()))) {
                        result = false;
                        break;
                    }
                break;
            }
            case Kind::Or: {
                result = false;
                for (const auto& c : f->children)
                    if (eval(node_id.at(c.get()))) {
                        result = true;
                        break;
                    }
                break;
            }
            case Kind::Exists:
            case Kind::Forall: {
                int v = var_id.at(f->var);
                int saved = cur[v];
                int child = node_id.at(f->children[0].get());
                result = f->kind == Kind::Forall;
                for (int e = 0; e < n; ++e) {
                    cur[v] = e;
                    bool b = eval(child);
                    if (f->kind == Kind::Exists ? b : !b) {
                        result = b;
                        break;
                    }
                }
                cur[v] = saved;
                break;
            }
            default:
                break;
        }
        if (use_memo) memo.emplace(key, result);
        return result;
    }
};

}  // namespace

bool evaluate(const Structure& s, const FormulaPtr& f, const Assignment& a) {
    check_signature(f, s.sig);
    Evaluator ev(s);
    int root = ev.index(f);
    ev.finalize_memo();
    for (const auto& [v, e] : a) {
        if (e < 0 || e >= s.size)
            throw SemanticError("assignment value outside universe for " + v);
        ev.cur[ev.intern(v)] = e;
    }
    return ev.eval(root);
}

bool evaluate(const Structure& s, const FormulaPtr& f) { return evaluate(s, f, {}); }

namespace {

bool eval_ground_rec(const Structure& s, const FormulaPtr& f, const Assignment& a) {
    switch (f->kind) {
        case Kind::True:
            return true;
        case Kind::False:
            return false;
        case Kind::Atom: {
            int r = s.sig.index_of(f->rel);
            if (r < 0) throw SemanticError("unknown relation: " + f->rel);
            std::vector<int> tuple;
            for (const auto& t : f->args) {
                if (t.is_element) {
                    tuple.push_back(t.element);
                } else {
                    auto it = a.find(t.var);
                    if (it == a.end())
                        throw SemanticError("uncovered free variable: " + t.var);
                    tuple.push_back(it->second);
                }
            }
            return s.tables[r].count(tuple) > 0;
        }
        case Kind::Not:
            return !eval_ground_rec(s, f->children[0], a);
        case Kind::And:
            for (const auto& c : f->children)
                if (!eval_ground_rec(s, c, a)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : f->children)
                if (eval_ground_rec(s, c, a)) return true;
            return false;
        case Kind::Exists:
        case Kind::Forall:
            throw SemanticError("evaluate_ground: formula contains a quantifier");
    }
    throw SemanticError("evaluate_ground: unreachable");
}

}  // namespace

bool evaluate_ground(const Structure& s, const FormulaPtr& f, const Assignment& a) {
    return eval_ground_rec(s, f, a);
}

std::optional<FormulaPtr> agree_on_suite(
    const Structure& s1, const Structure& s2, const std::vector<PrenexSentence>& suite,
    const std::function<FormulaPtr(const FormulaPtr&)>& translate, bool verdict_flip) {
    for (const auto& ps : suite) {
        FormulaPtr phi = ps.to_formula();
        FormulaPtr psi = translate ? translate(phi) : phi;
        bool v1 = evaluate(s1, phi);
        bool v2 = evaluate(s2, psi);
        if (verdict_flip) v2 = !v2;
        if (v1 != v2) return phi;
    }
    return std::nullopt;
}

}  // namespace mc
