#include "mc/classifier.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mc/reductions.hpp"

namespace mc {

ComplexityClass dual_class(ComplexityClass c) {
    switch (c) {
        case ComplexityClass::NpComplete:
            return ComplexityClass::CoNpComplete;
        case ComplexityClass::CoNpComplete:
            return ComplexityClass::NpComplete;
        default:
            return c;
    }
}

std::string class_name(ComplexityClass c) {
    switch (c) {
        case ComplexityClass::Logspace:
            return "Logspace";
        case ComplexityClass::NpComplete:
            return "NP-complete";
        case ComplexityClass::CoNpComplete:
            return "coNP-complete";
        case ComplexityClass::PspaceComplete:
            return "PSPACE-complete";
    }
    return "?";
}

std::string Certificate::to_text() const {
    std::ostringstream os;
    os << "verdict: " << class_name(verdict) << "\n";
    os << "rule: " << rule << "\n";
    for (const auto& [k, v] : witnesses) os << "witness " << k << ": " << v << "\n";
    if (!chain.empty()) {
        os << "chain:";
        for (const auto& step : chain) os << " " << step;
        os << "\n";
    }
    if (inner) {
        std::istringstream is(inner->to_text());
        os << "complement certificate:\n";
        for (std::string line; std::getline(is, line);) os << "  " << line << "\n";
    }
    return os.str();
}

std::string Certificate::to_json() const {
    using json = nlohmann::ordered_json;
    std::function<json(const Certificate&)> conv = [&](const Certificate& c) {
        json j;
        j["verdict"] = class_name(c.verdict);
        j["rule"] = c.rule;
        j["witnesses"] = json::array();
        for (const auto& [k, v] : c.witnesses) j["witnesses"].push_back({{k, v}});
        j["chain"] = c.chain;
        if (c.inner) j["inner"] = conv(*c.inner);
        return j;
    };
    return conv(*this).dump(2);
}

// ------------------------------------------------------------------- canons

std::vector<int> forall_canons(const Digraph& h) {
    std::vector<int> out;
    for (int x = 0; x < h.n; ++x) {
        bool ok = true;
        for (int y = 0; y < h.n && ok; ++y) {
            if (h.edge(x, y))
                for (int z = 0; z < h.n; ++z) ok = ok && h.edge(z, y);
            if (h.edge(y, x))
                for (int z = 0; z < h.n; ++z) ok = ok && h.edge(y, z);
        }
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<int> exists_canons(const Digraph& h) {
    std::vector<int> out;
    for (int x = 0; x < h.n; ++x) {
        bool ok = true;
        for (int y = 0; y < h.n && ok; ++y)
            for (int z = 0; z < h.n && ok; ++z)
                if (h.edge(y, z)) ok = h.edge(x, z) && h.edge(y, x);
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<std::pair<int, int>> good_pairs(const Digraph& h) {
    std::vector<std::pair<int, int>> out;
    bool any_edge = !h.edges.empty();
    for (int x = 0; x < h.n; ++x)
        for (int y = 0; y < h.n; ++y) {
            if (any_edge && !h.edge(y, y)) continue;  // G1
            bool ok = true;
            for (int v = 0; v < h.n && ok; ++v) {  // G2
                if (h.edge(x, v) && !h.edge(x, y)) ok = false;
                if (h.edge(v, x) && !h.edge(y, x)) ok = false;
            }
            if (ok && h.edge(x, y))  // G3, first half
                for (int v = 0; v < h.n; ++v) ok = ok && h.edge(v, y);
            if (ok && h.edge(y, x))  // G3, second half
                for (int v = 0; v < h.n; ++v) ok = ok && h.edge(y, v);
            if (ok && h.edge(x, x))  // G4
                for (int a = 0; a < h.n; ++a)
                    for (int b = 0; b < h.n; ++b) ok = ok && h.edge(a, b);
            if (ok) out.push_back({x, y});
        }
    return out;
}

CanonReport canon_report(const Digraph& h) {
    return {forall_canons(h), exists_canons(h), good_pairs(h)};
}

// ----------------------------------------------------------------- boolean

std::optional<BooleanDominationWitness> dominates_boolean(const Structure& b, int lo, int hi) {
    for (std::size_t r = 0; r < b.sig.relations.size(); ++r) {
        for (const auto& t : b.tables[r]) {
            std::vector<int> pos;
            for (std::size_t p = 0; p < t.size(); ++p)
                if (t[p] == lo) pos.push_back(static_cast<int>(p));
            int m = static_cast<int>(pos.size());
            // subsets in increasing size, lexicographic within each size
            for (int s = 1; s <= m; ++s) {
                std::vector<int> idx(s);
                std::iota(idx.begin(), idx.end(), 0);
                for (;;) {
                    std::vector<int> flipped = t;
                    std::vector<int> S;
                    for (int i : idx) {
                        flipped[pos[i]] = hi;
                        S.push_back(pos[i]);
                    }
                    if (b.tables[r].count(flipped) == 0)
                        return BooleanDominationWitness{b.sig.relations[r].first, t, S};
                    int i = s - 1;
                    while (i >= 0 && idx[i] == m - s + i) --i;
                    if (i < 0) break;
                    ++idx[i];
                    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
    return std::nullopt;
}

std::pair<ComplexityClass, Certificate> classify_boolean(const Structure& b) {
    if (b.size != 2) throw SemanticError("classify_boolean: universe must be {0,1}");
    Certificate cert;
    // (†) normalization: constant relations carry no information.
    Structure norm(Signature{}, b.size);
    norm.tables.clear();
    for (std::size_t r = 0; r < b.sig.relations.size(); ++r) {
        std::size_t cells = 1;
        for (int i = 0; i < b.sig.relations[r].second; ++i)
            cells *= static_cast<std::size_t>(b.size);
        if (b.tables[r].empty() || b.tables[r].size() == cells) {
            cert.witnesses.push_back({"constant-relation", b.sig.relations[r].first});
            continue;
        }
        norm.sig.relations.push_back(b.sig.relations[r]);
        norm.tables.push_back(b.tables[r]);
    }
    if (norm.sig.relations.empty()) {
        cert.verdict = ComplexityClass::Logspace;
        cert.rule = "constant-relations-only";
        return {cert.verdict, cert};
    }
    if (!dominates_boolean(norm, 0, 1)) {
        cert.verdict = ComplexityClass::Logspace;
        cert.rule = "domination";
        cert.witnesses.push_back({"forall-canon", "0"});
        cert.witnesses.push_back({"exists-canon", "1"});
        return {cert.verdict, cert};
    }
    if (!dominates_boolean(norm, 1, 0)) {
        cert.verdict = ComplexityClass::Logspace;
        cert.rule = "domination";
        cert.witnesses.push_back({"forall-canon", "1"});
        cert.witnesses.push_back({"exists-canon", "0"});
        return {cert.verdict, cert};
    }
    auto [gadget, ctx] = build_boolean_gadget(norm, boolean_gadget_case(norm));
    cert.verdict = ComplexityClass::PspaceComplete;
    cert.rule = "no-domination";
    cert.witnesses.push_back({"gadget", gadget.name});
    std::string t;
    if (!ctx.witness.empty())
        for (std::size_t r = 0; r < ctx.witness.size(); ++r) {
            if (r) t += "|";
            for (int bit : ctx.witness[r]) t += std::to_string(bit);
        }
    cert.witnesses.push_back({"witness-tuple", t});
    cert.chain = {"gadget:" + gadget.name + "->" + gadget.expected_result};
    return {cert.verdict, cert};
}

// ---------------------------------------------------------------- digraphs

ComplexityClass classify_digraph_semantic(const Digraph& h) {
    if (!good_pairs(h).empty()) return ComplexityClass::Logspace;
    if (!forall_canons(h).empty()) return ComplexityClass::NpComplete;
    if (!exists_canons(h).empty()) return ComplexityClass::CoNpComplete;
    return ComplexityClass::PspaceComplete;
}

namespace {

std::string pair_str(std::pair<int, int> p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

Certificate good_pair_cert(const Digraph& h, std::string rule,
                           std::vector<std::pair<std::string, std::string>> extra = {}) {
    auto gp = good_pairs(h);
    if (gp.empty()) throw SemanticError("internal: expected a good pair (" + rule + ")");
    Certificate c;
    c.verdict = ComplexityClass::Logspace;
    c.rule = std::move(rule);
    c.witnesses = std::move(extra);
    c.witnesses.push_back({"good-pair", pair_str(gp.front())});
    return c;
}

std::pair<ComplexityClass, Certificate> dual_of(const Digraph& h, const std::string& why) {
    auto [cls, inner] = classify_digraph(complement(h));
    Certificate c;
    c.verdict = dual_class(cls);
    c.rule = "dual-of-complement";
    c.witnesses.push_back({"case", why});
    c.inner = std::make_shared<Certificate>(std::move(inner));
    return {c.verdict, c};
}

std::string match_one(const Digraph& h, const std::vector<std::string>& names) {
    for (const auto& name : names)
        if (find_isomorphism(h, catalog(name).digraph())) return name;
    return "";
}

}  // namespace

std::pair<ComplexityClass, Certificate> classify_digraph(const Digraph& h) {
    Certificate c;
    if (h.n <= 1) {
        c.verdict = ComplexityClass::Logspace;
        c.rule = "single-vertex";
        return {c.verdict, c};
    }
    if (h.n == 2) return classify_boolean(h.to_structure());
    if (h.n != 3) throw SemanticError("digraph classification is implemented for size <= 3");

    if (h.edges.empty()) {
        c.verdict = ComplexityClass::Logspace;
        c.rule = "edgeless";
        return {c.verdict, c};
    }

    auto comps = components(h);
    if (comps.size() > 1) {
        int iso = -1, loopv = -1;
        for (int v = 0; v < h.n; ++v) {
            if (iso < 0 && is_isolated(h, v)) iso = v;
            if (loopv < 0 && h.has_loop(v)) loopv = v;
        }
        if (iso >= 0) {
            if (loopv >= 0) {
                c.verdict = ComplexityClass::Logspace;
                c.rule = "isolated-vertex-and-loop";
                c.witnesses.push_back({"good-pair", pair_str({iso, loopv})});
                return {c.verdict, c};
            }
            c.verdict = ComplexityClass::NpComplete;
            c.rule = "isolated-vertex-antireflexive";
            c.witnesses.push_back({"forall-canon", std::to_string(iso)});
            c.chain = {"symclos->K1+K2"};
            return {c.verdict, c};
        }
        Digraph k = closure(closure(h, ClosureKind::Sym), ClosureKind::Tran);
        std::string kernel = match_one(k, {"K3bar", "K1_1+K11_2"});
        if (kernel.empty()) throw SemanticError("internal: unexpected two-component closure");
        c.verdict = ComplexityClass::PspaceComplete;
        c.rule = "two-nonempty-components";
        c.chain = {"symclos", "tranclos->" + kernel};
        return {c.verdict, c};
    }

    int loops = h.loop_count();
    if (loops == 0) {
        std::string kernel = match_one(closure(h, ClosureKind::Sym), {"P000_3", "K3"});
        if (kernel.empty()) throw SemanticError("internal: unexpected loopless closure");
        c.verdict = ComplexityClass::PspaceComplete;
        c.rule = "connected-antireflexive";
        c.chain = {"symclos->" + kernel};
        return {c.verdict, c};
    }
    if (loops == 3) return dual_of(h, "reflexive");

    // connected with 1 or 2 loops: the loopless underlying graph is a path or
    // a triangle
    bool slot[3][3] = {};
    for (auto [u, v] : h.edges)
        if (u != v) slot[u][v] = slot[v][u] = true;
    bool triangle = slot[0][1] && slot[0][2] && slot[1][2];

    if (!triangle) {
        int mid = slot[0][1] && slot[0][2] ? 0 : slot[0][1] && slot[1][2] ? 1 : 2;
        if (loops == 1) {
            if (!h.has_loop(mid)) {
                c.verdict = ComplexityClass::PspaceComplete;
                c.rule = "end-loop-path";
                c.chain = {"symclos->P100_3", "dual", "tranclos->K1_1+K11_2"};
                return {c.verdict, c};
            }
            if (find_isomorphism(h, catalog("DP010_3").digraph())) {
                c.verdict = ComplexityClass::CoNpComplete;
                c.rule = "directed-middle-loop-path";
                c.witnesses.push_back({"exists-canon", std::to_string(mid)});
                c.witnesses.push_back({"isomorphic-to", "DP010_3"});
                c.chain = {"dual", "gadget:DP010bar-defines-K1K2-corrected->K1+K2"};
                return {c.verdict, c};
            }
            std::string name = match_one(h, {"P010_3", "H1", "H1p", "H2", "H2p"});
            if (name.empty()) throw SemanticError("internal: unmatched middle-loop path");
            return {ComplexityClass::Logspace,
                    good_pair_cert(h, "middle-loop-path", {{"isomorphic-to", name}})};
        }
        // two loops on a path
        if (!h.has_loop(mid)) {
            c.verdict = ComplexityClass::PspaceComplete;
            c.rule = "both-end-loops-path";
            c.chain = {"symclos->P101_3", "dual", "tranclos->K1_1+K11_2"};
            return {c.verdict, c};
        }
        std::string name = match_one(h, {"P110_3", "H3", "H3p", "H4", "H4p"});
        if (!name.empty())
            return {ComplexityClass::Logspace,
                    good_pair_cert(h, "middle-and-end-loop-path", {{"isomorphic-to", name}})};
        name = match_one(h, {"H5", "H5p", "DP110_3", "DP011_3"});
        if (name.empty()) throw SemanticError("internal: unmatched two-loop path");
        c.verdict = ComplexityClass::PspaceComplete;
        c.rule = "middle-and-end-loop-path-kernel";
        c.witnesses.push_back({"isomorphic-to", name});
        if (name == "DP011_3")
            c.chain.push_back("gadget:DP011-defines-H5prime-corrected->DP110_3");
        if (name == "DP011_3" || name == "DP110_3")
            c.chain.push_back("gadget:DP110-defines-H5->H5");
        c.chain.push_back("tranclos");
        c.chain.push_back("doub->K1_1+K11_2");
        return {c.verdict, c};
    }

    // triangle underlying
    bool dbl = false;
    for (int u = 0; u < 3 && !dbl; ++u)
        for (int v = u + 1; v < 3 && !dbl; ++v) dbl = h.edge(u, v) && h.edge(v, u);
    if (dbl) return dual_of(h, "triangle-with-double-edge");
    if (loops >= 2) return dual_of(h, "tournament-two-loops");

    if (find_isomorphism(h, catalog("H6").digraph())) {
        c.verdict = ComplexityClass::PspaceComplete;
        c.rule = "cyclic-tournament-loop";
        c.witnesses.push_back({"isomorphic-to", "H6"});
        c.chain = {"dual", "gadget:H6bar-defines-DP100bar->~DP100_3", "dual->DP100_3",
                   "symclos->P100_3"};
        return {c.verdict, c};
    }
    std::string name = match_one(h, {"H7", "H7p"});
    if (!name.empty())
        return {ComplexityClass::Logspace,
                good_pair_cert(h, "transitive-tournament-source-or-sink-loop",
                               {{"isomorphic-to", name}})};
    if (find_isomorphism(h, catalog("H8").digraph())) {
        auto ec = exists_canons(h);
        c.verdict = ComplexityClass::CoNpComplete;
        c.rule = "transitive-tournament-middle-loop";
        if (!ec.empty()) c.witnesses.push_back({"exists-canon", std::to_string(ec.front())});
        c.witnesses.push_back({"isomorphic-to", "H8"});
        c.chain = {"dual", "gadget:H8bar-defines-K1K2->K1+K2"};
        return {c.verdict, c};
    }
    throw SemanticError("internal: unmatched tournament with one loop");
}

// -------------------------------------------------------------------- table

std::vector<TableRow> classification_table(int size, bool up_to_iso) {
    if (size < 1 || size > 3) throw SemanticError("classification table supports sizes 1..3");
    const int nn = size * size;
    const std::uint32_t total = 1u << nn;
    auto from_mask = [&](std::uint32_t mask) {
        Digraph d;
        d.n = size;
        for (int b = 0; b < nn; ++b)
            if (mask & (1u << b)) d.edges.insert({b / size, b % size});
        return d;
    };
    auto to_mask = [&](const Digraph& d) {
        std::uint32_t m = 0;
        for (auto [u, v] : d.edges) m |= 1u << (u * size + v);
        return m;
    };

    std::vector<TableRow> rows;
    rows.reserve(total);
    std::vector<ComplexityClass> cls(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        Digraph d = from_mask(mask);
        auto [cl, cert] = classify_digraph(d);
        cls[mask] = cl;
        rows.push_back({std::move(d), cl, std::move(cert)});
    }

    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p(static_cast<std::size_t>(size));
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    auto permuted_mask = [&](const Digraph& d, const std::vector<int>& p) {
        Digraph r;
        r.n = size;
        for (auto [u, v] : d.edges) r.edges.insert({p[u], p[v]});
        return to_mask(r);
    };

    for (std::uint32_t mask = 0; mask < total; ++mask) {
        const Digraph& d = rows[mask].h;
        std::string where = " (digraph mask " + std::to_string(mask) + ")";
        if (cls[(total - 1) ^ mask] != dual_class(cls[mask]))
            throw SemanticError("table check failed: complement duality" + where);
        if (classify_digraph_semantic(d) != cls[mask])
            throw SemanticError("table check failed: semantic disagreement" + where);
        for (const auto& p : perms)
            if (cls[permuted_mask(d, p)] != cls[mask])
                throw SemanticError("table check failed: isomorphism invariance" + where);
        switch (cls[mask]) {
            case ComplexityClass::NpComplete:
                if (forall_canons(d).empty())
                    throw SemanticError("table check failed: NP without forall-canon" + where);
                break;
            case ComplexityClass::CoNpComplete:
                if (exists_canons(d).empty())
                    throw SemanticError("table check failed: coNP without exists-canon" + where);
                break;
            case ComplexityClass::PspaceComplete:
                if (!forall_canons(d).empty() || !exists_canons(d).empty())
                    throw SemanticError("table check failed: PSPACE with a canon" + where);
                break;
            default:
                break;
        }
    }

    if (!up_to_iso) return rows;
    std::vector<TableRow> reps;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        bool minimal = true;
        for (const auto& p : perms)
            if (permuted_mask(rows[mask].h, p) < mask) minimal = false;
        if (minimal) reps.push_back(rows[mask]);
    }
    return reps;
}

}  // namespace mc
