#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mc/classifier.hpp"
#include "mc/evaluator.hpp"
#include "mc/formula.hpp"
#include "mc/reductions.hpp"
#include "mc/structure.hpp"
#include "mc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitSemanticError = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mc::SemanticError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

mc::Structure load_structure(const std::string& path) {
    return mc::parse_structure(slurp(path));
}

std::string formula_source(const std::string& inline_text, const std::string& file) {
    if (!inline_text.empty() && !file.empty())
        throw mc::SemanticError("inline formula and --formula-file are mutually exclusive");
    if (!file.empty()) return slurp(file);
    if (!inline_text.empty()) return inline_text;
    throw mc::SemanticError("no formula given");
}

std::string edges_string(const mc::Digraph& h) {
    std::string s;
    for (auto [u, v] : h.edges) {
        if (!s.empty()) s += " ";
        s += std::to_string(u) + "->" + std::to_string(v);
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"model checking and complexity classification for positive equality-free FO"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized sentence suites");

    auto* eval = app.add_subcommand("eval", "evaluate a sentence on a structure");
    std::string eval_struct, eval_formula, eval_formula_file;
    eval->add_option("structure", eval_struct, "structure file")->required();
    eval->add_option("formula", eval_formula, "formula text");
    eval->add_option("--formula-file", eval_formula_file, "file holding the formula");

    auto* classify = app.add_subcommand("classify", "classify a structure's model-checking problem");
    std::string cls_kind, cls_struct;
    bool cls_json = false;
    classify->add_option("kind", cls_kind, "boolean or digraph")
        ->required()
        ->check(CLI::IsMember({"boolean", "digraph"}));
    classify->add_option("structure", cls_struct, "structure file")->required();
    classify->add_flag("--json", cls_json, "emit the certificate as JSON");

    auto* reduce = app.add_subcommand("reduce", "rewrite a sentence under a reduction rule");
    std::string red_rule, red_formula, red_formula_file;
    reduce->add_option("--rule", red_rule, "rewrite rule id")->required();
    reduce->add_option("formula", red_formula, "formula text");
    reduce->add_option("--formula-file", red_formula_file, "file holding the formula");

    auto* define = app.add_subcommand("define", "interpret a gadget over a host structure");
    std::string def_struct, def_gadget;
    define->add_option("structure", def_struct, "host structure file")->required();
    define->add_option("--gadget", def_gadget, "gadget name")->required();

    auto* canons = app.add_subcommand("canons", "report canons and good pairs of a digraph");
    std::string can_struct;
    canons->add_option("structure", can_struct, "structure file")->required();

    auto* table = app.add_subcommand("table", "classification atlas for all digraphs of a size");
    int tbl_size = 3;
    bool tbl_iso = false;
    std::string tbl_format = "csv";
    table->add_option("--size", tbl_size, "digraph size (1..3)");
    table->add_flag("--up-to-iso", tbl_iso, "one row per isomorphism class");
    table->add_option("--format", tbl_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite = "all";
    verify->add_option("--suite", ver_suite, "suite id");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) {
            mc::Structure s = load_structure(eval_struct);
            mc::FormulaPtr f =
                mc::parse_formula(formula_source(eval_formula, eval_formula_file), s.sig);
            if (!mc::is_sentence(f)) throw mc::SemanticError("formula is not a sentence");
            std::cout << (mc::evaluate(s, f) ? "true" : "false") << "\n";
        } else if (*classify) {
            mc::Structure s = load_structure(cls_struct);
            std::pair<mc::ComplexityClass, mc::Certificate> r;
            if (cls_kind == "digraph") {
                r = mc::classify_digraph(mc::Digraph::from_structure(s));
            } else {
                if (s.size != 2) throw mc::SemanticError("boolean structure must have universe {0,1}");
                r = mc::classify_boolean(s);
            }
            if (cls_json) {
                nlohmann::ordered_json j;
                j["class"] = mc::class_name(r.first);
                j["certificate"] = nlohmann::ordered_json::parse(r.second.to_json());
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << mc::class_name(r.first) << "\n" << r.second.to_text();
            }
        } else if (*reduce) {
            mc::RewriteRule rule = mc::RewriteRule::from_name(red_rule);
            mc::Signature sig = rule.id == mc::RewriteRule::Id::NaeToK2
                                    ? mc::Signature{{"NAE", 3}}
                                    : mc::Signature::digraph();
            mc::FormulaPtr f =
                mc::parse_formula(formula_source(red_formula, red_formula_file), sig);
            std::cout << mc::render_formula(mc::reduce_sentence(rule, f)) << "\n";
        } else if (*define) {
            mc::Structure host = load_structure(def_struct);
            mc::Digraph out = mc::interpret_gadget(host, mc::find_gadget(def_gadget));
            std::cout << mc::render_structure(out.to_structure());
        } else if (*canons) {
            mc::Structure s = load_structure(can_struct);
            mc::CanonReport rep = mc::canon_report(mc::Digraph::from_structure(s));
            std::cout << "forall-canons:";
            for (int v : rep.forall_canons) std::cout << " " << v;
            std::cout << "\nexists-canons:";
            for (int v : rep.exists_canons) std::cout << " " << v;
            std::cout << "\ngood-pairs:";
            for (auto [x, y] : rep.good_pairs)
                std::cout << " (" << x << "," << y << ")";
            std::cout << "\n";
        } else if (*table) {
            auto rows = mc::classification_table(tbl_size, tbl_iso);
            if (tbl_format == "csv") {
                std::cout << "edges,class,rule\n";
                for (const auto& row : rows)
                    std::cout << edges_string(row.h) << "," << mc::class_name(row.cls) << ","
                              << row.cert.rule << "\n";
            } else {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& row : rows) {
                    nlohmann::ordered_json e = nlohmann::ordered_json::array();
                    for (auto [u, v] : row.h.edges) e.push_back({u, v});
                    j.push_back({{"edges", e},
                                 {"class", mc::class_name(row.cls)},
                                 {"rule", row.cert.rule}});
                }
                std::cout << j.dump(2) << "\n";
            }
        } else if (*verify) {
            mc::SuiteReport rep = mc::run_suite(ver_suite, seed);
            std::cout << rep.to_text();
            if (!rep.passed()) return kExitVerifyFailed;
        }
    } catch (const mc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const mc::SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemanticError;
    }
    return kExitOk;
}
