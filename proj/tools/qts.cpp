// Command-line front end: towers, hearts, semiorthogonal decompositions and
// the property suites over a JSON workspace.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qts/verify.hpp"

using namespace qts;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInput = 3;

Workspace open_workspace(const std::string& flag_path) {
    if (!flag_path.empty())
        return load_workspace(flag_path);
    if (const char* env = std::getenv("QTS_WORKSPACE"); env && *env)
        return load_workspace(env);
    std::cerr << "note: no workspace given, using the built-in A2 workspace\n";
    return builtin_a2_workspace();
}

std::vector<int> parse_chain(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty())
        throw ValidationError("empty chain");
    return out;
}

void write_dot(const std::string& path, const std::string& dot) {
    if (path.empty())
        return;
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write DOT file '" + path + "'");
    out << dot;
    std::cout << "DOT written to " << path << "\n";
}

void print_tower(const Tower& t) {
    std::cout << "source: " << homology_summary(t.base.source) << "\n";
    for (std::size_t j = 0; j < t.maps.size(); ++j) {
        std::cout << "  map " << j << ": cofiber window " << t.certs[j].window.str() << " "
                  << (t.certs[j].ok ? "ok" : "FAILED");
        if (j < t.map_is_equivalence.size() && t.map_is_equivalence[j])
            std::cout << " (equivalence)";
        std::cout << "\n";
        if (j < t.stages.size())
            std::cout << "  stage Z[" << t.levels.at(t.stages.size() - 1 - j)
                      << "]: " << homology_summary(t.stages[j]) << "\n";
    }
    std::cout << "target: " << homology_summary(t.base.target) << "\n";
    std::cout << "composite " << (t.composite_ok ? "agrees with f" : "DIFFERS from f") << "\n";
}

int run_tower(const Workspace& ws, const std::string& morphism, const std::string& chain_text,
              bool dual, const std::string& dot_path) {
    const ChainMap& f = ws.morphism_named(morphism);
    TChain chain = TChain::of(parse_chain(chain_text));
    Tower t = dual ? postnikov_tower_dual(f, chain) : postnikov_tower(f, chain);
    std::cout << "postnikov tower of '" << morphism << "' along chain " << chain.str()
              << (dual ? " (pushout route)" : "") << "\n";
    print_tower(t);
    write_dot(dot_path, tower_to_dot(t, morphism));
    return t.all_certified() ? kExitOk : kExitFailure;
}

int run_ztower(const Workspace& ws, const std::string& morphism, const std::string& dot_path) {
    const ChainMap& f = ws.morphism_named(morphism);
    Tower t = z_postnikov_tower(f);
    std::cout << "z-postnikov tower of '" << morphism << "': n0=" << *t.n0 << " k0=" << *t.k0
              << "\n";
    print_tower(t);
    write_dot(dot_path, tower_to_dot(t, morphism));
    return t.all_certified() ? kExitOk : kExitFailure;
}

int run_heart(const Workspace& ws, const std::string& morphism) {
    const ChainMap& f = ws.morphism_named(morphism);
    HeartAnalysis a = heart_analysis(f);
    std::cout << "heart analysis of '" << morphism << "'\n";
    std::cout << "  ker:   " << homology_summary(a.ker) << "\n";
    std::cout << "  coker: " << homology_summary(a.coker) << "\n";
    std::cout << "  im:    " << homology_summary(a.im) << "\n";
    std::cout << "  coim:  " << homology_summary(a.coim) << "\n";
    std::cout << "  Z_f:   " << homology_summary(a.zf) << "\n";
    std::cout << "  all in heart: " << (a.all_heart ? "yes" : "NO") << "\n";
    auto witness = [](const EquivalenceResult& e) {
        switch (e.status) {
            case EquivStatus::found: return "found";
            case EquivStatus::none: return "NONE";
            default: return "undecided";
        }
    };
    std::cout << "  im = coim witness: " << witness(a.witness_im_coim) << "\n";
    std::cout << "  im = Z_f  witness: " << witness(a.witness_im_zf) << "\n";
    if (a.witness_im_coim.status == EquivStatus::undecided)
        return kExitUndecided;
    return (a.all_heart && a.witness_im_coim.found()) ? kExitOk : kExitFailure;
}

int run_sod(const Workspace& ws, const std::string& collection, const std::string& object,
            bool dual, const std::string& dot_path) {
    ExceptionalCollection coll = ws.collection_named(collection);
    std::cout << "collection '" << collection << "': " << coll.report << "\n";
    if (!coll.verified)
        return kExitFailure;
    Complex y = ws.complex_named(object);
    WeavedTower t = dual ? weaved_tower_dual(y, coll) : weaved_tower(y, coll);
    std::cout << "weaved tower of '" << object << "'" << (dual ? " (coevaluation route)" : "")
              << "\n";
    std::cout << "  0\n";
    for (std::size_t j = 0; j < t.maps.size(); ++j) {
        std::cout << "  | cofiber in thick(E_" << t.block_of_map[j] + 1 << ") "
                  << (t.cert_ok[j] ? "ok" : "FAILED") << "\n";
        if (j < t.stages.size())
            std::cout << "  stage " << j + 1 << ": " << homology_summary(t.stages[j]) << "\n";
    }
    std::cout << "  " << object << ": " << homology_summary(y) << "\n";
    write_dot(dot_path, weaved_tower_to_dot(t, coll, collection));
    return t.all_certified() ? kExitOk : kExitFailure;
}

int run_hom(const Workspace& ws, const std::string& xname, const std::string& yname, int shift_by) {
    Complex x = ws.complex_named(xname);
    Complex y = ws.complex_named(yname);
    auto hb = hom_homotopy_basis(x, y, shift_by);
    std::cout << "dim Hom_D(" << xname << ", " << yname << "[" << shift_by << "]) = " << hb.dim
              << "\n";
    return kExitOk;
}

int run_verify(const Workspace& ws, const std::string& suite, u64 seed, std::size_t cases) {
    verify::Options opt;
    opt.seed = seed;
    opt.cases = cases;
    auto reports = verify::run_suites(suite, ws, opt);
    bool all_pass = true, any_undecided = false;
    for (const auto& rep : reports) {
        std::cout << "suite " << rep.suite << "\n";
        for (const auto& check : rep.checks) {
            const char* status = check.pass ? "PASS" : (check.undecided ? "UNDECIDED" : "FAIL");
            std::cout << "  [" << status << "] " << check.name << " (" << check.cases
                      << " cases)\n";
            if (!check.note.empty())
                std::cout << "         " << check.note << "\n";
            all_pass = all_pass && check.pass;
            any_undecided = any_undecided || check.undecided;
        }
    }
    std::cout << (all_pass ? "all checks passed" : (any_undecided ? "undecided" : "FAILURES"))
              << "\n";
    if (all_pass)
        return kExitOk;
    return any_undecided ? kExitUndecided : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact t-structure calculus on complexes of quiver representations"};
    app.require_subcommand(1);

    std::string workspace_path;
    app.add_option("-w,--workspace", workspace_path,
                   "workspace JSON file (default: $QTS_WORKSPACE, then built-in A2)");

    std::string morphism, chain_text, dot_path, collection, object_name, xname, yname;
    std::string suite = "all";
    int shift_by = 0;
    bool dual = false;
    u64 seed = 0xA11CE5;
    std::size_t cases = 100;

    auto* tower = app.add_subcommand("tower", "postnikov tower of a morphism along a chain");
    tower->add_option("morphism", morphism)->required();
    tower->add_option("--chain", chain_text, "comma-separated levels, e.g. 0,1")->required();
    tower->add_flag("--dual", dual, "use the pushout-side construction");
    tower->add_option("--dot", dot_path, "write a DOT rendering to this file");

    auto* ztower = app.add_subcommand("ztower", "stabilized Z-postnikov tower of a morphism");
    ztower->add_option("morphism", morphism)->required();
    ztower->add_option("--dot", dot_path);

    auto* heart = app.add_subcommand("heart", "kernel/cokernel/image/coimage analysis");
    heart->add_option("morphism", morphism)->required();

    auto* sod = app.add_subcommand("sod", "weaved tower for an exceptional collection");
    sod->add_option("collection", collection)->required();
    sod->add_option("object", object_name)->required();
    sod->add_flag("--dual", dual, "use the coevaluation route");
    sod->add_option("--dot", dot_path);

    auto* hom = app.add_subcommand("hom", "derived hom dimension");
    hom->add_option("X", xname)->required();
    hom->add_option("Y", yname)->required();
    hom->add_option("--shift", shift_by, "compute Hom_D(X, Y[shift])");

    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    verify_cmd->add_option("--suite", suite, "all|zposet|tstruct|heart|sod")
        ->check(CLI::IsMember({"all", "zposet", "tstruct", "heart", "sod"}));
    verify_cmd->add_option("--seed", seed, "random seed (default fixed)");
    verify_cmd->add_option("--cases", cases, "cases per check family (default 100)");

    CLI11_PARSE(app, argc, argv);

    try {
        Workspace ws = open_workspace(workspace_path);
        if (tower->parsed())
            return run_tower(ws, morphism, chain_text, dual, dot_path);
        if (ztower->parsed())
            return run_ztower(ws, morphism, dot_path);
        if (heart->parsed())
            return run_heart(ws, morphism);
        if (sod->parsed())
            return run_sod(ws, collection, object_name, dual, dot_path);
        if (hom->parsed())
            return run_hom(ws, xname, yname, shift_by);
        if (verify_cmd->parsed())
            return run_verify(ws, suite, seed, cases);
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CertificateError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitInput;
}
