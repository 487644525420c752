#pragma once

#include <string>

#include "qts/heart.hpp"
#include "qts/sod.hpp"

namespace qts {

/// A named bundle of reps, complexes, morphisms and collections over one
/// quiver and one prime modulus. Every value is fully validated at load time;
/// diagnostics carry the offending name. The reserved complex name "0" always
/// resolves to the zero object.
struct Workspace {
    u32 modulus = 2;
    QuiverPtr quiver;
    std::map<std::string, Rep> reps;
    std::map<std::string, Complex> complexes;
    std::map<std::string, ChainMap> morphisms;
    std::map<std::string, std::vector<std::string>> collections;

    Complex complex_named(const std::string& name) const;
    const ChainMap& morphism_named(const std::string& name) const;
    ExceptionalCollection collection_named(const std::string& name) const;
};

Workspace load_workspace(const std::string& path);
Workspace parse_workspace(const std::string& json_text);
std::string serialize_workspace(const Workspace& ws);
void save_workspace(const Workspace& ws, const std::string& path);

/// The bundled A2 and A3 workspaces (same content as fixtures/a2.json and
/// fixtures/a3.json).
Workspace builtin_a2_workspace();
Workspace builtin_a3_workspace();

/// DOT rendering of towers: stages left to right, one edge per tower map,
/// labelled with the cofiber window certificate.
std::string tower_to_dot(const Tower& t, const std::string& name);
std::string weaved_tower_to_dot(const WeavedTower& t, const ExceptionalCollection& coll,
                                const std::string& name);

/// One-line homology summary "H_{-1}=dims(1,0) H_0=dims(1,1)" used by the CLI
/// and the DOT labels.
std::string homology_summary(const Complex& x);

}  // namespace qts
