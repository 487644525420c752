#pragma once

#include "qts/rng.hpp"
#include "qts/workspace.hpp"
#include "qts/zposet.hpp"

namespace qts::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool undecided = false;
    std::size_t cases = 0;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
    bool any_undecided() const;
};

struct Options {
    u64 seed = 0xA11CE5;
    std::size_t cases = 100;
};

const std::vector<std::string>& suite_names();  // zposet, tstruct, heart, sod

SuiteReport run_suite(const std::string& name, const Workspace& ws, const Options& opt);

/// which = "all" runs every suite in order.
std::vector<SuiteReport> run_suites(const std::string& which, const Workspace& ws, const Options& opt);

// Deterministic fixture generators; the acceptance suite reuses them, so they
// stay within the desk-scale envelope (total dimension <= 4, degrees in [-3,3]).
Rep random_rep(Rng& rng, const QuiverPtr& q, u32 p, std::size_t max_total);
Complex random_complex(Rng& rng, const QuiverPtr& q, u32 p, int max_shift = 3,
                       std::size_t max_total = 4);
ChainMap random_chain_map(Rng& rng, const Complex& x, const Complex& y);
Complex random_heart_object(Rng& rng, const QuiverPtr& q, u32 p);

/// Projectives in reverse topological order; exceptional on every acyclic quiver.
ExceptionalCollection projective_collection(const QuiverPtr& q, u32 p);

}  // namespace qts::verify
