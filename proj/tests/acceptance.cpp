// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Desk scale throughout: A2 and A3 over F_2, total dimension <= 4, degrees in
// [-3, 3], seeded random cases.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qts/verify.hpp"

using namespace qts;
using verify::random_chain_map;
using verify::random_complex;
using verify::random_heart_object;

namespace {

struct Criterion {
    std::string name;
    double limit_seconds = 0;  // 0 = no explicit budget
    std::function<void(std::size_t&, std::string&)> run;  // throws or appends a note on failure
};

struct Outcome {
    bool pass = true;
    std::string note;
    std::size_t checks = 0;
    double seconds = 0;
};

Outcome run_criterion(const Criterion& c) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        c.run(out.checks, out.note);
        out.pass = out.note.empty();
    } catch (const std::exception& e) {
        out.pass = false;
        out.note = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && out.seconds > c.limit_seconds) {
        out.pass = false;
        out.note += (out.note.empty() ? "" : "; ") + std::string("time budget exceeded");
    }
    return out;
}

void fail(std::string& note, const std::string& msg) {
    if (note.empty())
        note = msg;
}

}  // namespace

int main(int argc, char** argv) {
    std::string fixtures_dir = argc > 1 ? argv[1] : "fixtures";
    Workspace a2, a3;
    try {
        a2 = load_workspace(fixtures_dir + "/a2.json");
        a3 = load_workspace(fixtures_dir + "/a3.json");
    } catch (const Error&) {
        a2 = builtin_a2_workspace();
        a3 = builtin_a3_workspace();
    }
    std::vector<const Workspace*> worlds{&a2, &a3};

    std::vector<Criterion> criteria;

    criteria.push_back({"truncation triangles are certified and split homology exactly", 10.0,
                        [&](std::size_t& checks, std::string& note) {
        Rng rng(0xacc1);
        for (const Workspace* ws : worlds)
            for (int it = 0; it < 50; ++it) {
                Complex x = random_complex(rng, ws->quiver, ws->modulus);
                for (int n = -2; n <= 2; ++n) {
                    ++checks;
                    Truncation t = truncate(x, n);
                    if (!t.triangle_ok)
                        fail(note, "triangle certificate failed on " + x.str());
                    if (!window_membership(t.tau_geq, Window::at_least(n)) ||
                        !window_membership(t.tau_lt, Window::below(n)))
                        fail(note, "window membership failed on " + x.str());
                    for (int k = n - 2; k <= n + 2; ++k)
                        if (homology_at(k >= n ? t.tau_geq : t.tau_lt, k).dims !=
                            homology_at(x, k).dims)
                            fail(note, "homology split failed on " + x.str());
                }
            }
    }});

    criteria.push_back({"k-fold factorization towers are unique (50 pairs, no undecided)", 30.0,
                        [&](std::size_t& checks, std::string& note) {
        Rng rng(0xacc2);
        for (const Workspace* ws : worlds)
            for (int it = 0; it < 25; ++it) {
                Complex y = random_complex(rng, ws->quiver, ws->modulus);
                std::vector<int> levels;
                int base = static_cast<int>(rng.below(4)) - 2;
                for (std::size_t j = 0; j <= rng.below(3); ++j)
                    levels.push_back(base + static_cast<int>(j));
                TChain chain = TChain::of(levels);
                Tower kt = kfold_factorization(y, chain);
                Tower pt = postnikov_tower(
                    ChainMap::zero_map(Complex::zero_complex(ws->quiver, ws->modulus), y), chain);
                ++checks;
                if (!kt.all_certified() || !pt.all_certified())
                    fail(note, "certificates failed on " + y.str());
                for (std::size_t j = 0; j < kt.stages.size(); ++j) {
                    auto eq = find_equivalence(kt.stages[j], pt.stages[j]);
                    if (eq.status == EquivStatus::undecided)
                        fail(note, "undecided comparison on " + y.str());
                    else if (eq.status == EquivStatus::none)
                        fail(note, "towers disagree on " + y.str());
                }
            }
    }});

    criteria.push_back({"postnikov towers: certificates, composite, cross-construction uniqueness",
                        0.0, [&](std::size_t& checks, std::string& note) {
        Rng rng(0xacc3);
        for (const Workspace* ws : worlds)
            for (int it = 0; it < 12; ++it) {
                Complex x = random_complex(rng, ws->quiver, ws->modulus);
                Complex y = random_complex(rng, ws->quiver, ws->modulus);
                ChainMap f = random_chain_map(rng, x, y);
                std::vector<int> levels;
                int base = static_cast<int>(rng.below(4)) - 2;
                for (std::size_t j = 0; j <= rng.below(2); ++j)
                    levels.push_back(base + static_cast<int>(j));
                TChain chain = TChain::of(levels);
                Tower a = postnikov_tower(f, chain);
                Tower b = postnikov_tower_dual(f, chain);
                ++checks;
                if (!a.all_certified() || !b.all_certified())
                    fail(note, "window certificates failed");
                if (!a.composite_ok || !b.composite_ok)
                    fail(note, "composite does not reproduce f");
                for (std::size_t j = 0; j < a.stages.size(); ++j)
                    if (find_equivalence(a.stages[j], b.stages[j]).status != EquivStatus::found)
                        fail(note, "cross-construction comparison failed");
            }
    }});

    criteria.push_back({"dangerous bend: em factorization differs from the one-step tower", 0.0,
                        [&](std::size_t& checks, std::string& note) {
        checks = 1;
        Complex s1m1 = a2.complex_named("S1_m1");
        Complex s2m1 = a2.complex_named("S2_m1");
        const ChainMap& db = a2.morphism_named("db");
        auto em = em_factorization(db, 0);
        if (!em.e_is_equivalence)
            fail(note, "f does not lie in M_0");
        if (em.m_is_equivalence)
            fail(note, "f unexpectedly lies in E_0");
        Tower t = postnikov_tower(db, TChain::of({0}));
        if (!t.all_certified())
            fail(note, "tower certificates failed");
        if (find_equivalence(t.stages[0], s1m1).status != EquivStatus::none)
            fail(note, "tower middle stage is equivalent to the source");
        (void)s2m1;
    }});

    criteria.push_back({"sator lemma holds for all sampled objects and levels", 0.0,
                        [&](std::size_t& checks, std::string& note) {
        Rng rng(0xacc5);
        for (const Workspace* ws : worlds)
            for (int it = 0; it < 50; ++it) {
                Complex x = random_complex(rng, ws->quiver, ws->modulus);
                for (int n = -2; n <= 2; ++n) {
                    ++checks;
                    if (!sator_check(x, n))
                        fail(note, "sator fails on " + x.str() + " at n=" + std::to_string(n));
                }
            }
    }});

    criteria.push_back({"heart abelianity with the rep-category oracle", 30.0,
                        [&](std::size_t& checks, std::string& note) {
        Rng rng(0xacc6);
        for (const Workspace* ws : worlds)
            for (int it = 0; it < 20; ++it) {
                Complex x = random_heart_object(rng, ws->quiver, ws->modulus);
                Complex y = random_heart_object(rng, ws->quiver, ws->modulus);
                ChainMap f = random_chain_map(rng, x, y);
                ++checks;
                HeartAnalysis a = heart_analysis(f);
                if (!a.all_heart)
                    fail(note, "objects leave the heart");
                if (!a.witness_im_coim.found())
                    fail(note, "im/coim witness not found");
                auto oracle = kernel_cokernel_rep(homology_map(f, 0));
                if (!reps_isomorphic(homology_at(a.ker, 0), oracle.ker) ||
                    !reps_isomorphic(homology_at(a.coker, 0), oracle.coker))
                    fail(note, "oracle disagreement");
                auto disc = hom_discreteness_report(x, y, 2);
                if (disc.dims[1] != 0 || disc.dims[2] != 0)
                    fail(note, "hom space not discrete");
            }
    }});

    criteria.push_back({"heart-to-t reconstruction matches homology windows and bounds", 0.0,
                        [&](std::size_t& checks, std::string& note) {
        Rng rng(0xacc7);
        for (const Workspace* ws : worlds)
            for (int it = 0; it < 50; ++it) {
                Complex x = random_complex(rng, ws->quiver, ws->modulus);
                ++checks;
                auto r = reconstruct_tstructure_from_heart(x);
                if (r.in_geq0 != window_membership(x, Window::at_least(0)) ||
                    r.in_lt0 != window_membership(x, Window::below(0)))
                    fail(note, "membership mismatch on " + x.str());
                auto support = homology_support(x);
                if (!support.empty() &&
                    (*r.tower.n0 != support.front() ||
                     *r.tower.n0 + *r.tower.k0 - 1 != support.back()))
                    fail(note, "bounds differ from homology support on " + x.str());
            }
    }});

    criteria.push_back({"SOD equivalence on A2: verification, towers, aisles, rejection", 0.0,
                        [&](std::size_t& checks, std::string& note) {
        auto coll = a2.collection_named("std");
        ++checks;
        if (!coll.verified)
            fail(note, "the (P2, P1) collection fails verification");

        Rng rng(0xacc8);
        for (int it = 0; it < 10; ++it) {
            Complex y = random_complex(rng, a2.quiver, a2.modulus, 2, 3);
            ++checks;
            WeavedTower t = weaved_tower(y, coll);
            WeavedTower u = weaved_tower_dual(y, coll);
            if (!t.all_certified() || !u.all_certified())
                fail(note, "weaved tower certificates failed");
            for (std::size_t j = 0; j < t.stages.size(); ++j)
                if (find_equivalence(t.stages[j], u.stages[j]).status != EquivStatus::found)
                    fail(note, "cross-order comparison failed");
        }

        AisleFamily fam = sod_to_tfamily(coll);
        FixedPointSamples samples;
        for (int it = 0; it < 5; ++it)
            samples.objects.push_back(random_complex(rng, a2.quiver, a2.modulus, 2, 3));
        samples.objects.push_back(a2.complex_named("P1c"));
        for (int it = 0; it < 4; ++it) {
            Complex x = random_complex(rng, a2.quiver, 2, 1, 3);
            Complex y = random_complex(rng, a2.quiver, 2, 1, 3);
            auto basis = strict_chain_map_basis(x, y);
            if (!basis.empty())
                samples.maps.push_back(basis[rng.below(static_cast<u32>(basis.size()))]);
        }
        ++checks;
        TPredicates pred{"aisle", [&](const Complex& c) { return fam.in_aisle(1, c); },
                         [&](const Complex& c) { return fam.in_coaisle(1, c); }};
        auto circuit = fixed_point_checks(pred, samples);
        if (!circuit.all_ok())
            fail(note, "fixed-point circuit failed: " + circuit.counterexample);

        ++checks;
        auto bad = check_exceptional_collection(
            {a2.complex_named("P1c"), a2.complex_named("P2c")});
        if (bad.verified)
            fail(note, "mis-ordered collection accepted");
        if (bad.report.find("dim Hom(E_2, E_1[0]) = 1") == std::string::npos)
            fail(note, "rejection lacks the hom witness");
    }});

    criteria.push_back({"Z-poset laws: exhaustive triviality, embedding, extension", 0.0,
                        [&](std::size_t& checks, std::string& note) {
        auto rep = verify::run_suite("zposet", a2, verify::Options{});
        for (const auto& c : rep.checks) {
            checks += c.cases;
            if (!c.pass)
                fail(note, c.name + ": " + c.note);
        }
    }});

    criteria.push_back({"full verify --suite all passes on the bundled fixtures", 60.0,
                        [&](std::size_t& checks, std::string& note) {
        for (const Workspace* ws : worlds) {
            auto reports = verify::run_suites("all", *ws, verify::Options{});
            for (const auto& rep : reports)
                for (const auto& c : rep.checks) {
                    checks += c.cases;
                    if (c.undecided)
                        fail(note, rep.suite + "/" + c.name + " undecided");
                    else if (!c.pass)
                        fail(note, rep.suite + "/" + c.name + ": " + c.note);
                }
        }
    }});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out = run_criterion(criteria[i]);
        std::printf("[%s] criterion %zu: %s (%zu checks, %.2f s%s)\n", out.pass ? "PASS" : "FAIL",
                    i + 1, criteria[i].name.c_str(), out.checks, out.seconds,
                    criteria[i].limit_seconds > 0
                        ? (", limit " + std::to_string(static_cast<int>(criteria[i].limit_seconds)) + " s").c_str()
                        : "");
        if (!out.pass) {
            ++failures;
            std::printf("       %s\n", out.note.c_str());
        }
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
