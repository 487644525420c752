#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixture_quivers.hpp"
#include "qts/rng.hpp"
#include "qts/sod.hpp"

using namespace qts;
using namespace qts::fixtures;

namespace {

Rep random_rep(Rng& rng, const QuiverPtr& q, u32 p, std::size_t max_total) {
    std::vector<std::size_t> dims(q->vertex_count, 0);
    std::size_t total = 1 + rng.below(static_cast<u32>(max_total));
    for (std::size_t i = 0; i < total; ++i)
        ++dims[rng.below(static_cast<u32>(q->vertex_count))];
    std::vector<Matrix> maps;
    for (auto [s, t] : q->edges) {
        Matrix m(dims[t], dims[s], p);
        for (std::size_t i = 0; i < dims[t]; ++i)
        for (std::size_t j = 0; j < dims[s]; ++j)
            m.set(i, j, rng.below(p));
        maps.push_back(std::move(m));
    }
    return Rep::validated(q, p, std::move(dims), std::move(maps));
}

Complex random_complex(Rng& rng, const QuiverPtr& q, u32 p = 2, int max_shift = 2) {
    auto one = [&]() -> Complex {
        int deg = static_cast<int>(rng.below(static_cast<u32>(2 * max_shift + 1))) - max_shift;
        if (rng.chance(1, 2))
            return Complex::concentrated(random_rep(rng, q, p, 2), deg);
        Rep m = random_rep(rng, q, p, 2);
        Rep n = random_rep(rng, q, p, 2);
        auto basis = hom_rep_basis(m, n);
        if (basis.empty())
            return Complex::concentrated(m, deg);
        return Complex::two_term(basis[rng.below(static_cast<u32>(basis.size()))], deg);
    };
    Complex x = one();
    if (rng.chance(1, 3))
        x = Complex::direct_sum(x, one());
    return x;
}

ExceptionalCollection a2_collection(const QuiverPtr& q) {
    return check_exceptional_collection(
        {Complex::concentrated(a2_p2(q), 0), Complex::concentrated(a2_p1(q), 0)});
}

ExceptionalCollection a3_collection(const QuiverPtr& q) {
    return check_exceptional_collection({Complex::concentrated(Rep::projective(q, 2, 2), 0),
                                         Complex::concentrated(Rep::projective(q, 2, 1), 0),
                                         Complex::concentrated(Rep::projective(q, 2, 0), 0)});
}

}  // namespace

TEST_CASE("exceptional collection verification on A2") {
    auto q = a2();
    auto good = a2_collection(q);
    CHECK(good.verified);

    // the mis-ordered pair is rejected with the offending dimension
    auto bad = check_exceptional_collection(
        {Complex::concentrated(a2_p1(q), 0), Complex::concentrated(a2_p2(q), 0)});
    CHECK_FALSE(bad.verified);
    CHECK(bad.report.find("dim Hom(E_2, E_1[0]) = 1") != std::string::npos);

    // a single block is trivially verified
    auto single = check_exceptional_collection({Complex::concentrated(a2_p1(q), 0)});
    CHECK(single.verified);

    // S1 is exceptional alone but (S1, P2) fails: Ext^1(S1, S2) = k
    auto ext_fail = check_exceptional_collection(
        {Complex::concentrated(a2_p2(q), 0), Complex::concentrated(a2_s1(q), 0)});
    CHECK_FALSE(ext_fail.verified);
}

TEST_CASE("exceptional collection on A3") {
    auto coll = a3_collection(a3());
    CHECK(coll.verified);
}

TEST_CASE("block coreflection computes the thick part") {
    auto q = a2();
    Complex p1 = Complex::concentrated(a2_p1(q), 0);
    Complex s1 = Complex::concentrated(a2_s1(q), 0);

    // Hom(P1, S1) = k, so the coreflection of S1 onto thick(P1) is P1 itself
    Coreflection cr = block_coreflection(p1, s1);
    CHECK(cr.w.total_dim() == 2);
    CHECK(cr.summand_shifts == std::vector<int>{0});
    CHECK_FALSE(is_quasi_iso(cr.counit));

    CHECK(in_thick_closure(p1, p1));
    CHECK(in_thick_closure(p1, shift(p1, 3)));
    CHECK(in_thick_closure(p1, Complex::direct_sum(p1, shift(p1, -1))));
    CHECK_FALSE(in_thick_closure(p1, s1));
    CHECK(in_thick_closure(p1, Complex::zero_complex(q, 2)));  // zero object is in every thick
}

TEST_CASE("weaved tower of S1 for the standard A2 collection") {
    auto q = a2();
    auto coll = a2_collection(q);
    Complex s1 = Complex::concentrated(a2_s1(q), 0);

    WeavedTower t = weaved_tower(s1, coll);
    CHECK(t.all_certified());
    REQUIRE(t.stages.size() == 1);
    REQUIRE(t.maps.size() == 2);
    // first stage is the P1-part of S1, the final cofiber is P2[1]
    CHECK(find_equivalence(t.stages[0], Complex::concentrated(a2_p1(q), 0)).found());
    Complex last_cofiber = make_cone(t.maps[1]);
    CHECK(find_equivalence(last_cofiber, shift(Complex::concentrated(a2_p2(q), 0), 1)).found());
    CHECK(t.block_of_map == std::vector<std::size_t>{1, 0});
}

TEST_CASE("weaved tower of a block generator and of zero") {
    auto q = a2();
    auto coll = a2_collection(q);
    Complex p1 = Complex::concentrated(a2_p1(q), 0);

    WeavedTower t = weaved_tower(p1, coll);
    CHECK(t.all_certified());
    int nontrivial = 0;
    for (const auto& m : t.maps)
        if (!is_acyclic(make_cone(m)))
            ++nontrivial;
    CHECK(nontrivial == 1);

    WeavedTower tz = weaved_tower(Complex::zero_complex(q, 2), coll);
    CHECK(tz.all_certified());
    for (const auto& s : tz.stages)
        CHECK(is_acyclic(s));
}

TEST_CASE("weaved towers exist and both routes agree on random objects") {
    Rng rng(0x50d);
    {
        auto q = a2();
        auto coll = a2_collection(q);
        for (int it = 0; it < 8; ++it) {
            Complex y = random_complex(rng, q);
            WeavedTower a = weaved_tower(y, coll);
            WeavedTower b = weaved_tower_dual(y, coll);
            CHECK(a.all_certified());
            CHECK(b.all_certified());
            REQUIRE(a.stages.size() == b.stages.size());
            for (std::size_t j = 0; j < a.stages.size(); ++j)
                CHECK(find_equivalence(a.stages[j], b.stages[j]).status == EquivStatus::found);
        }
    }
    {
        auto q = a3();
        auto coll = a3_collection(q);
        for (int it = 0; it < 4; ++it) {
            Complex y = random_complex(rng, q, 2, 1);
            WeavedTower a = weaved_tower(y, coll);
            WeavedTower b = weaved_tower_dual(y, coll);
            CHECK(a.all_certified());
            CHECK(b.all_certified());
            REQUIRE(a.stages.size() == b.stages.size());
            for (std::size_t j = 0; j < a.stages.size(); ++j)
                CHECK(find_equivalence(a.stages[j], b.stages[j]).status == EquivStatus::found);
        }
    }
}

TEST_CASE("tower stage cofibers are mutually semiorthogonal") {
    Rng rng(0x0a5 + 0x155);
    auto q = a2();
    auto coll = a2_collection(q);
    for (int it = 0; it < 5; ++it) {
        Complex y = random_complex(rng, q);
        WeavedTower t = weaved_tower(y, coll);
        std::vector<Complex> cofibers;
        for (const auto& m : t.maps)
            cofibers.push_back(make_cone(m));
        // maps[j] certifies a later block than maps[j'] for j < j'; no homs
        // from later to earlier blocks in any shift
        for (std::size_t a = 0; a < cofibers.size(); ++a)
            for (std::size_t b = a + 1; b < cofibers.size(); ++b) {
                if (is_acyclic(cofibers[a]) || is_acyclic(cofibers[b]))
                    continue;
                for (int n = -3; n <= 3; ++n)
                    CHECK(hom_homotopy_basis(cofibers[a], cofibers[b], n).dim == 0);
            }
    }
}

TEST_CASE("aisle family from the A2 collection") {
    auto q = a2();
    auto coll = a2_collection(q);
    AisleFamily fam = sod_to_tfamily(coll);
    REQUIRE(fam.classes == 1);

    Complex p1 = Complex::concentrated(a2_p1(q), 0);
    Complex p2 = Complex::concentrated(a2_p2(q), 0);
    CHECK(fam.in_aisle(1, p1));
    CHECK_FALSE(fam.in_aisle(1, p2));
    CHECK(fam.in_coaisle(1, p2));

    // trivial Z-action: membership is shift-invariant
    Rng rng(0xfa3);
    for (int it = 0; it < 6; ++it) {
        Complex y = random_complex(rng, q);
        bool base = fam.in_aisle(1, y);
        CHECK(fam.in_aisle(1, shift(y, 1)) == base);
        CHECK(fam.in_aisle(1, shift(y, -1)) == base);
    }

    // every object sits in the triangle aisle-part -> Y -> coaisle-part
    for (int it = 0; it < 6; ++it) {
        Complex y = random_complex(rng, q);
        WeavedTower t = weaved_tower(y, coll);
        CHECK(fam.in_aisle(1, t.stages[0]));
        CHECK(fam.in_coaisle(1, make_cone(t.maps[1])));
    }
}

TEST_CASE("fixed point checks: SOD aisle passes, standard aisle fails shifts") {
    auto q = a2();
    auto coll = a2_collection(q);
    AisleFamily fam = sod_to_tfamily(coll);

    TPredicates sod_pred{
        "thick(P1)",
        [&](const Complex& x) { return fam.in_aisle(1, x); },
        [&](const Complex& x) { return fam.in_coaisle(1, x); },
    };
    TPredicates std_pred{
        "C_{>=0}",
        [](const Complex& x) { return window_membership(x, Window::at_least(0)); },
        [](const Complex& x) { return window_membership(x, Window::below(0)); },
    };

    FixedPointSamples samples;
    Rng rng(0xf1d0);
    for (int it = 0; it < 5; ++it)
        samples.objects.push_back(random_complex(rng, q));
    samples.objects.push_back(Complex::concentrated(a2_s1(q), 0));
    samples.objects.push_back(Complex::concentrated(a2_p1(q), 0));
    for (int it = 0; it < 4; ++it) {
        Complex x = random_complex(rng, q, 2, 1);
        Complex y = random_complex(rng, q, 2, 1);
        auto basis = strict_chain_map_basis(x, y);
        if (!basis.empty())
            samples.maps.push_back(basis[rng.below(static_cast<u32>(basis.size()))]);
    }
    samples.maps.push_back(ChainMap::identity(Complex::concentrated(a2_p1(q), 0)));

    FixedPointReport sod_report = fixed_point_checks(sod_pred, samples);
    CHECK(sod_report.all_ok());

    FixedPointReport std_report = fixed_point_checks(std_pred, samples);
    CHECK_FALSE(std_report.shifts_ok);  // S1[-1] leaves C_{>=0}

    // the trivial aisle is fixed: everything passes
    TPredicates trivial{"everything", [](const Complex&) { return true; },
                        [](const Complex& x) { return is_acyclic(x); }};
    CHECK(fixed_point_checks(trivial, samples).all_ok());
}

TEST_CASE("coaisle reflection preserves pullouts (hereditary torsion pair)") {
    auto q = a2();
    Complex p1 = Complex::concentrated(a2_p1(q), 0);
    Rng rng(0x7e5);
    int done = 0;
    for (int it = 0; it < 20 && done < 4; ++it) {
        Complex x = random_complex(rng, q, 2, 1);
        Complex y = random_complex(rng, q, 2, 1);
        Complex c = random_complex(rng, q, 2, 1);
        auto fb = strict_chain_map_basis(x, c);
        auto gb = strict_chain_map_basis(y, c);
        if (fb.empty() || gb.empty())
            continue;
        ++done;
        ChainMap f = fb[rng.below(static_cast<u32>(fb.size()))];
        ChainMap g = gb[rng.below(static_cast<u32>(gb.size()))];
        auto square = pullout(f, g);

        ChainMap lf = coaisle_reflection_map(p1, f);
        ChainMap lg = coaisle_reflection_map(p1, g);
        auto lsquare = pullout(lf, lg);
        Complex lp = coaisle_reflection(p1, square.p).ly;
        CHECK(find_equivalence(lp, lsquare.p).status == EquivStatus::found);
    }
    CHECK(done > 0);
}

TEST_CASE("certificate failures are loud") {
    auto q = a2();
    auto bad = check_exceptional_collection(
        {Complex::concentrated(a2_p1(q), 0), Complex::concentrated(a2_p2(q), 0)});
    CHECK_THROWS_AS(weaved_tower(Complex::concentrated(a2_s1(q), 0), bad), CertificateError);
}

TEST_CASE("machinery is quiver-generic: Kronecker and star quivers") {
    // two parallel arrows, then a one-source star
    for (auto q : {Quiver::validated(2, {{0, 1}, {0, 1}}),
                   Quiver::validated(4, {{0, 1}, {0, 2}, {0, 3}})}) {
        auto coll = check_exceptional_collection([&] {
            std::vector<Complex> blocks;
            for (std::size_t i = q->vertex_count; i-- > 0;)
                blocks.push_back(Complex::concentrated(Rep::projective(q, 2, q->topo_order[i]), 0));
            return blocks;
        }());
        CHECK(coll.verified);
        Rng rng(0xabcd);
        for (int it = 0; it < 3; ++it) {
            Complex y = random_complex(rng, q, 2, 1);
            WeavedTower a = weaved_tower(y, coll);
            WeavedTower b = weaved_tower_dual(y, coll);
            CHECK(a.all_certified());
            CHECK(b.all_certified());
            for (std::size_t j = 0; j < a.stages.size(); ++j)
                CHECK(find_equivalence(a.stages[j], b.stages[j]).found());
        }
        Complex x = random_complex(rng, q, 2);
        for (int n = -1; n <= 1; ++n)
            CHECK(sator_check(x, n));
    }
}
