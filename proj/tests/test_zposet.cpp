#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qts/zposet.hpp"

using namespace qts;

TEST_CASE("action basics") {
    ZPoset z = ZPoset::integers();
    CHECK(z.act(ZElt::of(5), 2) == ZElt::of(7));
    CHECK(z.act(ZElt::of(5), -7) == ZElt::of(-2));

    ZPoset c3 = ZPoset::finite_chain(3);
    for (long long v = 0; v < 3; ++v)
        CHECK(c3.act(ZElt::of(v), 1) == ZElt::of(v));  // the only action is trivial

    ZPoset ez = ZPoset::extended(ZPoset::integers());
    CHECK(ez.act(ZElt::neg_inf(), 5) == ZElt::neg_inf());
    CHECK(ez.act(ZElt::pos_inf(), -3) == ZElt::pos_inf());
    CHECK(ez.act(ZElt::of(1), 2) == ZElt::of(3));

    CHECK_THROWS_AS(c3.act(ZElt::of(7), 1), ValidationError);
    CHECK_THROWS_AS(ZPoset::extended(ez), ValidationError);
}

TEST_CASE("exhaustive: the only valid rho on a chain of size <= 6 is the identity") {
    for (std::size_t k = 1; k <= 6; ++k) {
        std::vector<std::size_t> perm(k);
        for (std::size_t i = 0; i < k; ++i)
            perm[i] = i;
        std::size_t valid = 0;
        do {
            bool ok = true;
            try {
                ZPoset::finite_chain(k, perm);
            } catch (const ValidationError&) {
                ok = false;
            }
            if (ok) {
                ++valid;
                for (std::size_t i = 0; i < k; ++i)
                    CHECK(perm[i] == i);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(valid == 1);
    }
}

TEST_CASE("maximal and minimal elements are fixed points") {
    for (std::size_t k = 1; k <= 5; ++k) {
        ZPoset c = ZPoset::finite_chain(k);
        CHECK(c.is_fixed_point(c.min()));
        CHECK(c.is_fixed_point(c.max()));
    }
    ZPoset ez = ZPoset::extended(ZPoset::integers());
    CHECK(ez.is_fixed_point(ez.min()));
    CHECK(ez.is_fixed_point(ez.max()));
}

TEST_CASE("embedding lemma: injective or constant") {
    ZPoset z = ZPoset::integers();
    ZPosetMap id_embed = embed_element(z, ZElt::of(0));
    CHECK(id_embed.is_injective());
    CHECK_FALSE(id_embed.is_constant());
    CHECK(id_embed.apply(ZElt::of(4)) == ZElt::of(4));

    ZPoset c4 = ZPoset::finite_chain(4);
    ZPosetMap konst = embed_element(c4, ZElt::of(2));
    CHECK(konst.is_constant());
    CHECK_FALSE(konst.is_injective());
    CHECK(konst.factors_through_terminal());
    CHECK(konst.apply(ZElt::of(100)) == ZElt::of(2));

    ZPoset ez = ZPoset::extended(ZPoset::integers());
    ZPosetMap top = embed_element(ez, ZElt::pos_inf());
    CHECK(top.is_constant());
    CHECK(top.factors_through_terminal());

    // injectivity of the embedding detects fixed points exactly
    for (long long v = 0; v < 4; ++v)
        CHECK(embed_element(c4, ZElt::of(v)).is_constant() == c4.is_fixed_point(ZElt::of(v)));
}

TEST_CASE("extension lemma") {
    // identity of the integers extended into Integers + {±inf}
    ZPoset ez = ZPoset::extended(ZPoset::integers());
    ZPosetMap incl = ZPosetMap::from_integers(ez, ZElt::of(0));
    ZPosetMap ext = extend_map(incl);
    CHECK(ext.source().is_extended());
    CHECK(ext.apply(ZElt::neg_inf()) == ZElt::neg_inf());
    CHECK(ext.apply(ZElt::pos_inf()) == ZElt::pos_inf());
    CHECK(ext.apply(ZElt::of(3)) == ZElt::of(3));

    // a constant map extends with min/max at the ends
    ZPoset c3 = ZPoset::finite_chain(3);
    std::vector<std::pair<ZElt, ZElt>> assignment;
    for (long long v = 0; v < 3; ++v)
        assignment.emplace_back(ZElt::of(v), ZElt::of(1));
    ZPosetMap konst = ZPosetMap::from_finite(c3, c3, assignment);
    ZPosetMap ext2 = extend_map(konst);
    CHECK(ext2.apply(ZElt::neg_inf()) == ZElt::of(0));
    CHECK(ext2.apply(ZElt::pos_inf()) == ZElt::of(2));
    CHECK(ext2.apply(ZElt::of(2)) == ZElt::of(1));

    // a target without min and max is rejected
    ZPosetMap to_z = ZPosetMap::from_integers(ZPoset::integers(), ZElt::of(0));
    CHECK_THROWS_AS(extend_map(to_z), ValidationError);
}

TEST_CASE("finite-source maps must land in fixed points and be monotone") {
    ZPoset c2 = ZPoset::finite_chain(2);
    ZPoset ez = ZPoset::extended(ZPoset::integers());
    // sending a chain point to a non-fixed point of Z+{±inf} breaks equivariance
    CHECK_THROWS_AS(ZPosetMap::from_finite(
                        c2, ez, {{ZElt::of(0), ZElt::of(3)}, {ZElt::of(1), ZElt::of(5)}}),
                    ValidationError);
    // the ends are fixed, so they are legal images
    ZPosetMap ok = ZPosetMap::from_finite(
        c2, ez, {{ZElt::of(0), ZElt::neg_inf()}, {ZElt::of(1), ZElt::pos_inf()}});
    CHECK(ok.is_injective());
    // non-monotone assignments are rejected
    CHECK_THROWS_AS(ZPosetMap::from_finite(
                        c2, ez, {{ZElt::of(0), ZElt::pos_inf()}, {ZElt::of(1), ZElt::neg_inf()}}),
                    ValidationError);
}
