#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qts/fp.hpp"

namespace qts {

/// Element of a Z-poset: either one of the adjoined fixed points at the ends
/// or a finite value (an integer, or an index into a finite chain).
struct ZElt {
    int tag = 0;  // -1 = -infinity, 0 = finite, +1 = +infinity
    long long v = 0;

    static ZElt neg_inf() { return ZElt{-1, 0}; }
    static ZElt pos_inf() { return ZElt{+1, 0}; }
    static ZElt of(long long value) { return ZElt{0, value}; }

    bool operator==(const ZElt&) const = default;
    bool operator<(const ZElt& o) const { return tag != o.tag ? tag < o.tag : v < o.v; }
    bool operator<=(const ZElt& o) const { return *this == o || *this < o; }

    std::string str() const;
};

/// Totally ordered Z-poset: the integers, a finite chain 0 < 1 < ... < k-1, or
/// either of those with fixed points at -infinity and +infinity adjoined. The
/// action is the monotone successor bijection rho with x <= rho(x); on a
/// finite chain the only such bijection is the identity, which validation
/// enforces by exhaustive check.
class ZPoset {
public:
    static ZPoset integers();
    static ZPoset finite_chain(std::size_t k);
    /// Finite chain with an explicit successor map; throws unless rho is a
    /// monotone bijection with x <= rho(x).
    static ZPoset finite_chain(std::size_t k, const std::vector<std::size_t>& rho);
    static ZPoset extended(const ZPoset& inner);

    bool is_finite() const { return finite_; }
    bool is_extended() const { return extended_; }
    std::size_t chain_size() const { return chain_size_; }

    bool contains(const ZElt& x) const;
    std::vector<ZElt> elements() const;  // throws on Integers kinds
    bool has_min_max() const;
    ZElt min() const;
    ZElt max() const;

    /// x + n, i.e. the n-fold successor (or its inverse).
    ZElt act(const ZElt& x, long long n) const;
    bool is_fixed_point(const ZElt& x) const { return act(x, 1) == x; }

    bool operator==(const ZPoset&) const = default;
    std::string str() const;

private:
    bool finite_ = false;
    bool extended_ = false;
    std::size_t chain_size_ = 0;
    std::vector<std::size_t> rho_;  // finite part only
};

/// Morphism of Z-posets. A map out of the integers is stored by its base
/// point phi(0) alone; equivariance recovers every other value. Maps out of
/// finite kinds store the full assignment, and validation checks monotonicity
/// and equivariance (which forces images of finite-chain points to be fixed).
class ZPosetMap {
public:
    static ZPosetMap from_integers(ZPoset target, ZElt base);
    /// Base-point map from Integers + {±infinity}; the ends go to min/max of
    /// the target, which must exist.
    static ZPosetMap from_extended_integers(ZPoset target, ZElt base);
    static ZPosetMap from_finite(ZPoset source, ZPoset target, std::vector<std::pair<ZElt, ZElt>> assignment);

    const ZPoset& source() const { return source_; }
    const ZPoset& target() const { return target_; }

    ZElt apply(const ZElt& x) const;
    bool is_injective() const;
    bool is_constant() const;
    /// Constant maps factor Z-equivariantly through the terminal poset.
    bool factors_through_terminal() const { return is_constant(); }

private:
    ZPoset source_, target_;
    std::optional<ZElt> base_;                       // Integers-type source
    std::vector<std::pair<ZElt, ZElt>> assignment_;  // finite-type source
};

/// phi_x(n) = x + n (the embedding lemma).
ZPosetMap embed_element(const ZPoset& p, const ZElt& x);

/// Extends phi to source + {±infinity} by sending them to min/max of the
/// target; throws when the target has no minimum or maximum.
ZPosetMap extend_map(const ZPosetMap& phi);

}  // namespace qts
