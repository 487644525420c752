#include "qts/zposet.hpp"

#include <algorithm>

namespace qts {

std::string ZElt::str() const {
    if (tag < 0)
        return "-inf";
    if (tag > 0)
        return "+inf";
    return std::to_string(v);
}

ZPoset ZPoset::integers() { return ZPoset{}; }

ZPoset ZPoset::finite_chain(std::size_t k) {
    std::vector<std::size_t> id(k);
    for (std::size_t i = 0; i < k; ++i)
        id[i] = i;
    return finite_chain(k, id);
}

ZPoset ZPoset::finite_chain(std::size_t k, const std::vector<std::size_t>& rho) {
    if (k == 0)
        throw ValidationError("finite_chain: empty chain");
    if (rho.size() != k)
        throw ValidationError("finite_chain: rho has wrong size");
    std::vector<bool> hit(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (rho[i] >= k || hit[rho[i]])
            throw ValidationError("finite_chain: rho is not a bijection");
        hit[rho[i]] = true;
        if (rho[i] < i)
            throw ValidationError("finite_chain: rho violates x <= rho(x)");
        if (i > 0 && rho[i] < rho[i - 1])
            throw ValidationError("finite_chain: rho is not monotone");
    }
    ZPoset p;
    p.finite_ = true;
    p.chain_size_ = k;
    p.rho_ = rho;
    return p;
}

ZPoset ZPoset::extended(const ZPoset& inner) {
    if (inner.extended_)
        throw ValidationError("extended: already extended");
    ZPoset p = inner;
    p.extended_ = true;
    return p;
}

bool ZPoset::contains(const ZElt& x) const {
    if (x.tag != 0)
        return extended_;
    if (finite_)
        return x.v >= 0 && static_cast<std::size_t>(x.v) < chain_size_;
    return true;
}

std::vector<ZElt> ZPoset::elements() const {
    if (!finite_)
        throw ValidationError("elements: poset is infinite");
    std::vector<ZElt> out;
    if (extended_)
        out.push_back(ZElt::neg_inf());
    for (std::size_t i = 0; i < chain_size_; ++i)
        out.push_back(ZElt::of(static_cast<long long>(i)));
    if (extended_)
        out.push_back(ZElt::pos_inf());
    return out;
}

bool ZPoset::has_min_max() const { return finite_ || extended_; }

ZElt ZPoset::min() const {
    if (extended_)
        return ZElt::neg_inf();
    if (finite_)
        return ZElt::of(0);
    throw ValidationError("min: the integers have no minimum");
}

ZElt ZPoset::max() const {
    if (extended_)
        return ZElt::pos_inf();
    if (finite_)
        return ZElt::of(static_cast<long long>(chain_size_) - 1);
    throw ValidationError("max: the integers have no maximum");
}

ZElt ZPoset::act(const ZElt& x, long long n) const {
    if (!contains(x))
        throw ValidationError("act: element not in poset");
    if (x.tag != 0)
        return x;  // adjoined ends are fixed points
    if (!finite_)
        return ZElt::of(x.v + n);
    std::size_t cur = static_cast<std::size_t>(x.v);
    if (n >= 0) {
        for (long long i = 0; i < n; ++i)
            cur = rho_[cur];
    } else {
        // rho is a bijection; apply the inverse
        std::vector<std::size_t> inv(chain_size_);
        for (std::size_t i = 0; i < chain_size_; ++i)
            inv[rho_[i]] = i;
        for (long long i = 0; i < -n; ++i)
            cur = inv[cur];
    }
    return ZElt::of(static_cast<long long>(cur));
}

std::string ZPoset::str() const {
    std::string inner = finite_ ? "chain(" + std::to_string(chain_size_) + ")" : "Z";
    return extended_ ? inner + " with +/-inf" : inner;
}

ZPosetMap ZPosetMap::from_integers(ZPoset target, ZElt base) {
    if (!target.contains(base))
        throw ValidationError("zposet map: base point not in target");
    ZPosetMap f;
    f.source_ = ZPoset::integers();
    f.target_ = std::move(target);
    f.base_ = base;
    return f;
}

ZPosetMap ZPosetMap::from_extended_integers(ZPoset target, ZElt base) {
    if (!target.has_min_max())
        throw ValidationError("zposet map: extended source needs a target with min and max");
    ZPosetMap f = from_integers(std::move(target), base);
    f.source_ = ZPoset::extended(ZPoset::integers());
    return f;
}

ZPosetMap ZPosetMap::from_finite(ZPoset source, ZPoset target,
                                 std::vector<std::pair<ZElt, ZElt>> assignment) {
    if (!source.is_finite() && !source.is_extended())
        throw ValidationError("zposet map: use from_integers for integer sources");
    auto elts = source.is_finite() ? source.elements() : std::vector<ZElt>{};
    if (!source.is_finite()) {
        // Extended(Integers): not enumerable; reject for simplicity
        throw ValidationError("zposet map: extended integer sources are represented via extend_map");
    }
    ZPosetMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    for (const ZElt& x : elts) {
        auto it = std::find_if(assignment.begin(), assignment.end(),
                               [&](const auto& kv) { return kv.first == x; });
        if (it == assignment.end())
            throw ValidationError("zposet map: missing image of " + x.str());
        if (!f.target_.contains(it->second))
            throw ValidationError("zposet map: image not in target");
        f.assignment_.emplace_back(x, it->second);
    }
    // monotone
    for (std::size_t i = 1; i < f.assignment_.size(); ++i)
        if (!(f.assignment_[i - 1].second <= f.assignment_[i].second))
            throw ValidationError("zposet map: not monotone");
    // equivariance: phi(x + 1) = phi(x) + 1
    for (const auto& [x, y] : f.assignment_) {
        ZElt x1 = f.source_.act(x, 1);
        auto it = std::find_if(f.assignment_.begin(), f.assignment_.end(),
                               [&](const auto& kv) { return kv.first == x1; });
        if (it == f.assignment_.end() || !(it->second == f.target_.act(y, 1)))
            throw ValidationError("zposet map: not equivariant at " + x.str());
    }
    return f;
}

ZElt ZPosetMap::apply(const ZElt& x) const {
    if (base_) {
        if (x.tag != 0) {
            if (!source_.is_extended())
                throw ValidationError("zposet map: element not in source");
            return x.tag < 0 ? target_.min() : target_.max();
        }
        return target_.act(*base_, x.v);
    }
    for (const auto& [key, val] : assignment_)
        if (key == x)
            return val;
    throw ValidationError("zposet map: element not in source");
}

bool ZPosetMap::is_injective() const {
    if (base_)
        return !(target_.act(*base_, 1) == *base_);
    for (std::size_t i = 0; i < assignment_.size(); ++i)
        for (std::size_t j = i + 1; j < assignment_.size(); ++j)
            if (assignment_[i].second == assignment_[j].second)
                return false;
    return true;
}

bool ZPosetMap::is_constant() const {
    if (base_)
        return target_.act(*base_, 1) == *base_;
    for (std::size_t i = 1; i < assignment_.size(); ++i)
        if (!(assignment_[i].second == assignment_[0].second))
            return false;
    return true;
}

ZPosetMap embed_element(const ZPoset& p, const ZElt& x) {
    if (!p.contains(x))
        throw ValidationError("embed_element: element not in poset");
    return ZPosetMap::from_integers(p, x);
}

ZPosetMap extend_map(const ZPosetMap& phi) {
    if (!phi.target().has_min_max())
        throw ValidationError("extend_map: target lacks a minimum or maximum");
    if (phi.source().is_extended())
        throw ValidationError("extend_map: source already extended");
    ZPoset ext_source = ZPoset::extended(phi.source());
    if (!phi.source().is_finite())
        return ZPosetMap::from_extended_integers(phi.target(), phi.apply(ZElt::of(0)));
    std::vector<std::pair<ZElt, ZElt>> assignment;
    assignment.emplace_back(ZElt::neg_inf(), phi.target().min());
    for (const ZElt& x : phi.source().elements())
        assignment.emplace_back(x, phi.apply(x));
    assignment.emplace_back(ZElt::pos_inf(), phi.target().max());
    return ZPosetMap::from_finite(std::move(ext_source), phi.target(), std::move(assignment));
}

}  // namespace qts
