#pragma once

#include "qts/complex.hpp"
#include "qts/homset.hpp"

namespace qts {

/// Half-open degree window [lo, hi); a missing bound means the window is
/// unbounded on that side. C_{[lo,hi)} = complexes with homology supported in
/// the window.
struct Window {
    std::optional<int> lo, hi;

    static Window all() { return Window{}; }
    static Window at_least(int n) { return Window{n, std::nullopt}; }
    static Window below(int n) { return Window{std::nullopt, n}; }
    static Window interval(int lo, int hi) { return Window{lo, hi}; }

    bool contains(int n) const { return (!lo || n >= *lo) && (!hi || n < *hi); }
    bool operator==(const Window&) const = default;
    std::string str() const;
};

bool window_membership(const Complex& x, const Window& w);

/// Smart truncation triangle tau_{>=n} X -> X -> tau_{<n} X. The degree-n term
/// of the upper part is ker(d_n), so homology splits exactly at n.
struct Truncation {
    Complex tau_geq;
    ChainMap incl;  // tau_geq -> X
    Complex tau_lt;
    ChainMap proj;  // X -> tau_lt
    bool triangle_ok = false;  // cone(incl) -> tau_lt certified a quasi-iso
};

Truncation truncate(const Complex& x, int n);

/// Functorial action of tau_{<n} on maps.
ChainMap truncate_lt_map(const ChainMap& f, int n);

/// (E_n, M_n)-factorization of f: X -> Z -> Y through the reflective pullback
/// Z = Y x_{tau_{<n} Y} tau_{<n} X. Membership flags define the classes
/// operationally: f lies in M_n iff e is an equivalence, in E_n iff m is.
struct FactorizationPair {
    ChainMap e;  // X -> Z
    ChainMap m;  // Z -> Y
    Complex mid;
    int level = 0;
    bool e_is_equivalence = false;
    bool m_is_equivalence = false;
};

FactorizationPair em_factorization(const ChainMap& f, int n);
bool in_e_class(const ChainMap& f, int n);
bool in_m_class(const ChainMap& f, int n);

/// Ascending chain of integer levels; input is sorted and deduplicated.
struct TChain {
    std::vector<int> indices;

    static TChain of(std::vector<int> values);
    std::size_t size() const { return indices.size(); }
    std::string str() const;
};

struct TowerCertificate {
    Window window;
    bool ok = false;
};

/// A factorization of base: X -> Y through stages Z_{i_k}, ..., Z_{i_1} (top
/// stage first) with one cofiber window certificate per map. maps[0] goes out
/// of X, maps.back() lands in Y.
struct Tower {
    ChainMap base;
    std::vector<Complex> stages;
    std::vector<ChainMap> maps;
    std::vector<TowerCertificate> certs;
    std::vector<int> levels;
    bool composite_ok = false;

    // stabilized Z-towers record their bounds and per-map equivalence flags
    std::optional<int> n0, k0;
    std::vector<bool> map_is_equivalence;

    bool all_certified() const;
};

/// Iterated-truncation factorization of the initial morphism 0 -> Y.
Tower kfold_factorization(const Complex& y, const TChain& chain);

/// Postnikov tower of f: the k-fold factorization of 0 -> cofib(f) pulled
/// back along Y -> cofib(f).
Tower postnikov_tower(const ChainMap& f, const TChain& chain);

/// Dual construction: truncations of fib(f) pushed out along fib(f) -> X.
/// Stage-wise equivalent to postnikov_tower; kept as an independent route for
/// uniqueness cross-checks.
Tower postnikov_tower_dual(const ChainMap& f, const TChain& chain);

/// Tower over the full homology support of cofib(f), padded so the head and
/// tail maps are equivalences; records the stabilization bounds (n0, k0).
Tower z_postnikov_tower(const ChainMap& f);

/// Initial and terminal arrows of X share their E_n and M_n memberships.
bool sator_check(const Complex& x, int n);

/// f and g agree up to chain homotopy.
bool maps_homotopic(const ChainMap& f, const ChainMap& g);

}  // namespace qts
