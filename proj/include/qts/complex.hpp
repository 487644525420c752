#pragma once

#include <map>
#include <optional>

#include "qts/quiver.hpp"

namespace qts {

/// Bounded chain complex of representations. Homological indexing: d_n maps
/// term(n) to term(n-1) and lowers degree; H_n(X[1]) = H_{n-1}(X).
///
/// Terms with total dimension zero are trimmed, so structural equality of
/// complexes (operator==) compares the supports, the matrices of the terms and
/// the differentials, nothing else. Equivalence in the homotopy category is a
/// different notion and always goes through find_equivalence.
struct Complex {
    QuiverPtr quiver;
    u32 modulus = 2;
    std::map<int, Rep> terms;      // only nonzero terms
    std::map<int, RepMap> diffs;   // d_n: term(n) -> term(n-1), kept iff both terms exist

    static Complex validated(QuiverPtr q, u32 p, std::map<int, Rep> terms, std::map<int, RepMap> diffs);
    static Complex zero_complex(QuiverPtr q, u32 p);
    static Complex concentrated(const Rep& rep, int degree);
    /// Two-term complex with f as the differential from degree `top`.
    static Complex two_term(const RepMap& f, int top);
    static Complex direct_sum(const Complex& a, const Complex& b);

    bool is_zero_object() const { return terms.empty(); }
    Rep term_at(int n) const;
    RepMap diff_at(int n) const;
    int min_degree() const;  // 0 when empty
    int max_degree() const;
    std::size_t total_dim() const;

    bool operator==(const Complex& other) const;
    std::string str() const;
};

Complex shift(const Complex& x, int k);

struct ChainMap {
    Complex source, target;
    std::map<int, RepMap> components;  // degrees where both terms are nonzero; zero maps trimmed

    static ChainMap validated(Complex source, Complex target, std::map<int, RepMap> components);
    static ChainMap zero_map(Complex source, Complex target);
    static ChainMap identity(const Complex& x);

    RepMap component_at(int n) const;
    bool is_zero() const { return components.empty(); }

    ChainMap compose_after(const ChainMap& inner) const;  // this o inner
    ChainMap operator+(const ChainMap& rhs) const;
    ChainMap operator-(const ChainMap& rhs) const;
    ChainMap scaled(u32 c) const;
    ChainMap negated() const { return scaled(source.modulus - 1); }

    bool operator==(const ChainMap& other) const;
};

ChainMap shift_map(const ChainMap& f, int k);

/// H_n as a representation with induced edge maps, plus enough bookkeeping to
/// push chain maps forward to homology.
struct HomologyData {
    Rep h;
    RepMap cycles_incl;  // Z_n -> X_n, basis of ker(d_n)
    RepMap h_proj;       // Z_n -> H_n
    std::vector<Matrix> h_sections;  // linear sections H_n -> Z_n (not rep maps)
};

HomologyData homology_data(const Complex& x, int n);
Rep homology_at(const Complex& x, int n);
RepMap homology_map(const ChainMap& f, int n);
std::map<int, Rep> homology_all(const Complex& x);
/// Degrees with nonvanishing homology (empty when acyclic).
std::vector<int> homology_support(const Complex& x);
bool is_acyclic(const Complex& x);
/// Direct sum of H_n(X) placed in degree n, with zero differentials.
Complex homology_sum_complex(const Complex& x);

/// Cofiber data of f: X -> Y. The cone carries the standard differential
/// d(x, y) = (-dx, dy - fx) on cone_n = X_{n-1} + Y_n; fib(f) = cone(f)[-1].
struct TriangleWitness {
    ChainMap f;
    Complex cone;
    ChainMap incl;           // Y -> cone
    ChainMap proj_to_shift;  // cone -> X[1]
    bool les_exact = false;  // homology long exact sequence, checked by ranks

    Complex fiber() const { return shift(cone, -1); }
    ChainMap fiber_to_source() const;
};

Complex make_cone(const ChainMap& f);
TriangleWitness cone_and_fiber(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);

/// Exactness of A -> B -> C at B, vertex-wise by rank bookkeeping.
bool exact_at(const RepMap& alpha, const RepMap& beta);

struct PulloutResult {
    Complex p;
    ChainMap to_source_f;  // P -> X  (source of f)
    ChainMap to_source_g;  // P -> Y  (source of g)
    // Chain homotopy h with dh + hd = f o to_source_f - g o to_source_g.
    std::map<int, RepMap> homotopy;
};

/// Pullback corner P = fib((f,-g): X + Y -> C) of two maps into C. In the
/// stable model every such square is simultaneously a pushout.
PulloutResult pullout(const ChainMap& f, const ChainMap& g);

/// Dual corner: pushout of a span (f: A -> X, g: A -> Y) as cone((f,-g): A -> X + Y).
struct PushoutResult {
    Complex p;
    ChainMap from_target_f;  // X -> P
    ChainMap from_target_g;  // Y -> P
    std::map<int, RepMap> homotopy;
};

PushoutResult pushout(const ChainMap& f, const ChainMap& g);

struct ProjectiveReplacement {
    Complex p;
    ChainMap qiso;  // P -> X
};

/// Termwise standard resolution, totalized over the two rows. Returns (X, id)
/// when every term is already projective.
ProjectiveReplacement projective_replacement(const Complex& x);

bool rep_is_projective(const Rep& m);

/// A map X -> Y in the homotopy category, presented as a strict roof
/// X <- middle -> Y whose left leg is always a quasi-isomorphism.
struct Roof {
    Complex middle;
    ChainMap to_source;
    ChainMap to_target;
};

enum class EquivStatus { found, none, undecided };

struct EquivalenceResult {
    EquivStatus status = EquivStatus::none;
    std::optional<Roof> roof;

    bool found() const { return status == EquivStatus::found; }
};

/// Searches for a quasi-isomorphism X -> Y among F_p-combinations of the
/// derived hom basis, up to `budget` candidates. Exceeding the budget reports
/// `undecided`, never `none`.
EquivalenceResult find_equivalence(const Complex& x, const Complex& y, std::size_t budget = 1u << 16);

/// Basis of strict chain maps X -> Y (no homotopy quotient, no replacement).
std::vector<ChainMap> strict_chain_map_basis(const Complex& x, const Complex& y);

}  // namespace qts
