#pragma once

#include <functional>

#include "qts/tstruct.hpp"

namespace qts {

/// Ordered blocks E_1, ..., E_m of one exceptional generator each, with the
/// endomorphism and semiorthogonality certificates computed over the finite
/// shift range of the supports (one degree of margin on each side).
struct ExceptionalCollection {
    std::vector<Complex> blocks;
    bool verified = false;
    std::string report;
};

ExceptionalCollection check_exceptional_collection(std::vector<Complex> blocks);

/// Evaluation-map coreflection onto thick(E): W = sum_n Hom_D(E[n], Y) x E[n]
/// with the counit W -> Y given by the basis maps themselves.
struct Coreflection {
    Complex w;
    ChainMap counit;
    std::vector<int> summand_shifts;  // shift of each summand, in order
};

Coreflection block_coreflection(const Complex& e, const Complex& y);

/// Membership certificate for thick(E): the evaluation map is a quasi-iso.
bool in_thick_closure(const Complex& e, const Complex& x);

/// 0 = T_0 -> T_1 -> ... -> T_{m-1} -> Y with cofib(maps[j]) in
/// thick(blocks[m-1-j]); maps.size() == blocks.size(). Certificates are
/// re-verified post hoc; a failure throws CertificateError.
struct WeavedTower {
    Complex target;
    std::vector<Complex> stages;  // T_1, ..., T_{m-1}
    std::vector<ChainMap> maps;
    std::vector<std::size_t> block_of_map;
    std::vector<bool> cert_ok;

    bool all_certified() const;
};

/// Peels blocks from the last to the first through evaluation coreflections
/// and pulls the partial towers back.
WeavedTower weaved_tower(const Complex& y, const ExceptionalCollection& coll);

/// Independent route: peels blocks from the first to the last through
/// coevaluation fibers. Stage-wise equivalent to weaved_tower.
WeavedTower weaved_tower_dual(const Complex& y, const ExceptionalCollection& coll);

/// The Delta_{k-1}-family of t-structures induced by the collection:
/// aisle j is generated by the blocks above j, so membership reads off the
/// vanishing of the lower tower cofibers.
struct AisleFamily {
    ExceptionalCollection coll;
    std::size_t classes = 0;  // = blocks - 1

    bool in_aisle(std::size_t j, const Complex& y) const;    // C_{>= i_j}, 1-based j
    bool in_coaisle(std::size_t j, const Complex& y) const;  // C_{< i_j}
};

AisleFamily sod_to_tfamily(const ExceptionalCollection& coll);

/// Abstract aisle/co-aisle predicates fed to the fixed-point circuit.
struct TPredicates {
    std::string name;
    std::function<bool(const Complex&)> in_aisle;
    std::function<bool(const Complex&)> in_coaisle;
};

struct FixedPointSamples {
    std::vector<Complex> objects;
    std::vector<ChainMap> maps;
};

/// The four equivalent conditions of the fixed-point theorem, evaluated on
/// samples: aisle closed under both shifts, aisle closed under pushout,
/// E-maps (cofiber in the aisle) closed under pullback, and M-maps (fiber in
/// the co-aisle) closed under pushout.
struct FixedPointReport {
    bool shifts_ok = true;
    bool pushout_ok = true;
    bool e_pullback_ok = true;
    bool m_pushout_ok = true;
    std::string counterexample;

    bool all_ok() const { return shifts_ok && pushout_ok && e_pullback_ok && m_pushout_ok; }
};

FixedPointReport fixed_point_checks(const TPredicates& t, const FixedPointSamples& samples);

/// Reflection of Y onto the co-aisle of the single-class decomposition
/// generated by E: L(Y) = cofib(R_E(Y) -> Y), with its unit Y -> L(Y).
struct CoaisleReflection {
    Complex ly;
    ChainMap unit;
};

CoaisleReflection coaisle_reflection(const Complex& e, const Complex& y);

/// Functorial action of the reflection: L(f): L(X) -> L(Z) for f: X -> Z,
/// built from coordinates of the coreflection and an explicit homotopy.
ChainMap coaisle_reflection_map(const Complex& e, const ChainMap& f);

}  // namespace qts
