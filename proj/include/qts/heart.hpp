#pragma once

#include "qts/tstruct.hpp"

namespace qts {

/// Heart objects: homology concentrated in degree 0.
bool is_heart_object(const Complex& x);

/// Kernel/cokernel/image/coimage package of a morphism between heart objects,
/// with the middle object Z_f of the factorization diagram and equivalence
/// witnesses for im = Z_f = coim.
struct HeartAnalysis {
    ChainMap f;
    Complex ker, coker, im, coim, zf;
    ChainMap k_f;  // ker -> X
    ChainMap c_f;  // Y -> coker
    EquivalenceResult witness_im_coim;
    EquivalenceResult witness_im_zf;
    EquivalenceResult witness_coim_zf;
    bool all_heart = false;  // the five derived objects all lie in the heart
};

/// ker = tau_{>=0} fib(f), coker = tau_{<1} cofib(f), Z_f by pushout of
/// fib(f) -> X along fib(f) -> coker(f)[-1], im = ker(c_f), coim = coker(k_f).
/// Throws ValidationError unless both endpoints are heart objects.
HeartAnalysis heart_analysis(const ChainMap& f);

/// dims[n] = dim Hom_D(X, Y[-n]) for 0 <= n <= max_n; hearts are homotopy
/// discrete, so everything above n = 0 must vanish.
struct DiscretenessReport {
    std::map<int, std::size_t> dims;
    bool discrete = false;
};

DiscretenessReport hom_discreteness_report(const Complex& x, const Complex& y, int max_n = 2);

/// Every probe K -> X with f o probe null-homotopic factors through k_f,
/// uniquely up to homotopy (the pullback property of the kernel).
bool universal_property_check(const HeartAnalysis& analysis, const std::vector<ChainMap>& probes);

struct HeartReconstruction {
    bool in_geq0 = false;
    bool in_lt0 = false;
    std::size_t a_length = 0;
    Tower tower;
};

/// Reads aisle membership and heart-length off the Z-Postnikov tower of
/// 0 -> X, reconstructing the t-structure from its heart.
HeartReconstruction reconstruct_tstructure_from_heart(const Complex& x);

}  // namespace qts
