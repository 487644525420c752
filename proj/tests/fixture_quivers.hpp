#pragma once

// Shared desk-scale fixtures: the A2 and A3 quivers over F_2 and their
// standard indecomposables, named as in the bundled workspaces.

#include "qts/quiver.hpp"

namespace qts::fixtures {

inline QuiverPtr a2() { return Quiver::validated(2, {{0, 1}}); }

inline QuiverPtr a3() { return Quiver::validated(3, {{0, 1}, {1, 2}}); }

// A2: P1 = (k -> k), P2 = S2 = (0, k), S1 = (k, 0)
inline Rep a2_p1(QuiverPtr q, u32 p = 2) {
    return Rep::validated(q, p, {1, 1}, {Matrix::identity(1, p)});
}
inline Rep a2_p2(QuiverPtr q, u32 p = 2) { return Rep::simple(std::move(q), p, 1); }
inline Rep a2_s1(QuiverPtr q, u32 p = 2) { return Rep::simple(std::move(q), p, 0); }

inline RepMap a2_incl_p2_p1(const QuiverPtr& q, u32 p = 2) {
    Rep p2 = a2_p2(q, p), p1 = a2_p1(q, p);
    return RepMap::validated(p2, p1, {Matrix::zero(1, 0, p), Matrix::identity(1, p)});
}

}  // namespace qts::fixtures
