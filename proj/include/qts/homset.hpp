#pragma once

#include "qts/complex.hpp"

namespace qts {

/// Hom_D(X, Y[n]) computed as chain maps out of a termwise-projective
/// replacement of X, modulo chain homotopy. The basis maps have source
/// `source_replacement` and target Y[n] itself.
struct HomBasis {
    std::size_t dim = 0;
    std::vector<ChainMap> basis;
    Complex source_replacement;
    ChainMap source_qiso;  // source_replacement -> X
};

HomBasis hom_homotopy_basis(const Complex& x, const Complex& y, int n);

/// The space of chain maps P -> T with its homotopy quotient, for P termwise
/// projective. Exposes coordinates so callers can compare homotopy classes and
/// extract explicit homotopy certificates.
class HomSpace {
public:
    static HomSpace build(Complex p, Complex t);

    std::size_t dim() const { return quotient_cols_.size(); }
    const Complex& source() const { return p_; }
    const Complex& target() const { return t_; }

    ChainMap quotient_basis_map(std::size_t i) const;
    std::vector<ChainMap> quotient_basis() const;

    struct Reduction {
        std::vector<u32> coords;            // w.r.t. the quotient basis
        std::map<int, RepMap> homotopy;     // g - sum coords_i b_i = dh + hd
    };

    /// Expresses a chain map g: P -> T in quotient coordinates. Total for
    /// valid chain maps.
    Reduction reduce(const ChainMap& g) const;

private:
    Complex p_, t_;
    // flat coordinates of the chain-map space; per-degree, per-vertex blocks
    struct Block {
        int degree;
        std::size_t offset;  // into the flat vector
        std::vector<std::size_t> vertex_offsets;
    };
    std::vector<Block> blocks_;
    std::size_t space_dim_ = 0;

    Matrix cycles_;                                       // columns: all chain maps
    Matrix boundaries_;                                   // columns: boundaries of homotopy basis
    std::vector<std::pair<int, RepMap>> homotopy_basis_;  // (degree, h_n: P_n -> T_{n+1})
    std::vector<std::size_t> quotient_cols_;              // columns of cycles_

    std::vector<u32> vectorize(const ChainMap& g) const;
    ChainMap devectorize(const std::vector<u32>& v) const;

    friend HomBasis hom_homotopy_basis(const Complex&, const Complex&, int);
};

}  // namespace qts
