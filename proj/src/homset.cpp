#include "qts/homset.hpp"

#include <algorithm>

namespace qts {

namespace {

// Flat coordinates for the space of degreewise rep morphisms source -> target,
// together with the linear system cutting out chain maps (chain law at every
// degree plus the edge-commuting law inside every degree).
struct ChainMapSystem {
    const Complex& src;
    const Complex& tgt;
    struct Block {
        int degree;
        std::size_t offset;
        std::vector<std::size_t> vertex_offsets;  // size V+1, relative to offset
    };
    std::vector<Block> blocks;
    std::size_t dim = 0;
    Matrix system;

    ChainMapSystem(const Complex& s, const Complex& t) : src(s), tgt(t), system(0, 0, s.modulus) {
        const auto& q = *src.quiver;
        for (const auto& [n, sterm] : src.terms) {
            Rep tterm = tgt.term_at(n);
            if (tterm.total_dim() == 0)
                continue;
            Block b;
            b.degree = n;
            b.offset = dim;
            b.vertex_offsets.assign(q.vertex_count + 1, 0);
            for (std::size_t v = 0; v < q.vertex_count; ++v)
                b.vertex_offsets[v + 1] = b.vertex_offsets[v] + tterm.dims[v] * sterm.dims[v];
            dim += b.vertex_offsets.back();
            blocks.push_back(std::move(b));
        }

        std::size_t rows = 0;
        int lo = src.is_zero_object() ? 1 : src.min_degree();
        int hi = src.is_zero_object() ? 0 : src.max_degree();
        for (int n = lo; n <= hi + 1; ++n) {
            Rep sn = src.term_at(n), tn1 = tgt.term_at(n - 1);
            for (std::size_t v = 0; v < q.vertex_count; ++v)
                rows += tn1.dims[v] * sn.dims[v];
        }
        for (const auto& b : blocks) {
            Rep sn = src.term_at(b.degree), tn = tgt.term_at(b.degree);
            for (auto [es, et] : q.edges)
                rows += tn.dims[et] * sn.dims[es];
        }

        system = Matrix(rows, dim, src.modulus);
        const u32 p = src.modulus;
        std::size_t row = 0;
        auto block_of = [&](int degree) -> const Block* {
            for (const auto& b : blocks)
                if (b.degree == degree)
                    return &b;
            return nullptr;
        };
        auto bump = [&](std::size_t r, std::size_t c, u32 add) {
            system.set(r, c, (system(r, c) + add) % p);
        };

        // chain law at n: f_{n-1} d^P_n - d^T_n f_n = 0 in Hom(P_n, T_{n-1})
        for (int n = lo; n <= hi + 1; ++n) {
            Rep sn = src.term_at(n), tn1 = tgt.term_at(n - 1);
            RepMap dp = src.diff_at(n);
            RepMap dt = tgt.diff_at(n);
            const Block* below = block_of(n - 1);
            const Block* here = block_of(n);
            for (std::size_t v = 0; v < q.vertex_count; ++v) {
                std::size_t sv = sn.dims[v], tv = tn1.dims[v];
                std::size_t sv1 = src.term_at(n - 1).dims[v];
                std::size_t tv0 = tgt.term_at(n).dims[v];
                for (std::size_t i = 0; i < tv; ++i)
                    for (std::size_t j = 0; j < sv; ++j, ++row) {
                        if (below)
                            for (std::size_t k = 0; k < sv1; ++k) {
                                u32 coeff = dp.components[v](k, j);
                                if (coeff)
                                    bump(row, below->offset + below->vertex_offsets[v] + i * sv1 + k, coeff);
                            }
                        if (here)
                            for (std::size_t l = 0; l < tv0; ++l) {
                                u32 coeff = dt.components[v](i, l);
                                if (coeff)
                                    bump(row, here->offset + here->vertex_offsets[v] + l * sv + j, p - coeff);
                            }
                    }
            }
        }
        // edge law inside each block
        for (const auto& b : blocks) {
            Rep sn = src.term_at(b.degree), tn = tgt.term_at(b.degree);
            for (std::size_t e = 0; e < q.edges.size(); ++e) {
                auto [es, et] = q.edges[e];
                const Matrix& pe = sn.edge_maps[e];
                const Matrix& te = tn.edge_maps[e];
                for (std::size_t i = 0; i < tn.dims[et]; ++i)
                    for (std::size_t j = 0; j < sn.dims[es]; ++j, ++row) {
                        for (std::size_t k = 0; k < sn.dims[et]; ++k) {
                            u32 coeff = pe(k, j);
                            if (coeff)
                                bump(row, b.offset + b.vertex_offsets[et] + i * sn.dims[et] + k, coeff);
                        }
                        for (std::size_t l = 0; l < tn.dims[es]; ++l) {
                            u32 coeff = te(i, l);
                            if (coeff)
                                bump(row, b.offset + b.vertex_offsets[es] + l * sn.dims[es] + j, p - coeff);
                        }
                    }
            }
        }
    }

    std::vector<u32> vectorize(const ChainMap& g) const {
        std::vector<u32> v(dim, 0);
        for (const auto& b : blocks) {
            RepMap comp = g.component_at(b.degree);
            for (std::size_t vert = 0; vert < comp.components.size(); ++vert) {
                const Matrix& m = comp.components[vert];
                std::size_t at = b.offset + b.vertex_offsets[vert];
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        v[at + i * m.cols() + j] = m(i, j);
            }
        }
        return v;
    }

    ChainMap devectorize(const std::vector<u32>& v) const {
        std::map<int, RepMap> comps;
        for (const auto& b : blocks) {
            Rep sn = src.term_at(b.degree), tn = tgt.term_at(b.degree);
            std::vector<Matrix> mats;
            for (std::size_t vert = 0; vert < sn.dims.size(); ++vert) {
                Matrix m(tn.dims[vert], sn.dims[vert], src.modulus);
                std::size_t at = b.offset + b.vertex_offsets[vert];
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        m.set(i, j, v[at + i * m.cols() + j]);
                mats.push_back(std::move(m));
            }
            comps.emplace(b.degree, RepMap::validated(sn, tn, std::move(mats)));
        }
        return ChainMap::validated(src, tgt, std::move(comps));
    }
};

std::vector<u32> matrix_column(const Matrix& m, std::size_t c) {
    std::vector<u32> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        v[i] = m(i, c);
    return v;
}

}  // namespace

std::vector<ChainMap> strict_chain_map_basis(const Complex& x, const Complex& y) {
    ChainMapSystem sys(x, y);
    Matrix cycles = kernel_basis(sys.system);
    std::vector<ChainMap> basis;
    for (std::size_t c = 0; c < cycles.cols(); ++c)
        basis.push_back(sys.devectorize(matrix_column(cycles, c)));
    return basis;
}

HomSpace HomSpace::build(Complex p, Complex t) {
    HomSpace h;
    h.p_ = std::move(p);
    h.t_ = std::move(t);
    ChainMapSystem sys(h.p_, h.t_);
    for (const auto& b : sys.blocks)
        h.blocks_.push_back(Block{b.degree, b.offset, b.vertex_offsets});
    h.space_dim_ = sys.dim;
    h.cycles_ = kernel_basis(sys.system);

    // homotopies: arbitrary degreewise rep morphisms P_n -> T_{n+1}
    for (const auto& [n, sterm] : h.p_.terms) {
        Rep up = h.t_.term_at(n + 1);
        if (up.total_dim() == 0)
            continue;
        for (auto& phi : hom_rep_basis(sterm, up))
            h.homotopy_basis_.emplace_back(n, std::move(phi));
    }
    h.boundaries_ = Matrix(h.space_dim_, h.homotopy_basis_.size(), h.p_.modulus);
    for (std::size_t k = 0; k < h.homotopy_basis_.size(); ++k) {
        auto [n, phi] = h.homotopy_basis_[k];
        // boundary of a one-degree homotopy: (dh + hd)_n = d^T_{n+1} phi,
        // (dh + hd)_{n+1} = phi d^P_{n+1}
        std::map<int, RepMap> comps;
        RepMap lower = h.t_.diff_at(n + 1).compose_after(phi);
        if (!lower.is_zero())
            comps.emplace(n, lower);
        RepMap upper = phi.compose_after(h.p_.diff_at(n + 1));
        if (!upper.is_zero())
            comps.emplace(n + 1, upper);
        ChainMap boundary = ChainMap::validated(h.p_, h.t_, std::move(comps));
        auto vec = sys.vectorize(boundary);
        for (std::size_t i = 0; i < vec.size(); ++i)
            h.boundaries_.set(i, k, vec[i]);
    }

    // quotient representatives: pivots of [boundaries | cycles] inside the
    // cycle block pick the basis of chain maps modulo homotopy
    Matrix both = Matrix::hstack({h.boundaries_, h.cycles_}, h.space_dim_, h.p_.modulus);
    RrefResult rr = rref_with_pivots(both);
    for (std::size_t c : rr.pivot_cols)
        if (c >= h.boundaries_.cols())
            h.quotient_cols_.push_back(c - h.boundaries_.cols());
    return h;
}

std::vector<u32> HomSpace::vectorize(const ChainMap& g) const {
    ChainMapSystem sys(p_, t_);
    return sys.vectorize(g);
}

ChainMap HomSpace::devectorize(const std::vector<u32>& v) const {
    ChainMapSystem sys(p_, t_);
    return sys.devectorize(v);
}

ChainMap HomSpace::quotient_basis_map(std::size_t i) const {
    return devectorize(matrix_column(cycles_, quotient_cols_.at(i)));
}

std::vector<ChainMap> HomSpace::quotient_basis() const {
    std::vector<ChainMap> basis;
    for (std::size_t i = 0; i < dim(); ++i)
        basis.push_back(quotient_basis_map(i));
    return basis;
}

HomSpace::Reduction HomSpace::reduce(const ChainMap& g) const {
    const u32 p = p_.modulus;
    auto v = vectorize(g);
    Matrix rhs(space_dim_, 1, p);
    for (std::size_t i = 0; i < v.size(); ++i)
        rhs.set(i, 0, v[i]);
    Matrix reps = cycles_.select_columns(quotient_cols_);
    Matrix m = Matrix::hstack({boundaries_, reps}, space_dim_, p);
    auto sol = solve_linear(m, rhs);
    if (!sol)
        throw Error("HomSpace::reduce: input is not a chain map in this space");
    Reduction red;
    red.coords.resize(quotient_cols_.size());
    for (std::size_t i = 0; i < quotient_cols_.size(); ++i)
        red.coords[i] = (*sol)(boundaries_.cols() + i, 0);
    for (std::size_t k = 0; k < homotopy_basis_.size(); ++k) {
        u32 c = (*sol)(k, 0);
        if (c == 0)
            continue;
        auto [n, phi] = homotopy_basis_[k];
        RepMap scaled = phi.scaled(c);
        auto it = red.homotopy.find(n);
        if (it == red.homotopy.end())
            red.homotopy.emplace(n, scaled);
        else
            it->second = it->second + scaled;
    }
    return red;
}

HomBasis hom_homotopy_basis(const Complex& x, const Complex& y, int n) {
    auto pr = projective_replacement(x);
    HomSpace hs = HomSpace::build(pr.p, shift(y, n));
    HomBasis hb;
    hb.dim = hs.dim();
    hb.basis = hs.quotient_basis();
    hb.source_replacement = pr.p;
    hb.source_qiso = pr.qiso;
    return hb;
}

}  // namespace qts
