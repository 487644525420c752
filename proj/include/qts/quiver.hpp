#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "qts/fp.hpp"

namespace qts {

/// Finite acyclic quiver. Vertices are 0..vertex_count-1; edges keep their
/// input order, which fixes the ordering of edge map arrays everywhere.
struct Quiver {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> topo_order;  // filled by validated()

    /// Validates shapes and acyclicity (throws ValidationError on a cycle).
    static std::shared_ptr<const Quiver> validated(std::size_t vertices,
                                                   std::vector<std::pair<std::size_t, std::size_t>> edges);

    bool same_as(const Quiver& other) const {
        return vertex_count == other.vertex_count && edges == other.edges;
    }

    /// A path v -> w as an edge sequence (empty = the lazy path at a vertex).
    struct Path {
        std::size_t from, to;
        std::vector<std::size_t> edge_seq;
    };

    /// All paths starting at v, ordered by length then lexicographically by
    /// edge index. Finite because the quiver is acyclic; the order is the
    /// basis order of the projective representation at v.
    std::vector<Path> paths_from(std::size_t v) const;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

/// Finite-dimensional representation: a vector space per vertex and a matrix
/// per edge acting source -> target (column-vector convention, so the edge
/// matrix has shape dims[target] x dims[source]).
struct Rep {
    QuiverPtr quiver;
    u32 modulus = 2;
    std::vector<std::size_t> dims;
    std::vector<Matrix> edge_maps;

    static Rep validated(QuiverPtr q, u32 p, std::vector<std::size_t> dims, std::vector<Matrix> edge_maps);
    static Rep zero(QuiverPtr q, u32 p);
    static Rep simple(QuiverPtr q, u32 p, std::size_t vertex);
    /// The projective at v: basis of paths out of v, edges act by path extension.
    static Rep projective(QuiverPtr q, u32 p, std::size_t vertex);
    static Rep direct_sum(const Rep& a, const Rep& b);

    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    bool operator==(const Rep& other) const;

    /// Composite of edge maps along a path (identity for the lazy path).
    Matrix path_action(const Quiver::Path& path) const;

    std::string str() const;
};

/// Morphism of representations; per-vertex components commuting with all edge maps.
struct RepMap {
    Rep source, target;
    std::vector<Matrix> components;

    static RepMap validated(Rep source, Rep target, std::vector<Matrix> components);
    static RepMap zero(const Rep& source, const Rep& target);
    static RepMap identity(const Rep& rep);

    bool is_zero() const;
    bool is_isomorphism() const;

    RepMap compose_after(const RepMap& inner) const;  // this o inner
    RepMap operator+(const RepMap& rhs) const;
    RepMap operator-(const RepMap& rhs) const;
    RepMap scaled(u32 c) const;
    RepMap negated() const { return scaled(modulus() - 1); }

    u32 modulus() const { return source.modulus; }
    bool operator==(const RepMap& other) const;
};

/// Basis of Hom(M, N) as the kernel of the commuting-square system.
std::vector<RepMap> hom_rep_basis(const Rep& m, const Rep& n);

struct RepKernelCokernel {
    Rep ker;
    RepMap ker_incl;  // ker -> source
    Rep coker;
    RepMap coker_proj;  // target -> coker
    // Vertex-wise right inverses of coker_proj. These are plain linear
    // sections, not a morphism of representations, so they stay raw matrices.
    std::vector<Matrix> coker_sections;
};

/// Vertex-wise kernels and cokernels with induced edge maps.
RepKernelCokernel kernel_cokernel_rep(const RepMap& f);

/// The standard two-term projective resolution 0 -> P1 -> P0 -> M -> 0 with
/// P0 = sum_v P(v)^{dims[v]} and P1 = sum_{a: s->t} P(t)^{dims[s]}.
struct StandardResolution {
    Rep p1, p0;
    RepMap d;    // P1 -> P0
    RepMap aug;  // P0 -> M
};

StandardResolution standard_resolution(const Rep& m);

/// Functorial action of the resolution on morphisms; used to lift complex
/// differentials to the projective replacement.
RepMap resolution_p0_map(const RepMap& f);
RepMap resolution_p1_map(const RepMap& f);

/// Searches for an isomorphism among F_p-combinations of hom_rep_basis(a, b).
/// Returns false when dims differ or no combination within budget works.
bool reps_isomorphic(const Rep& a, const Rep& b, std::size_t budget = 1u << 16);

}  // namespace qts
