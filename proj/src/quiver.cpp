#include "qts/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace qts {

std::shared_ptr<const Quiver> Quiver::validated(std::size_t vertices,
                                                std::vector<std::pair<std::size_t, std::size_t>> edges) {
    auto q = std::make_shared<Quiver>();
    q->vertex_count = vertices;
    for (auto [s, t] : edges)
        if (s >= vertices || t >= vertices)
            throw ValidationError("quiver: edge endpoint out of range");
    q->edges = std::move(edges);

    // Kahn's algorithm; failure to exhaust the vertices means a cycle.
    std::vector<std::size_t> indeg(vertices, 0);
    for (auto [s, t] : q->edges)
        ++indeg[t];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < vertices; ++v)
        if (indeg[v] == 0)
            ready.push(v);
    while (!ready.empty()) {
        std::size_t v = ready.top();
        ready.pop();
        q->topo_order.push_back(v);
        for (std::size_t e = 0; e < q->edges.size(); ++e)
            if (q->edges[e].first == v && --indeg[q->edges[e].second] == 0)
                ready.push(q->edges[e].second);
    }
    if (q->topo_order.size() != vertices)
        throw ValidationError("quiver: not acyclic");
    return q;
}

std::vector<Quiver::Path> Quiver::paths_from(std::size_t v) const {
    std::vector<Path> all;
    std::vector<Path> frontier{Path{v, v, {}}};
    while (!frontier.empty()) {
        all.insert(all.end(), frontier.begin(), frontier.end());
        std::vector<Path> next;
        for (const Path& path : frontier)
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (edges[e].first == path.to) {
                    Path ext = path;
                    ext.edge_seq.push_back(e);
                    ext.to = edges[e].second;
                    next.push_back(std::move(ext));
                }
        frontier = std::move(next);
    }
    return all;
}

Rep Rep::validated(QuiverPtr q, u32 p, std::vector<std::size_t> dims, std::vector<Matrix> edge_maps) {
    if (!q)
        throw ValidationError("rep: missing quiver");
    if (dims.size() != q->vertex_count)
        throw ValidationError("rep: dims size != vertex count");
    if (edge_maps.size() != q->edges.size())
        throw ValidationError("rep: edge map count != edge count");
    for (std::size_t e = 0; e < edge_maps.size(); ++e) {
        auto [s, t] = q->edges[e];
        if (edge_maps[e].rows() != dims[t] || edge_maps[e].cols() != dims[s])
            throw ValidationError("rep: edge map " + std::to_string(e) + " has wrong shape");
        if (edge_maps[e].modulus() != p)
            throw ValidationError("rep: edge map modulus mismatch");
    }
    Rep r;
    r.quiver = std::move(q);
    r.modulus = p;
    r.dims = std::move(dims);
    r.edge_maps = std::move(edge_maps);
    return r;
}

Rep Rep::zero(QuiverPtr q, u32 p) {
    std::vector<std::size_t> dims(q->vertex_count, 0);
    std::vector<Matrix> maps;
    for (std::size_t e = 0; e < q->edges.size(); ++e)
        maps.push_back(Matrix::zero(0, 0, p));
    return validated(std::move(q), p, std::move(dims), std::move(maps));
}

Rep Rep::simple(QuiverPtr q, u32 p, std::size_t vertex) {
    std::vector<std::size_t> dims(q->vertex_count, 0);
    dims.at(vertex) = 1;
    std::vector<Matrix> maps;
    for (auto [s, t] : q->edges)
        maps.push_back(Matrix::zero(dims[t], dims[s], p));
    return validated(std::move(q), p, std::move(dims), std::move(maps));
}

Rep Rep::projective(QuiverPtr q, u32 p, std::size_t vertex) {
    auto paths = q->paths_from(vertex);
    std::vector<std::size_t> dims(q->vertex_count, 0);
    // per-vertex basis index of each path, in enumeration order
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::size_t> path_pos(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        path_pos[i] = dims[paths[i].to]++;
        index[paths[i].edge_seq] = path_pos[i];
    }
    std::vector<Matrix> maps;
    for (std::size_t e = 0; e < q->edges.size(); ++e) {
        auto [s, t] = q->edges[e];
        Matrix m(dims[t], dims[s], p);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (paths[i].to != s)
                continue;
            auto ext = paths[i].edge_seq;
            ext.push_back(e);
            m.set(index.at(ext), path_pos[i], 1);
        }
        maps.push_back(std::move(m));
    }
    return validated(std::move(q), p, std::move(dims), std::move(maps));
}

Rep Rep::direct_sum(const Rep& a, const Rep& b) {
    if (!a.quiver->same_as(*b.quiver) || a.modulus != b.modulus)
        throw ValidationError("direct_sum: quiver or modulus mismatch");
    std::vector<std::size_t> dims(a.dims.size());
    for (std::size_t v = 0; v < dims.size(); ++v)
        dims[v] = a.dims[v] + b.dims[v];
    std::vector<Matrix> maps;
    for (std::size_t e = 0; e < a.edge_maps.size(); ++e)
        maps.push_back(Matrix::block_diag({a.edge_maps[e], b.edge_maps[e]}, a.modulus));
    return validated(a.quiver, a.modulus, std::move(dims), std::move(maps));
}

std::size_t Rep::total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

bool Rep::operator==(const Rep& other) const {
    return quiver->same_as(*other.quiver) && modulus == other.modulus && dims == other.dims &&
           edge_maps == other.edge_maps;
}

Matrix Rep::path_action(const Quiver::Path& path) const {
    Matrix act = Matrix::identity(dims[path.from], modulus);
    for (std::size_t e : path.edge_seq)
        act = edge_maps[e] * act;
    return act;
}

std::string Rep::str() const {
    std::ostringstream os;
    os << "dims(";
    for (std::size_t v = 0; v < dims.size(); ++v)
        os << (v ? "," : "") << dims[v];
    os << ")";
    return os.str();
}

RepMap RepMap::validated(Rep source, Rep target, std::vector<Matrix> components) {
    if (!source.quiver->same_as(*target.quiver) || source.modulus != target.modulus)
        throw ValidationError("repmap: quiver or modulus mismatch");
    if (components.size() != source.dims.size())
        throw ValidationError("repmap: component count != vertex count");
    for (std::size_t v = 0; v < components.size(); ++v)
        if (components[v].rows() != target.dims[v] || components[v].cols() != source.dims[v])
            throw ValidationError("repmap: component " + std::to_string(v) + " has wrong shape");
    const auto& q = *source.quiver;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [s, t] = q.edges[e];
        if (components[t] * source.edge_maps[e] != target.edge_maps[e] * components[s])
            throw ValidationError("repmap: square at edge " + std::to_string(e) + " does not commute");
    }
    RepMap f;
    f.source = std::move(source);
    f.target = std::move(target);
    f.components = std::move(components);
    return f;
}

RepMap RepMap::zero(const Rep& source, const Rep& target) {
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < source.dims.size(); ++v)
        comps.push_back(Matrix::zero(target.dims[v], source.dims[v], source.modulus));
    return validated(source, target, std::move(comps));
}

RepMap RepMap::identity(const Rep& rep) {
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < rep.dims.size(); ++v)
        comps.push_back(Matrix::identity(rep.dims[v], rep.modulus));
    return validated(rep, rep, std::move(comps));
}

bool RepMap::is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool RepMap::is_isomorphism() const {
    return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return m.is_invertible(); });
}

RepMap RepMap::compose_after(const RepMap& inner) const {
    if (!(inner.target == source))
        throw ValidationError("repmap compose: middle objects differ");
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < components.size(); ++v)
        comps.push_back(components[v] * inner.components[v]);
    return validated(inner.source, target, std::move(comps));
}

RepMap RepMap::operator+(const RepMap& rhs) const {
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < components.size(); ++v)
        comps.push_back(components[v] + rhs.components[v]);
    return validated(source, target, std::move(comps));
}

RepMap RepMap::operator-(const RepMap& rhs) const {
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < components.size(); ++v)
        comps.push_back(components[v] - rhs.components[v]);
    return validated(source, target, std::move(comps));
}

RepMap RepMap::scaled(u32 c) const {
    std::vector<Matrix> comps;
    for (const auto& m : components)
        comps.push_back(m.scaled(c));
    return validated(source, target, std::move(comps));
}

bool RepMap::operator==(const RepMap& other) const {
    return source == other.source && target == other.target && components == other.components;
}

namespace {

// Offsets of vec(f_v) inside the flat unknown vector of the hom system.
std::vector<std::size_t> hom_offsets(const Rep& m, const Rep& n) {
    std::vector<std::size_t> off(m.dims.size() + 1, 0);
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    return off;
}

}  // namespace

std::vector<RepMap> hom_rep_basis(const Rep& m, const Rep& n) {
    if (!m.quiver->same_as(*n.quiver) || m.modulus != n.modulus)
        throw ValidationError("hom_rep_basis: quiver or modulus mismatch");
    const u32 p = m.modulus;
    const auto& q = *m.quiver;
    auto off = hom_offsets(m, n);
    const std::size_t unknowns = off.back();

    std::size_t eqs = 0;
    for (auto [s, t] : q.edges)
        eqs += n.dims[t] * m.dims[s];
    Matrix sys(eqs, unknowns, p);
    std::size_t row = 0;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [s, t] = q.edges[e];
        const Matrix& ma = m.edge_maps[e];
        const Matrix& na = n.edge_maps[e];
        // equation (i, j): sum_k f_t(i,k) M_a(k,j) - sum_l N_a(i,l) f_s(l,j) = 0
        for (std::size_t i = 0; i < n.dims[t]; ++i)
            for (std::size_t j = 0; j < m.dims[s]; ++j, ++row) {
                for (std::size_t k = 0; k < m.dims[t]; ++k)
                    if (ma(k, j) != 0) {
                        std::size_t idx = off[t] + i * m.dims[t] + k;
                        sys.set(row, idx, (sys(row, idx) + ma(k, j)) % p);
                    }
                for (std::size_t l = 0; l < n.dims[s]; ++l)
                    if (na(i, l) != 0) {
                        std::size_t idx = off[s] + l * m.dims[s] + j;
                        sys.set(row, idx, (sys(row, idx) + p - na(i, l) % p) % p);
                    }
            }
    }

    Matrix ker = kernel_basis(sys);
    std::vector<RepMap> basis;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < m.dims.size(); ++v) {
            Matrix fv(n.dims[v], m.dims[v], p);
            for (std::size_t i = 0; i < n.dims[v]; ++i)
                for (std::size_t j = 0; j < m.dims[v]; ++j)
                    fv.set(i, j, ker(off[v] + i * m.dims[v] + j, c));
            comps.push_back(std::move(fv));
        }
        basis.push_back(RepMap::validated(m, n, std::move(comps)));
    }
    return basis;
}

RepKernelCokernel kernel_cokernel_rep(const RepMap& f) {
    const Rep& m = f.source;
    const Rep& n = f.target;
    const u32 p = f.modulus();
    const auto& q = *m.quiver;

    std::vector<Matrix> kbasis;
    std::vector<std::size_t> kdims;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        kbasis.push_back(kernel_basis(f.components[v]));
        kdims.push_back(kbasis.back().cols());
    }
    std::vector<Matrix> kedges;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [s, t] = q.edges[e];
        // M_a maps ker_s into ker_t; express in the chosen kernel bases
        auto sol = solve_linear(kbasis[t], m.edge_maps[e] * kbasis[s]);
        if (!sol)
            throw Error("kernel_cokernel_rep: kernel not edge-stable (broken invariant)");
        kedges.push_back(std::move(*sol));
    }
    Rep ker = Rep::validated(m.quiver, p, kdims, std::move(kedges));
    RepMap ker_incl = RepMap::validated(ker, m, std::move(kbasis));

    std::vector<CokernelData> cks;
    std::vector<std::size_t> cdims;
    for (std::size_t v = 0; v < n.dims.size(); ++v) {
        cks.push_back(cokernel(f.components[v]));
        cdims.push_back(cks.back().proj.rows());
    }
    std::vector<Matrix> cedges;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [s, t] = q.edges[e];
        cedges.push_back(cks[t].proj * n.edge_maps[e] * cks[s].section);
    }
    Rep coker = Rep::validated(n.quiver, p, cdims, std::move(cedges));
    std::vector<Matrix> cproj, csection;
    for (auto& ck : cks) {
        cproj.push_back(std::move(ck.proj));
        csection.push_back(std::move(ck.section));
    }
    RepMap coker_proj = RepMap::validated(n, coker, std::move(cproj));
    return RepKernelCokernel{std::move(ker), std::move(ker_incl), std::move(coker), std::move(coker_proj),
                             std::move(csection)};
}

namespace {

// Layout bookkeeping for P0(M) = sum_{v, c < dims[v]} P(v) and
// P1(M) = sum_{a: s->t, c < dims[s]} P(t); bases inside a summand are path bases.
struct ProjSummands {
    std::vector<Rep> projectives;                    // P(v) per vertex
    std::vector<std::vector<Quiver::Path>> paths;    // paths from v
    std::vector<std::vector<std::size_t>> path_pos;  // position of path i inside P(v)_{to}
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> path_index;  // edge_seq -> position

    ProjSummands(const QuiverPtr& quiver, u32 modulus) {
        const auto& q = *quiver;
        for (std::size_t v = 0; v < q.vertex_count; ++v) {
            projectives.push_back(Rep::projective(quiver, modulus, v));
            paths.push_back(q.paths_from(v));
            std::vector<std::size_t> per_vertex(q.vertex_count, 0);
            std::vector<std::size_t> pos;
            std::map<std::vector<std::size_t>, std::size_t> idx;
            for (const auto& path : paths.back()) {
                pos.push_back(per_vertex[path.to]++);
                idx[path.edge_seq] = pos.back();
            }
            path_pos.push_back(std::move(pos));
            path_index.push_back(std::move(idx));
        }
    }
};

}  // namespace

StandardResolution standard_resolution(const Rep& m) {
    const auto& q = *m.quiver;
    const u32 p = m.modulus;
    ProjSummands ps(m.quiver, p);

    auto append = [&](Rep& acc, const Rep& summand, std::vector<std::vector<std::size_t>>& starts) {
        std::vector<std::size_t> start(q.vertex_count);
        for (std::size_t w = 0; w < q.vertex_count; ++w)
            start[w] = acc.dims[w];
        starts.push_back(std::move(start));
        acc = Rep::direct_sum(acc, summand);
    };

    Rep p0 = Rep::zero(m.quiver, p);
    std::vector<std::vector<std::size_t>> p0_starts;  // per (v, copy) summand
    for (std::size_t v = 0; v < q.vertex_count; ++v)
        for (std::size_t c = 0; c < m.dims[v]; ++c)
            append(p0, ps.projectives[v], p0_starts);

    Rep p1 = Rep::zero(m.quiver, p);
    std::vector<std::vector<std::size_t>> p1_starts;  // per (edge, copy) summand
    for (std::size_t e = 0; e < q.edges.size(); ++e)
        for (std::size_t c = 0; c < m.dims[q.edges[e].first]; ++c)
            append(p1, ps.projectives[q.edges[e].second], p1_starts);

    auto p0_summand = [&](std::size_t v, std::size_t c) {
        std::size_t idx = 0;
        for (std::size_t u = 0; u < v; ++u)
            idx += m.dims[u];
        return idx + c;
    };

    // augmentation: basis vector (v, copy c, path q: v->w) maps to M_q(e_c)
    std::vector<Matrix> aug_comps;
    for (std::size_t w = 0; w < q.vertex_count; ++w)
        aug_comps.push_back(Matrix::zero(m.dims[w], p0.dims[w], p));
    for (std::size_t v = 0; v < q.vertex_count; ++v)
        for (std::size_t c = 0; c < m.dims[v]; ++c) {
            const auto& start = p0_starts[p0_summand(v, c)];
            for (std::size_t i = 0; i < ps.paths[v].size(); ++i) {
                const auto& path = ps.paths[v][i];
                Matrix act = m.path_action(path);
                for (std::size_t r = 0; r < m.dims[path.to]; ++r)
                    aug_comps[path.to].set(r, start[path.to] + ps.path_pos[v][i], act(r, c));
            }
        }
    RepMap aug = RepMap::validated(p0, m, std::move(aug_comps));

    // differential: (a: s->t, copy c, path q: t->w) maps to
    //   (path q.a in the (s, c) summand) - sum_l M_a(l, c) (path q in the (t, l) summand)
    std::vector<Matrix> d_comps;
    for (std::size_t w = 0; w < q.vertex_count; ++w)
        d_comps.push_back(Matrix::zero(p0.dims[w], p1.dims[w], p));
    std::size_t summand = 0;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [s, t] = q.edges[e];
        const Matrix& ma = m.edge_maps[e];
        for (std::size_t c = 0; c < m.dims[s]; ++c, ++summand) {
            const auto& start = p1_starts[summand];
            for (std::size_t i = 0; i < ps.paths[t].size(); ++i) {
                const auto& path = ps.paths[t][i];
                std::size_t col = start[path.to] + ps.path_pos[t][i];
                std::vector<std::size_t> extended{e};
                extended.insert(extended.end(), path.edge_seq.begin(), path.edge_seq.end());
                std::size_t row_sc = p0_starts[p0_summand(s, c)][path.to] + ps.path_index[s].at(extended);
                d_comps[path.to].set(row_sc, col, (d_comps[path.to](row_sc, col) + 1) % p);
                for (std::size_t l = 0; l < m.dims[t]; ++l) {
                    u32 coeff = ma(l, c);
                    if (coeff == 0)
                        continue;
                    std::size_t row_tl = p0_starts[p0_summand(t, l)][path.to] + ps.path_pos[t][i];
                    u32 cur = d_comps[path.to](row_tl, col);
                    d_comps[path.to].set(row_tl, col, (cur + p - coeff) % p);
                }
            }
        }
    }
    RepMap d = RepMap::validated(p1, p0, std::move(d_comps));
    return StandardResolution{std::move(p1), std::move(p0), std::move(d), std::move(aug)};
}

RepMap resolution_p0_map(const RepMap& f) {
    const Rep& m = f.source;
    const Rep& n = f.target;
    const auto& q = *m.quiver;
    const u32 p = f.modulus();
    auto rm = standard_resolution(m);
    auto rn = standard_resolution(n);
    ProjSummands ps(m.quiver, p);

    // block (v, copy l of N) x (v, copy c of M) = f_v(l, c) * I_{P(v)}
    std::vector<Matrix> comps;
    for (std::size_t w = 0; w < q.vertex_count; ++w) {
        Matrix mw(rn.p0.dims[w], rm.p0.dims[w], p);
        std::size_t col_off = 0, row_base = 0;
        for (std::size_t v = 0; v < q.vertex_count; ++v) {
            std::size_t pv = ps.projectives[v].dims[w];
            for (std::size_t c = 0; c < m.dims[v]; ++c) {
                for (std::size_t l = 0; l < n.dims[v]; ++l) {
                    u32 coeff = f.components[v](l, c);
                    if (coeff == 0)
                        continue;
                    std::size_t row_off = row_base + l * pv;
                    for (std::size_t i = 0; i < pv; ++i)
                        mw.set(row_off + i, col_off + i, coeff);
                }
                col_off += pv;
            }
            row_base += n.dims[v] * pv;
        }
        comps.push_back(std::move(mw));
    }
    return RepMap::validated(rm.p0, rn.p0, std::move(comps));
}

RepMap resolution_p1_map(const RepMap& f) {
    const Rep& m = f.source;
    const Rep& n = f.target;
    const auto& q = *m.quiver;
    const u32 p = f.modulus();
    auto rm = standard_resolution(m);
    auto rn = standard_resolution(n);
    ProjSummands ps(m.quiver, p);

    std::vector<Matrix> comps;
    for (std::size_t w = 0; w < q.vertex_count; ++w) {
        Matrix mw(rn.p1.dims[w], rm.p1.dims[w], p);
        std::size_t col_off = 0;
        for (std::size_t e = 0; e < q.edges.size(); ++e) {
            auto [s, t] = q.edges[e];
            std::size_t pt = ps.projectives[t].dims[w];
            std::size_t row_base = 0;
            for (std::size_t e2 = 0; e2 < e; ++e2)
                row_base += n.dims[q.edges[e2].first] * ps.projectives[q.edges[e2].second].dims[w];
            for (std::size_t c = 0; c < m.dims[s]; ++c) {
                for (std::size_t l = 0; l < n.dims[s]; ++l) {
                    u32 coeff = f.components[s](l, c);
                    if (coeff == 0)
                        continue;
                    std::size_t row_off = row_base + l * pt;
                    for (std::size_t i = 0; i < pt; ++i)
                        mw.set(row_off + i, col_off + i, coeff);
                }
                col_off += pt;
            }
        }
        comps.push_back(std::move(mw));
    }
    return RepMap::validated(rm.p1, rn.p1, std::move(comps));
}

bool reps_isomorphic(const Rep& a, const Rep& b, std::size_t budget) {
    if (a.dims != b.dims)
        return false;
    if (a.total_dim() == 0)
        return true;
    auto basis = hom_rep_basis(a, b);
    if (basis.empty())
        return false;
    const u32 p = a.modulus;

    std::vector<u32> digits(basis.size(), 0);
    std::size_t tried = 0;
    while (tried < budget) {
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == p - 1)
            digits[i++] = 0;
        if (i == digits.size())
            break;
        ++digits[i];
        ++tried;

        RepMap candidate = RepMap::zero(a, b);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (digits[k] != 0)
                candidate = candidate + basis[k].scaled(digits[k]);
        if (candidate.is_isomorphism())
            return true;
    }
    return false;
}

}  // namespace qts
