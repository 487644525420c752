#include "qts/tstruct.hpp"

#include <algorithm>

namespace qts {

std::string Window::str() const {
    std::string a = lo ? std::to_string(*lo) : "-inf";
    std::string b = hi ? std::to_string(*hi) : "+inf";
    return "[" + a + "," + b + ")";
}

bool window_membership(const Complex& x, const Window& w) {
    for (int n : homology_support(x))
        if (!w.contains(n))
            return false;
    return true;
}

namespace {

// Kernel-side data of the degree-n cut: ker(d_n) with its inclusion, and the
// quotient X_n/ker(d_n) with projection and linear sections.
struct Cut {
    Rep kernel;
    RepMap kappa;  // kernel -> X_n
    Rep quotient;
    RepMap q;  // X_n -> quotient
    std::vector<Matrix> sections;
};

Cut make_cut(const Complex& x, int n) {
    auto kc = kernel_cokernel_rep(x.diff_at(n));
    auto qc = kernel_cokernel_rep(kc.ker_incl);
    return Cut{kc.ker, kc.ker_incl, qc.coker, qc.coker_proj, qc.coker_sections};
}

Complex build_tau_geq(const Complex& x, int n, const Cut& cut) {
    std::map<int, Rep> terms;
    std::map<int, RepMap> diffs;
    if (cut.kernel.total_dim() > 0)
        terms.emplace(n, cut.kernel);
    for (const auto& [k, rep] : x.terms)
        if (k > n)
            terms.emplace(k, rep);
    for (const auto& [k, d] : x.diffs)
        if (k > n + 1)
            diffs.emplace(k, d);
    // lift d_{n+1} through ker(d_n)
    if (terms.count(n) && terms.count(n + 1)) {
        RepMap dup = x.diff_at(n + 1);
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
            auto sol = solve_linear(cut.kappa.components[v], dup.components[v]);
            if (!sol)
                throw Error("truncate: d_{n+1} does not land in ker(d_n)?");
            comps.push_back(std::move(*sol));
        }
        diffs.emplace(n + 1, RepMap::validated(x.term_at(n + 1), cut.kernel, std::move(comps)));
    }
    return Complex::validated(x.quiver, x.modulus, std::move(terms), std::move(diffs));
}

Complex build_tau_lt(const Complex& x, int n, const Cut& cut) {
    std::map<int, Rep> terms;
    std::map<int, RepMap> diffs;
    if (cut.quotient.total_dim() > 0)
        terms.emplace(n, cut.quotient);
    for (const auto& [k, rep] : x.terms)
        if (k < n)
            terms.emplace(k, rep);
    for (const auto& [k, d] : x.diffs)
        if (k < n)
            diffs.emplace(k, d);
    // induced differential quotient -> X_{n-1}: dbar = d_n o section
    if (terms.count(n) && terms.count(n - 1)) {
        RepMap dn = x.diff_at(n);
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v)
            comps.push_back(dn.components[v] * cut.sections[v]);
        diffs.emplace(n, RepMap::validated(cut.quotient, x.term_at(n - 1), std::move(comps)));
    }
    return Complex::validated(x.quiver, x.modulus, std::move(terms), std::move(diffs));
}

ChainMap build_incl(const Complex& tau_geq, const Complex& x, int n, const Cut& cut) {
    std::map<int, RepMap> comps;
    for (const auto& [k, rep] : tau_geq.terms) {
        if (k > n)
            comps.emplace(k, RepMap::identity(rep));
        else
            comps.emplace(k, cut.kappa);
    }
    return ChainMap::validated(tau_geq, x, std::move(comps));
}

ChainMap build_proj(const Complex& x, const Complex& tau_lt, int n, const Cut& cut) {
    std::map<int, RepMap> comps;
    for (const auto& [k, rep] : x.terms) {
        if (k < n)
            comps.emplace(k, RepMap::identity(rep));
        else if (k == n && cut.quotient.total_dim() > 0)
            comps.emplace(k, cut.q);
    }
    return ChainMap::validated(x, tau_lt, std::move(comps));
}

}  // namespace

Truncation truncate(const Complex& x, int n) {
    Cut cut = make_cut(x, n);
    Truncation t;
    t.tau_geq = build_tau_geq(x, n, cut);
    t.tau_lt = build_tau_lt(x, n, cut);
    t.incl = build_incl(t.tau_geq, x, n, cut);
    t.proj = build_proj(x, t.tau_lt, n, cut);

    // certify the triangle: cone(incl) -> tau_lt, (a, x) |-> proj(x)
    Complex cone = make_cone(t.incl);
    std::map<int, RepMap> cmp;
    for (const auto& [k, cterm] : cone.terms) {
        Rep lt = t.tau_lt.term_at(k);
        if (lt.total_dim() == 0)
            continue;
        Rep upper = t.tau_geq.term_at(k - 1);
        RepMap pk = t.proj.component_at(k);
        std::vector<Matrix> mats;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
            Matrix zero_part = Matrix::zero(lt.dims[v], upper.dims[v], x.modulus);
            mats.push_back(Matrix::hstack({zero_part, pk.components[v]}, lt.dims[v], x.modulus));
        }
        cmp.emplace(k, RepMap::validated(cterm, lt, std::move(mats)));
    }
    ChainMap compare = ChainMap::validated(cone, t.tau_lt, std::move(cmp));
    t.triangle_ok = is_quasi_iso(compare);
    return t;
}

ChainMap truncate_lt_map(const ChainMap& f, int n) {
    Cut cx = make_cut(f.source, n);
    Cut cy = make_cut(f.target, n);
    Complex sx = build_tau_lt(f.source, n, cx);
    Complex sy = build_tau_lt(f.target, n, cy);
    std::map<int, RepMap> comps;
    for (const auto& [k, rep] : sx.terms) {
        if (sy.term_at(k).total_dim() == 0)
            continue;
        if (k < n) {
            comps.emplace(k, f.component_at(k));
        } else {
            // induced map on quotients: q_Y o f_n o section_X
            RepMap fn = f.component_at(n);
            std::vector<Matrix> mats;
            for (std::size_t v = 0; v < rep.dims.size(); ++v)
                mats.push_back(cy.q.components[v] * fn.components[v] * cx.sections[v]);
            comps.emplace(k, RepMap::validated(cx.quotient, cy.quotient, std::move(mats)));
        }
    }
    return ChainMap::validated(std::move(sx), std::move(sy), std::move(comps));
}

FactorizationPair em_factorization(const ChainMap& f, int n) {
    const Complex& x = f.source;
    const Complex& y = f.target;
    Truncation ty = truncate(y, n);
    ChainMap tau_f = truncate_lt_map(f, n);
    Truncation tx = truncate(x, n);
    // pullback corner Z = Y x_{tau_<n Y} tau_<n X
    auto po = pullout(ty.proj, tau_f);

    // e: X -> Z, x |-> (f x, proj x, 0); Z_n = Y_n + tauX_n + tauY_{n+1}
    std::map<int, RepMap> e_comps;
    for (const auto& [k, zterm] : po.p.terms) {
        Rep xk = x.term_at(k);
        if (xk.total_dim() == 0)
            continue;
        RepMap fk = f.component_at(k);
        RepMap pk = tx.proj.component_at(k);
        std::vector<Matrix> mats;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
            Matrix top = fk.components[v];
            Matrix mid = pk.components[v];
            Matrix bot = Matrix::zero(ty.tau_lt.term_at(k + 1).dims[v], xk.dims[v], x.modulus);
            mats.push_back(Matrix::vstack({top, mid, bot}, xk.dims[v], x.modulus));
        }
        e_comps.emplace(k, RepMap::validated(xk, zterm, std::move(mats)));
    }
    FactorizationPair out;
    out.e = ChainMap::validated(x, po.p, std::move(e_comps));
    out.m = po.to_source_f;
    out.mid = po.p;
    out.level = n;
    if (!(out.m.compose_after(out.e) == f))
        throw Error("em_factorization: composite does not reproduce f");
    out.e_is_equivalence = is_quasi_iso(out.e);
    out.m_is_equivalence = is_quasi_iso(out.m);
    return out;
}

bool in_e_class(const ChainMap& f, int n) { return em_factorization(f, n).m_is_equivalence; }
bool in_m_class(const ChainMap& f, int n) { return em_factorization(f, n).e_is_equivalence; }

TChain TChain::of(std::vector<int> values) {
    if (values.empty())
        throw ValidationError("chain: empty index list");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return TChain{std::move(values)};
}

std::string TChain::str() const {
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i)
        s += (i ? "," : "") + std::to_string(indices[i]);
    return s;
}

bool Tower::all_certified() const {
    if (!composite_ok)
        return false;
    return std::all_of(certs.begin(), certs.end(), [](const TowerCertificate& c) { return c.ok; });
}

namespace {

std::vector<Window> chain_windows(const TChain& chain) {
    // maps[0]: cofib in [i_k, +inf); maps[j]: [i_{k-j}, i_{k-j+1}); last: (-inf, i_1)
    const auto& idx = chain.indices;
    std::vector<Window> ws;
    ws.push_back(Window::at_least(idx.back()));
    for (std::size_t j = idx.size() - 1; j > 0; --j)
        ws.push_back(Window::interval(idx[j - 1], idx[j]));
    ws.push_back(Window::below(idx.front()));
    return ws;
}

void certify(Tower& t) {
    for (std::size_t j = 0; j < t.maps.size(); ++j)
        t.certs[j].ok = window_membership(make_cone(t.maps[j]), t.certs[j].window);
    ChainMap composite = t.maps.front();
    for (std::size_t j = 1; j < t.maps.size(); ++j)
        composite = t.maps[j].compose_after(composite);
    t.composite_ok = maps_homotopic(composite, t.base);
}

// inclusion tau_{>= m} Y -> Y (identity above m, kernel inclusion at m)
ChainMap geq_inclusion(const Complex& tau, const Complex& y, int m, const Cut& cut) {
    std::map<int, RepMap> comps;
    for (const auto& [k, rep] : tau.terms)
        comps.emplace(k, k > m ? RepMap::identity(rep) : cut.kappa);
    return ChainMap::validated(tau, y, std::move(comps));
}

}  // namespace

Tower kfold_factorization(const Complex& y, const TChain& chain) {
    Tower t;
    t.base = ChainMap::zero_map(Complex::zero_complex(y.quiver, y.modulus), y);
    t.levels = chain.indices;

    // stages tau_{>= i_k} Y, ..., tau_{>= i_1} Y with inclusion maps
    std::vector<Complex> taus;
    std::vector<Cut> cuts;
    for (int m : chain.indices) {
        Cut cut = make_cut(y, m);
        taus.push_back(build_tau_geq(y, m, cut));
        cuts.push_back(std::move(cut));
    }
    for (std::size_t j = chain.indices.size(); j-- > 0;)
        t.stages.push_back(taus[j]);

    t.maps.push_back(ChainMap::zero_map(t.base.source, t.stages.front()));
    for (std::size_t j = chain.indices.size(); j-- > 1;) {
        // tau_{>= i_{j+1}} Y -> tau_{>= i_j} Y: identity above, kernel inclusion at the seam
        const Complex& src = taus[j];
        const Complex& dst = taus[j - 1];
        std::map<int, RepMap> comps;
        for (const auto& [k, rep] : src.terms) {
            if (k > chain.indices[j])
                comps.emplace(k, RepMap::identity(rep));
            else
                comps.emplace(k, RepMap::validated(rep, dst.term_at(k), cuts[j].kappa.components));
        }
        t.maps.push_back(ChainMap::validated(src, dst, std::move(comps)));
    }
    t.maps.push_back(geq_inclusion(taus[0], y, chain.indices[0], cuts[0]));

    for (const Window& w : chain_windows(chain))
        t.certs.push_back(TowerCertificate{w, false});
    certify(t);
    return t;
}

Tower postnikov_tower(const ChainMap& f, const TChain& chain) {
    const Complex& x = f.source;
    const Complex& y = f.target;
    Tower t;
    t.base = f;
    t.levels = chain.indices;

    TriangleWitness w = cone_and_fiber(f);
    const Complex& c = w.cone;
    const ChainMap& can = w.incl;  // Y -> cofib(f)

    // pull the k-fold factorization of 0 -> cofib(f) back along can
    std::vector<PulloutResult> corners;
    for (int m : chain.indices) {
        Cut cut = make_cut(c, m);
        Complex tau = build_tau_geq(c, m, cut);
        corners.push_back(pullout(can, geq_inclusion(tau, c, m, cut)));
    }
    for (std::size_t j = chain.indices.size(); j-- > 0;)
        t.stages.push_back(corners[j].p);

    // head X -> Z_{i_k}: x |-> (f x, 0, eta x) with eta x = (-x, 0) in C_{n+1}
    {
        const Complex& z = t.stages.front();
        std::map<int, RepMap> comps;
        for (const auto& [n, zterm] : z.terms) {
            Rep xn = x.term_at(n);
            if (xn.total_dim() == 0)
                continue;
            RepMap fn = f.component_at(n);
            Rep tau_top = corners.back().to_source_g.target.term_at(n);
            Rep cup = c.term_at(n + 1);  // = X_n + Y_{n+1}
            std::vector<Matrix> mats;
            for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
                Matrix top = fn.components[v];
                Matrix mid = Matrix::zero(tau_top.dims[v], xn.dims[v], x.modulus);
                Matrix eta = Matrix::vstack(
                    {Matrix::identity(xn.dims[v], x.modulus).negated(),
                     Matrix::zero(cup.dims[v] - xn.dims[v], xn.dims[v], x.modulus)},
                    xn.dims[v], x.modulus);
                mats.push_back(Matrix::vstack({top, mid, eta}, xn.dims[v], x.modulus));
            }
            comps.emplace(n, RepMap::validated(xn, zterm, std::move(mats)));
        }
        t.maps.push_back(ChainMap::validated(x, z, std::move(comps)));
    }
    // middle maps (y, a, c) |-> (y, iota a, c)
    for (std::size_t j = chain.indices.size(); j-- > 1;) {
        const Complex& src = corners[j].p;
        const Complex& dst = corners[j - 1].p;
        const Complex& tau_hi = corners[j].to_source_g.target;
        const Complex& tau_lo = corners[j - 1].to_source_g.target;
        int m = chain.indices[j];
        Cut cut = make_cut(c, m);
        std::map<int, RepMap> comps;
        for (const auto& [n, sterm] : src.terms) {
            Rep dterm = dst.term_at(n);
            if (dterm.total_dim() == 0)
                continue;
            Rep yn = y.term_at(n), cn = c.term_at(n + 1);
            Rep hi_n = tau_hi.term_at(n), lo_n = tau_lo.term_at(n);
            std::vector<Matrix> mats;
            for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
                Matrix iota = n > m ? Matrix::identity(hi_n.dims[v], x.modulus)
                                    : cut.kappa.components[v];
                if (n < m)
                    iota = Matrix::zero(lo_n.dims[v], hi_n.dims[v], x.modulus);
                Matrix block = Matrix::block_diag(
                    {Matrix::identity(yn.dims[v], x.modulus), iota,
                     Matrix::identity(cn.dims[v], x.modulus)},
                    x.modulus);
                mats.push_back(std::move(block));
            }
            comps.emplace(n, RepMap::validated(sterm, dterm, std::move(mats)));
        }
        t.maps.push_back(ChainMap::validated(src, dst, std::move(comps)));
    }
    t.maps.push_back(corners[0].to_source_f);  // Z_{i_1} -> Y

    for (const Window& win : chain_windows(chain))
        t.certs.push_back(TowerCertificate{win, false});
    certify(t);
    return t;
}

Tower postnikov_tower_dual(const ChainMap& f, const TChain& chain) {
    const Complex& x = f.source;
    const Complex& y = f.target;
    Tower t;
    t.base = f;
    t.levels = chain.indices;

    TriangleWitness w = cone_and_fiber(f);
    Complex fib = w.fiber();
    ChainMap u = w.fiber_to_source();  // fib(f) -> X

    // push truncations of the fiber out along u; stage_j = X u<- F -> tau_{< i_j - 1} F
    std::vector<PushoutResult> corners;
    std::vector<Complex> tau_parts;
    for (int m : chain.indices) {
        Cut cut = make_cut(fib, m - 1);
        Complex tau = build_tau_lt(fib, m - 1, cut);
        ChainMap pr = build_proj(fib, tau, m - 1, cut);
        corners.push_back(pushout(u, pr));
        tau_parts.push_back(std::move(tau));
    }
    for (std::size_t j = chain.indices.size(); j-- > 0;)
        t.stages.push_back(corners[j].p);

    t.maps.push_back(corners.back().from_target_f);  // X -> P_{i_k}
    for (std::size_t j = chain.indices.size(); j-- > 1;) {
        // P_{i_j} -> P_{i_{j-1}}: further truncation on the third block
        const Complex& src = corners[j].p;
        const Complex& dst = corners[j - 1].p;
        int m_lo = chain.indices[j - 1];
        Cut cut = make_cut(tau_parts[j], m_lo - 1);
        Complex recut = build_tau_lt(tau_parts[j], m_lo - 1, cut);
        ChainMap tr = build_proj(tau_parts[j], recut, m_lo - 1, cut);
        if (!(recut == tau_parts[j - 1]))
            throw Error("postnikov_tower_dual: truncation tower mismatch");
        std::map<int, RepMap> comps;
        for (const auto& [n, sterm] : src.terms) {
            Rep dterm = dst.term_at(n);
            if (dterm.total_dim() == 0)
                continue;
            Rep fp = fib.term_at(n - 1), xn = x.term_at(n);
            std::vector<Matrix> mats;
            for (std::size_t v = 0; v < x.quiver->vertex_count; ++v)
                mats.push_back(Matrix::block_diag({Matrix::identity(fp.dims[v], x.modulus),
                                                   Matrix::identity(xn.dims[v], x.modulus),
                                                   tr.component_at(n).components[v]},
                                                  x.modulus));
            comps.emplace(n, RepMap::validated(sterm, dterm, std::move(mats)));
        }
        t.maps.push_back(ChainMap::validated(src, dst, std::move(comps)));
    }
    // tail P_{i_1} -> Y: (phi, x, tau) |-> H(phi) + f(x), H(x, y) = -y
    {
        const Complex& src = corners[0].p;
        std::map<int, RepMap> comps;
        for (const auto& [n, sterm] : src.terms) {
            Rep yn = y.term_at(n);
            if (yn.total_dim() == 0)
                continue;
            Rep fp = fib.term_at(n - 1);  // = X_{n-1} + Y_n
            Rep xn = x.term_at(n);
            Rep tau_n = tau_parts[0].term_at(n);
            RepMap fn = f.component_at(n);
            std::vector<Matrix> mats;
            for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
                std::size_t xdim = x.term_at(n - 1).dims[v];
                Matrix h(yn.dims[v], fp.dims[v], x.modulus);
                for (std::size_t i = 0; i < yn.dims[v]; ++i)
                    h.set(i, xdim + i, x.modulus - 1);
                mats.push_back(Matrix::hstack(
                    {h, fn.components[v], Matrix::zero(yn.dims[v], tau_n.dims[v], x.modulus)},
                    yn.dims[v], x.modulus));
            }
            comps.emplace(n, RepMap::validated(sterm, yn, std::move(mats)));
        }
        t.maps.push_back(ChainMap::validated(src, y, std::move(comps)));
    }

    for (const Window& win : chain_windows(chain))
        t.certs.push_back(TowerCertificate{win, false});
    certify(t);
    return t;
}

Tower z_postnikov_tower(const ChainMap& f) {
    Complex c = make_cone(f);
    std::vector<int> support = homology_support(c);
    if (support.empty()) {
        Tower t;
        t.base = f;
        t.maps.push_back(f);
        t.certs.push_back(TowerCertificate{Window::all(), true});
        t.composite_ok = true;
        t.n0 = 0;
        t.k0 = 0;
        t.map_is_equivalence.push_back(is_quasi_iso(f));
        return t;
    }
    int lo = support.front(), hi = support.back();
    std::vector<int> levels;
    for (int m = lo; m <= hi + 1; ++m)
        levels.push_back(m);
    Tower t = postnikov_tower(f, TChain::of(levels));
    t.n0 = lo;
    t.k0 = hi - lo + 1;
    for (const auto& m : t.maps)
        t.map_is_equivalence.push_back(is_quasi_iso(m));
    return t;
}

bool sator_check(const Complex& x, int n) {
    Complex zero = Complex::zero_complex(x.quiver, x.modulus);
    FactorizationPair initial = em_factorization(ChainMap::zero_map(zero, x), n);
    FactorizationPair terminal = em_factorization(ChainMap::zero_map(x, zero), n);
    return initial.e_is_equivalence == terminal.e_is_equivalence &&
           initial.m_is_equivalence == terminal.m_is_equivalence;
}

bool maps_homotopic(const ChainMap& f, const ChainMap& g) {
    if (!(f.source == g.source) || !(f.target == g.target))
        return false;
    if (f == g)
        return true;
    auto pr = projective_replacement(f.source);
    HomSpace hs = HomSpace::build(pr.p, f.target);
    auto red = hs.reduce((f - g).compose_after(pr.qiso));
    return std::all_of(red.coords.begin(), red.coords.end(), [](u32 c) { return c == 0; });
}

}  // namespace qts
