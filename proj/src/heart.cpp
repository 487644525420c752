#include "qts/heart.hpp"

#include <algorithm>

namespace qts {

bool is_heart_object(const Complex& x) { return window_membership(x, Window::interval(0, 1)); }

HeartAnalysis heart_analysis(const ChainMap& f) {
    if (!is_heart_object(f.source) || !is_heart_object(f.target))
        throw ValidationError("heart_analysis: endpoints are not heart objects");
    HeartAnalysis a;
    a.f = f;

    TriangleWitness w = cone_and_fiber(f);
    Complex fib = w.fiber();
    ChainMap u = w.fiber_to_source();

    Truncation tk = truncate(fib, 0);
    a.ker = tk.tau_geq;
    a.k_f = u.compose_after(tk.incl);

    Truncation tc = truncate(w.cone, 1);
    a.coker = tc.tau_lt;
    a.c_f = tc.proj.compose_after(w.incl);

    // Z_f is the pushout of fib(f) -> X along fib(f) -> coker(f)[-1]
    ChainMap to_shifted_coker = shift_map(tc.proj, -1);  // fib = cofib[-1] -> coker[-1]
    a.zf = pushout(u, to_shifted_coker).p;

    TriangleWitness wc = cone_and_fiber(a.c_f);
    a.im = truncate(wc.fiber(), 0).tau_geq;

    TriangleWitness wk = cone_and_fiber(a.k_f);
    a.coim = truncate(wk.cone, 1).tau_lt;

    a.witness_im_coim = find_equivalence(a.im, a.coim);
    a.witness_im_zf = find_equivalence(a.im, a.zf);
    a.witness_coim_zf = find_equivalence(a.coim, a.zf);

    a.all_heart = is_heart_object(a.ker) && is_heart_object(a.coker) && is_heart_object(a.im) &&
                  is_heart_object(a.coim) && is_heart_object(a.zf);
    return a;
}

DiscretenessReport hom_discreteness_report(const Complex& x, const Complex& y, int max_n) {
    if (!is_heart_object(x) || !is_heart_object(y))
        throw ValidationError("hom_discreteness_report: endpoints are not heart objects");
    DiscretenessReport r;
    r.discrete = true;
    for (int n = 0; n <= max_n; ++n) {
        r.dims[n] = hom_homotopy_basis(x, y, -n).dim;
        if (n >= 1 && r.dims[n] != 0)
            r.discrete = false;
    }
    return r;
}

bool universal_property_check(const HeartAnalysis& analysis, const std::vector<ChainMap>& probes) {
    const ChainMap& f = analysis.f;
    for (const ChainMap& probe : probes) {
        if (!(probe.target == f.source))
            throw ValidationError("universal_property_check: probe does not land in the source");
        if (!maps_homotopic(f.compose_after(probe), ChainMap::zero_map(probe.source, f.target)))
            throw ValidationError("universal_property_check: probe composed with f is not null");

        HomBasis into_ker = hom_homotopy_basis(probe.source, analysis.ker, 0);
        HomSpace into_x = HomSpace::build(into_ker.source_replacement, f.source);

        // columns: classes of k_f o g_i; rhs: class of the probe
        const u32 p = f.source.modulus;
        std::size_t rows = into_x.dim();
        Matrix sys(rows, into_ker.dim, p);
        for (std::size_t i = 0; i < into_ker.dim; ++i) {
            auto red = into_x.reduce(analysis.k_f.compose_after(into_ker.basis[i]));
            for (std::size_t r = 0; r < rows; ++r)
                sys.set(r, i, red.coords[r]);
        }
        auto probe_red = into_x.reduce(probe.compose_after(into_ker.source_qiso));
        Matrix rhs(rows, 1, p);
        for (std::size_t r = 0; r < rows; ++r)
            rhs.set(r, 0, probe_red.coords[r]);

        auto sol = solve_linear(sys, rhs);
        if (!sol)
            return false;  // no factorization through the kernel
        if (kernel_basis(sys).cols() != 0)
            return false;  // factorization must be unique up to homotopy
    }
    return true;
}

HeartReconstruction reconstruct_tstructure_from_heart(const Complex& x) {
    HeartReconstruction out;
    Complex zero = Complex::zero_complex(x.quiver, x.modulus);
    out.tower = z_postnikov_tower(ChainMap::zero_map(zero, x));

    // nonzero tower cofibers sit at the middle maps; their window is [m, m+1)
    std::vector<int> nonzero_levels;
    for (std::size_t j = 0; j < out.tower.maps.size(); ++j) {
        const Window& w = out.tower.certs[j].window;
        if (!w.lo || !w.hi)
            continue;  // head/tail of a stabilized tower, acyclic by construction
        if (!is_acyclic(make_cone(out.tower.maps[j])))
            nonzero_levels.push_back(*w.lo);
    }
    out.in_geq0 = std::all_of(nonzero_levels.begin(), nonzero_levels.end(),
                              [](int m) { return m >= 0; });
    out.in_lt0 = std::all_of(nonzero_levels.begin(), nonzero_levels.end(),
                             [](int m) { return m < 0; });
    if (!nonzero_levels.empty()) {
        auto [mn, mx] = std::minmax_element(nonzero_levels.begin(), nonzero_levels.end());
        out.a_length = static_cast<std::size_t>(*mx - *mn + 1);
    }
    return out;
}

}  // namespace qts
