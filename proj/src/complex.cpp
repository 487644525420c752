#include "qts/complex.hpp"

#include <algorithm>
#include <sstream>

#include "qts/homset.hpp"

namespace qts {

namespace {

int support_min(const std::map<int, Rep>& terms) { return terms.empty() ? 0 : terms.begin()->first; }
int support_max(const std::map<int, Rep>& terms) { return terms.empty() ? 0 : terms.rbegin()->first; }

}  // namespace

Complex Complex::validated(QuiverPtr q, u32 p, std::map<int, Rep> terms, std::map<int, RepMap> diffs) {
    if (!q)
        throw ValidationError("complex: missing quiver");
    Complex x;
    x.quiver = std::move(q);
    x.modulus = p;
    for (auto& [n, rep] : terms) {
        if (!rep.quiver->same_as(*x.quiver) || rep.modulus != p)
            throw ValidationError("complex: term " + std::to_string(n) + " over wrong quiver or modulus");
        if (rep.total_dim() > 0)
            x.terms.emplace(n, std::move(rep));
    }
    for (auto& [n, d] : diffs) {
        if (d.is_zero())
            continue;
        auto src = x.terms.find(n);
        auto tgt = x.terms.find(n - 1);
        if (src == x.terms.end() || tgt == x.terms.end())
            throw ValidationError("complex: differential at degree " + std::to_string(n) +
                                  " has a zero endpoint but is not zero");
        if (!(d.source == src->second) || !(d.target == tgt->second))
            throw ValidationError("complex: differential at degree " + std::to_string(n) +
                                  " does not match its terms");
        x.diffs.emplace(n, std::move(d));
    }
    for (const auto& [n, d] : x.diffs) {
        auto below = x.diffs.find(n - 1);
        if (below != x.diffs.end() && !below->second.compose_after(d).is_zero())
            throw ValidationError("complex: d^2 != 0 at degree " + std::to_string(n));
    }
    return x;
}

Complex Complex::zero_complex(QuiverPtr q, u32 p) { return validated(std::move(q), p, {}, {}); }

Complex Complex::concentrated(const Rep& rep, int degree) {
    std::map<int, Rep> terms;
    terms.emplace(degree, rep);
    return validated(rep.quiver, rep.modulus, std::move(terms), {});
}

Complex Complex::two_term(const RepMap& f, int top) {
    std::map<int, Rep> terms;
    terms.emplace(top, f.source);
    terms.emplace(top - 1, f.target);
    std::map<int, RepMap> diffs;
    diffs.emplace(top, f);
    return validated(f.source.quiver, f.source.modulus, std::move(terms), std::move(diffs));
}

Complex Complex::direct_sum(const Complex& a, const Complex& b) {
    if (!a.quiver->same_as(*b.quiver) || a.modulus != b.modulus)
        throw ValidationError("complex direct_sum: quiver or modulus mismatch");
    if (a.is_zero_object())
        return b;
    if (b.is_zero_object())
        return a;
    std::map<int, Rep> terms;
    std::map<int, RepMap> diffs;
    int lo = std::min(a.min_degree(), b.min_degree());
    int hi = std::max(a.max_degree(), b.max_degree());
    for (int n = lo; n <= hi; ++n) {
        Rep sum = Rep::direct_sum(a.term_at(n), b.term_at(n));
        if (sum.total_dim() > 0)
            terms.emplace(n, std::move(sum));
    }
    for (int n = lo; n <= hi + 1; ++n) {
        if (!terms.count(n) || !terms.count(n - 1))
            continue;
        RepMap da = a.diff_at(n), db = b.diff_at(n);
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < a.quiver->vertex_count; ++v)
            comps.push_back(Matrix::block_diag({da.components[v], db.components[v]}, a.modulus));
        diffs.emplace(n, RepMap::validated(terms.at(n), terms.at(n - 1), std::move(comps)));
    }
    return validated(a.quiver, a.modulus, std::move(terms), std::move(diffs));
}

Rep Complex::term_at(int n) const {
    auto it = terms.find(n);
    return it != terms.end() ? it->second : Rep::zero(quiver, modulus);
}

RepMap Complex::diff_at(int n) const {
    auto it = diffs.find(n);
    if (it != diffs.end())
        return it->second;
    return RepMap::zero(term_at(n), term_at(n - 1));
}

int Complex::min_degree() const { return support_min(terms); }
int Complex::max_degree() const { return support_max(terms); }

std::size_t Complex::total_dim() const {
    std::size_t total = 0;
    for (const auto& [n, rep] : terms)
        total += rep.total_dim();
    return total;
}

bool Complex::operator==(const Complex& other) const {
    return quiver->same_as(*other.quiver) && modulus == other.modulus && terms == other.terms &&
           diffs == other.diffs;
}

std::string Complex::str() const {
    if (terms.empty())
        return "0";
    std::ostringstream os;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (it != terms.rbegin())
            os << " -> ";
        os << "[" << it->first << "]" << it->second.str();
    }
    return os.str();
}

Complex shift(const Complex& x, int k) {
    std::map<int, Rep> terms;
    std::map<int, RepMap> diffs;
    for (const auto& [n, rep] : x.terms)
        terms.emplace(n + k, rep);
    const u32 sign = (k % 2 == 0) ? 1 : x.modulus - 1;
    for (const auto& [n, d] : x.diffs)
        diffs.emplace(n + k, d.scaled(sign));
    return Complex::validated(x.quiver, x.modulus, std::move(terms), std::move(diffs));
}

ChainMap ChainMap::validated(Complex source, Complex target, std::map<int, RepMap> components) {
    if (!source.quiver->same_as(*target.quiver) || source.modulus != target.modulus)
        throw ValidationError("chain map: quiver or modulus mismatch");
    ChainMap f;
    f.source = std::move(source);
    f.target = std::move(target);
    for (auto& [n, comp] : components) {
        if (!(comp.source == f.source.term_at(n)) || !(comp.target == f.target.term_at(n)))
            throw ValidationError("chain map: component at degree " + std::to_string(n) +
                                  " does not match the terms");
        if (!comp.is_zero())
            f.components.emplace(n, std::move(comp));
    }
    if (!f.source.terms.empty()) {
        int lo = f.source.min_degree(), hi = f.source.max_degree();
        for (int n = lo; n <= hi + 1; ++n) {
            RepMap lhs = f.component_at(n - 1).compose_after(f.source.diff_at(n));
            RepMap rhs = f.target.diff_at(n).compose_after(f.component_at(n));
            if (!(lhs == rhs))
                throw ValidationError("chain map: law fails at degree " + std::to_string(n));
        }
    }
    return f;
}

ChainMap ChainMap::zero_map(Complex source, Complex target) {
    return validated(std::move(source), std::move(target), {});
}

ChainMap ChainMap::identity(const Complex& x) {
    std::map<int, RepMap> comps;
    for (const auto& [n, rep] : x.terms)
        comps.emplace(n, RepMap::identity(rep));
    return validated(x, x, std::move(comps));
}

RepMap ChainMap::component_at(int n) const {
    auto it = components.find(n);
    if (it != components.end())
        return it->second;
    return RepMap::zero(source.term_at(n), target.term_at(n));
}

ChainMap ChainMap::compose_after(const ChainMap& inner) const {
    if (!(inner.target == source))
        throw ValidationError("chain map compose: middle complexes differ");
    std::map<int, RepMap> comps;
    for (const auto& [n, g] : inner.components)
        comps.emplace(n, component_at(n).compose_after(g));
    return validated(inner.source, target, std::move(comps));
}

ChainMap ChainMap::operator+(const ChainMap& rhs) const {
    if (!(source == rhs.source) || !(target == rhs.target))
        throw ValidationError("chain map add: endpoint mismatch");
    std::map<int, RepMap> comps;
    for (const auto& [n, g] : components)
        comps.emplace(n, g);
    for (const auto& [n, g] : rhs.components) {
        auto it = comps.find(n);
        if (it == comps.end())
            comps.emplace(n, g);
        else
            it->second = it->second + g;
    }
    return validated(source, target, std::move(comps));
}

ChainMap ChainMap::operator-(const ChainMap& rhs) const { return *this + rhs.negated(); }

ChainMap ChainMap::scaled(u32 c) const {
    std::map<int, RepMap> comps;
    for (const auto& [n, g] : components)
        comps.emplace(n, g.scaled(c));
    return validated(source, target, std::move(comps));
}

bool ChainMap::operator==(const ChainMap& other) const {
    return source == other.source && target == other.target && components == other.components;
}

ChainMap shift_map(const ChainMap& f, int k) {
    std::map<int, RepMap> comps;
    for (const auto& [n, g] : f.components)
        comps.emplace(n + k, g);
    return ChainMap::validated(shift(f.source, k), shift(f.target, k), std::move(comps));
}

HomologyData homology_data(const Complex& x, int n) {
    RepMap dn = x.diff_at(n);
    auto kc_down = kernel_cokernel_rep(dn);
    // lift d_{n+1} through the kernel inclusion (columns land in ker d_n)
    RepMap dup = x.diff_at(n + 1);
    std::vector<Matrix> lift_comps;
    for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
        auto sol = solve_linear(kc_down.ker_incl.components[v], dup.components[v]);
        if (!sol)
            throw Error("homology_data: d^2 != 0?");
        lift_comps.push_back(std::move(*sol));
    }
    RepMap lift = RepMap::validated(dup.source, kc_down.ker, std::move(lift_comps));
    auto kc_up = kernel_cokernel_rep(lift);
    return HomologyData{kc_up.coker, kc_down.ker_incl, kc_up.coker_proj, kc_up.coker_sections};
}

Rep homology_at(const Complex& x, int n) { return homology_data(x, n).h; }

RepMap homology_map(const ChainMap& f, int n) {
    auto hx = homology_data(f.source, n);
    auto hy = homology_data(f.target, n);
    RepMap fn = f.component_at(n);
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < f.source.quiver->vertex_count; ++v) {
        auto restricted = solve_linear(hy.cycles_incl.components[v],
                                       fn.components[v] * hx.cycles_incl.components[v]);
        if (!restricted)
            throw Error("homology_map: cycles not preserved?");
        comps.push_back(hy.h_proj.components[v] * *restricted * hx.h_sections[v]);
    }
    return RepMap::validated(hx.h, hy.h, std::move(comps));
}

std::map<int, Rep> homology_all(const Complex& x) {
    std::map<int, Rep> h;
    if (x.is_zero_object())
        return h;
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
        Rep hn = homology_at(x, n);
        if (hn.total_dim() > 0)
            h.emplace(n, std::move(hn));
    }
    return h;
}

std::vector<int> homology_support(const Complex& x) {
    std::vector<int> support;
    for (const auto& [n, h] : homology_all(x))
        support.push_back(n);
    return support;
}

bool is_acyclic(const Complex& x) { return homology_support(x).empty(); }

Complex homology_sum_complex(const Complex& x) {
    std::map<int, Rep> terms = homology_all(x);
    return Complex::validated(x.quiver, x.modulus, std::move(terms), {});
}

Complex make_cone(const ChainMap& f) {
    const Complex& x = f.source;
    const Complex& y = f.target;
    const u32 p = x.modulus;
    if (x.is_zero_object() && y.is_zero_object())
        return Complex::zero_complex(x.quiver, p);
    int lo = y.is_zero_object() ? x.min_degree() + 1
                                : (x.is_zero_object() ? y.min_degree()
                                                      : std::min(x.min_degree() + 1, y.min_degree()));
    int hi = y.is_zero_object() ? x.max_degree() + 1
                                : (x.is_zero_object() ? y.max_degree()
                                                      : std::max(x.max_degree() + 1, y.max_degree()));

    std::map<int, Rep> terms;
    for (int n = lo; n <= hi; ++n) {
        Rep t = Rep::direct_sum(x.term_at(n - 1), y.term_at(n));
        if (t.total_dim() > 0)
            terms.emplace(n, std::move(t));
    }
    // d(x, y) = (-dx, dy - fx)
    std::map<int, RepMap> diffs;
    for (int n = lo; n <= hi; ++n) {
        if (!terms.count(n) || !terms.count(n - 1))
            continue;
        RepMap dx = x.diff_at(n - 1);
        RepMap dy = y.diff_at(n);
        RepMap fc = f.component_at(n - 1);
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
            Matrix top = Matrix::hstack({dx.components[v].negated(),
                                         Matrix::zero(dx.components[v].rows(), dy.components[v].cols(), p)},
                                        dx.components[v].rows(), p);
            Matrix bot = Matrix::hstack({fc.components[v].negated(), dy.components[v]},
                                        dy.components[v].rows(), p);
            comps.push_back(Matrix::vstack({top, bot}, top.cols(), p));
        }
        diffs.emplace(n, RepMap::validated(terms.at(n), terms.at(n - 1), std::move(comps)));
    }
    return Complex::validated(x.quiver, p, std::move(terms), std::move(diffs));
}

namespace {

// X + Y -> X and X + Y -> Y as raw vertex matrices at one degree.
Matrix left_proj_matrix(const Rep& a, const Rep& b, std::size_t v) {
    Matrix m(a.dims[v], a.dims[v] + b.dims[v], a.modulus);
    for (std::size_t i = 0; i < a.dims[v]; ++i)
        m.set(i, i, 1);
    return m;
}

Matrix right_proj_matrix(const Rep& a, const Rep& b, std::size_t v) {
    Matrix m(b.dims[v], a.dims[v] + b.dims[v], a.modulus);
    for (std::size_t i = 0; i < b.dims[v]; ++i)
        m.set(i, a.dims[v] + i, 1);
    return m;
}

}  // namespace

TriangleWitness cone_and_fiber(const ChainMap& f) {
    TriangleWitness w;
    w.f = f;
    w.cone = make_cone(f);
    const Complex& x = f.source;
    const Complex& y = f.target;

    std::map<int, RepMap> incl_comps, proj_comps;
    Complex x1 = shift(x, 1);
    for (const auto& [n, cone_term] : w.cone.terms) {
        Rep xa = x.term_at(n - 1), yb = y.term_at(n);
        if (yb.total_dim() > 0) {
            std::vector<Matrix> comps;
            for (std::size_t v = 0; v < x.quiver->vertex_count; ++v)
                comps.push_back(right_proj_matrix(xa, yb, v).transposed());
            incl_comps.emplace(n, RepMap::validated(yb, cone_term, std::move(comps)));
        }
        if (xa.total_dim() > 0) {
            std::vector<Matrix> comps;
            for (std::size_t v = 0; v < x.quiver->vertex_count; ++v)
                comps.push_back(left_proj_matrix(xa, yb, v));
            proj_comps.emplace(n, RepMap::validated(cone_term, xa, std::move(comps)));
        }
    }
    w.incl = ChainMap::validated(y, w.cone, std::move(incl_comps));
    w.proj_to_shift = ChainMap::validated(w.cone, x1, std::move(proj_comps));

    // long exact sequence of the triangle, checked by ranks at every slot
    w.les_exact = true;
    bool all_zero = x.is_zero_object() && y.is_zero_object() && w.cone.is_zero_object();
    if (!all_zero) {
        int lo = 0, hi = 0;
        bool any = false;
        const Complex* parts[] = {&x, &y, &w.cone};
        for (const Complex* c : parts) {
            if (c->is_zero_object())
                continue;
            lo = any ? std::min(lo, c->min_degree() - 1) : c->min_degree() - 1;
            hi = any ? std::max(hi, c->max_degree() + 1) : c->max_degree() + 1;
            any = true;
        }
        ChainMap f1 = shift_map(f, 1);
        for (int n = lo; n <= hi && w.les_exact; ++n) {
            RepMap a = homology_map(f, n);
            RepMap b = homology_map(w.incl, n);
            RepMap c = homology_map(w.proj_to_shift, n);
            RepMap a1 = homology_map(f1, n);
            w.les_exact = exact_at(a, b) && exact_at(b, c) && exact_at(c, a1);
        }
    }
    return w;
}

ChainMap TriangleWitness::fiber_to_source() const {
    Complex fib = fiber();
    const Complex& x = f.source;
    std::map<int, RepMap> comps;
    for (const auto& [n, fterm] : fib.terms) {
        Rep xa = x.term_at(n), yb = f.target.term_at(n + 1);
        if (xa.total_dim() == 0)
            continue;
        std::vector<Matrix> mats;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v)
            mats.push_back(left_proj_matrix(xa, yb, v));
        comps.emplace(n, RepMap::validated(fterm, xa, std::move(mats)));
    }
    return ChainMap::validated(fib, x, std::move(comps));
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(make_cone(f)); }

bool exact_at(const RepMap& alpha, const RepMap& beta) {
    if (!beta.compose_after(alpha).is_zero())
        return false;
    for (std::size_t v = 0; v < alpha.source.dims.size(); ++v)
        if (rank(alpha.components[v]) + rank(beta.components[v]) != alpha.target.dims[v])
            return false;
    return true;
}

namespace {

// (f, -g): X + Y -> C for two maps with common target.
ChainMap difference_map(const ChainMap& f, const ChainMap& g, const Complex& sum) {
    const Complex& c = f.target;
    std::map<int, RepMap> comps;
    for (const auto& [n, sterm] : sum.terms) {
        if (c.term_at(n).total_dim() == 0)
            continue;
        RepMap fn = f.component_at(n), gn = g.component_at(n);
        std::vector<Matrix> mats;
        for (std::size_t v = 0; v < c.quiver->vertex_count; ++v)
            mats.push_back(Matrix::hstack({fn.components[v], gn.components[v].negated()},
                                          fn.components[v].rows(), c.modulus));
        comps.emplace(n, RepMap::validated(sterm, c.term_at(n), std::move(mats)));
    }
    return ChainMap::validated(sum, c, std::move(comps));
}

}  // namespace

PulloutResult pullout(const ChainMap& f, const ChainMap& g) {
    if (!(f.target == g.target))
        throw ValidationError("pullout: maps do not share a target");
    const Complex& x = f.source;
    const Complex& y = g.source;
    const Complex& c = f.target;

    Complex sum = Complex::direct_sum(x, y);
    ChainMap diff = difference_map(f, g, sum);
    Complex fib = shift(make_cone(diff), -1);  // fib_n = X_n + Y_n + C_{n+1}

    std::map<int, RepMap> to_x, to_y, homotopy;
    for (const auto& [n, fterm] : fib.terms) {
        Rep xa = x.term_at(n), yb = y.term_at(n), cc = c.term_at(n + 1);
        Rep xy = Rep::direct_sum(xa, yb);
        std::vector<Matrix> mx, my, mh;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
            Matrix proj_xy = left_proj_matrix(xy, cc, v);
            mx.push_back(left_proj_matrix(xa, yb, v) * proj_xy);
            my.push_back(right_proj_matrix(xa, yb, v) * proj_xy);
            mh.push_back(right_proj_matrix(xy, cc, v));
        }
        if (xa.total_dim() > 0)
            to_x.emplace(n, RepMap::validated(fterm, xa, std::move(mx)));
        if (yb.total_dim() > 0)
            to_y.emplace(n, RepMap::validated(fterm, yb, std::move(my)));
        if (cc.total_dim() > 0)
            homotopy.emplace(n, RepMap::validated(fterm, cc, std::move(mh)));
    }
    PulloutResult out;
    out.to_source_f = ChainMap::validated(fib, x, std::move(to_x));
    out.to_source_g = ChainMap::validated(fib, y, std::move(to_y));
    out.homotopy = std::move(homotopy);
    out.p = std::move(fib);
    return out;
}

PushoutResult pushout(const ChainMap& f, const ChainMap& g) {
    if (!(f.source == g.source))
        throw ValidationError("pushout: maps do not share a source");
    const Complex& a = f.source;
    const Complex& x = f.target;
    const Complex& y = g.target;

    Complex sum = Complex::direct_sum(x, y);
    // (f, -g): A -> X + Y
    std::map<int, RepMap> span_comps;
    for (const auto& [n, aterm] : a.terms) {
        if (sum.term_at(n).total_dim() == 0)
            continue;
        RepMap fn = f.component_at(n), gn = g.component_at(n);
        std::vector<Matrix> mats;
        for (std::size_t v = 0; v < a.quiver->vertex_count; ++v)
            mats.push_back(Matrix::vstack({fn.components[v], gn.components[v].negated()},
                                          aterm.dims[v], a.modulus));
        span_comps.emplace(n, RepMap::validated(aterm, sum.term_at(n), std::move(mats)));
    }
    ChainMap span = ChainMap::validated(a, sum, std::move(span_comps));
    Complex cone = make_cone(span);  // cone_n = A_{n-1} + X_n + Y_n

    std::map<int, RepMap> from_x, from_y, homotopy;
    for (const auto& [n, cterm] : cone.terms) {
        Rep aa = a.term_at(n - 1), xb = x.term_at(n), yb = y.term_at(n);
        Rep xy = Rep::direct_sum(xb, yb);
        std::vector<Matrix> mx, my;
        for (std::size_t v = 0; v < a.quiver->vertex_count; ++v) {
            Matrix incl_xy = right_proj_matrix(aa, xy, v).transposed();
            mx.push_back(incl_xy * left_proj_matrix(xb, yb, v).transposed());
            my.push_back(incl_xy * right_proj_matrix(xb, yb, v).transposed());
        }
        if (xb.total_dim() > 0)
            from_x.emplace(n, RepMap::validated(xb, cterm, std::move(mx)));
        if (yb.total_dim() > 0)
            from_y.emplace(n, RepMap::validated(yb, cterm, std::move(my)));
    }
    // h: A_n -> cone_{n+1}, a |-> (a, 0, 0) realizes from_x o f - from_y o g
    for (const auto& [n, aterm] : a.terms) {
        Rep cterm = cone.term_at(n + 1);
        if (cterm.total_dim() == 0)
            continue;
        Rep xy = Rep::direct_sum(x.term_at(n + 1), y.term_at(n + 1));
        std::vector<Matrix> mh;
        for (std::size_t v = 0; v < a.quiver->vertex_count; ++v)
            mh.push_back(left_proj_matrix(aterm, xy, v).transposed());
        homotopy.emplace(n, RepMap::validated(aterm, cterm, std::move(mh)));
    }

    PushoutResult out;
    out.from_target_f = ChainMap::validated(x, cone, std::move(from_x));
    out.from_target_g = ChainMap::validated(y, cone, std::move(from_y));
    out.homotopy = std::move(homotopy);
    out.p = std::move(cone);
    return out;
}

bool rep_is_projective(const Rep& m) {
    if (m.total_dim() == 0)
        return true;
    auto res = standard_resolution(m);
    auto basis = hom_rep_basis(m, res.p0);
    if (basis.empty())
        return false;
    // look for a section s of aug: vectorize aug o b_i and solve for id_M
    std::size_t entries = 0;
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        entries += m.dims[v] * m.dims[v];
    Matrix sys(entries, basis.size(), m.modulus);
    Matrix rhs(entries, 1, m.modulus);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        RepMap comp = res.aug.compose_after(basis[k]);
        std::size_t at = 0;
        for (std::size_t v = 0; v < m.dims.size(); ++v)
            for (std::size_t i = 0; i < m.dims[v]; ++i)
                for (std::size_t j = 0; j < m.dims[v]; ++j, ++at)
                    sys.set(at, k, comp.components[v](i, j));
    }
    std::size_t at = 0;
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        for (std::size_t i = 0; i < m.dims[v]; ++i)
            for (std::size_t j = 0; j < m.dims[v]; ++j, ++at)
                rhs.set(at, 0, i == j ? 1 : 0);
    return solve_linear(sys, rhs).has_value();
}

ProjectiveReplacement projective_replacement(const Complex& x) {
    if (x.is_zero_object())
        return ProjectiveReplacement{x, ChainMap::identity(x)};
    bool all_projective = true;
    for (const auto& [n, rep] : x.terms)
        if (!rep_is_projective(rep)) {
            all_projective = false;
            break;
        }
    if (all_projective)
        return ProjectiveReplacement{x, ChainMap::identity(x)};

    const u32 p = x.modulus;
    const int lo = x.min_degree(), hi = x.max_degree();
    std::map<int, StandardResolution> res;
    for (const auto& [n, rep] : x.terms)
        res.emplace(n, standard_resolution(rep));

    auto p0_at = [&](int n) { return res.count(n) ? res.at(n).p0 : Rep::zero(x.quiver, p); };
    auto p1_at = [&](int n) { return res.count(n) ? res.at(n).p1 : Rep::zero(x.quiver, p); };

    // R_n = P0(X_n) + P1(X_{n-1}); D(p, q) = (P0(d_n) p + iota q, -P1(d_{n-1}) q)
    std::map<int, Rep> terms;
    for (int n = lo; n <= hi + 1; ++n) {
        Rep t = Rep::direct_sum(p0_at(n), p1_at(n - 1));
        if (t.total_dim() > 0)
            terms.emplace(n, std::move(t));
    }

    auto p0_map_at = [&](int n) -> RepMap {
        if (x.diffs.count(n))
            return resolution_p0_map(x.diff_at(n));
        return RepMap::zero(p0_at(n), p0_at(n - 1));
    };
    auto p1_map_at = [&](int n) -> RepMap {
        if (x.diffs.count(n))
            return resolution_p1_map(x.diff_at(n));
        return RepMap::zero(p1_at(n), p1_at(n - 1));
    };

    std::map<int, RepMap> diffs;
    for (int n = lo; n <= hi + 1; ++n) {
        if (!terms.count(n) || !terms.count(n - 1))
            continue;
        RepMap d0 = p0_map_at(n);
        RepMap d1 = p1_map_at(n - 1);
        RepMap iota = res.count(n - 1) ? res.at(n - 1).d : RepMap::zero(p1_at(n - 1), p0_at(n - 1));
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v) {
            Matrix top = Matrix::hstack({d0.components[v], iota.components[v]}, d0.components[v].rows(), p);
            Matrix bot = Matrix::hstack(
                {Matrix::zero(d1.components[v].rows(), d0.components[v].cols(), p),
                 d1.components[v].negated()},
                d1.components[v].rows(), p);
            comps.push_back(Matrix::vstack({top, bot}, top.cols(), p));
        }
        diffs.emplace(n, RepMap::validated(terms.at(n), terms.at(n - 1), std::move(comps)));
    }
    Complex replacement = Complex::validated(x.quiver, p, std::move(terms), std::move(diffs));

    std::map<int, RepMap> qiso_comps;
    for (const auto& [n, rterm] : replacement.terms) {
        Rep xterm = x.term_at(n);
        if (xterm.total_dim() == 0)
            continue;
        RepMap aug = res.at(n).aug;
        Rep q1 = p1_at(n - 1);
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < x.quiver->vertex_count; ++v)
            comps.push_back(Matrix::hstack({aug.components[v],
                                            Matrix::zero(xterm.dims[v], q1.dims[v], p)},
                                           xterm.dims[v], p));
        qiso_comps.emplace(n, RepMap::validated(rterm, xterm, std::move(comps)));
    }
    ChainMap qiso = ChainMap::validated(replacement, x, std::move(qiso_comps));
    return ProjectiveReplacement{std::move(replacement), std::move(qiso)};
}

EquivalenceResult find_equivalence(const Complex& x, const Complex& y, std::size_t budget) {
    EquivalenceResult out;
    if (x == y) {
        out.status = EquivStatus::found;
        out.roof = Roof{x, ChainMap::identity(x), ChainMap::identity(x)};
        return out;
    }
    int lo = 0, hi = -1;
    {
        bool any = false;
        const Complex* parts[] = {&x, &y};
        for (const Complex* c : parts)
            if (!c->is_zero_object()) {
                lo = any ? std::min(lo, c->min_degree()) : c->min_degree();
                hi = any ? std::max(hi, c->max_degree()) : c->max_degree();
                any = true;
            }
    }
    std::vector<int> degrees;
    for (int n = lo; n <= hi; ++n)
        degrees.push_back(n);
    // quasi-isomorphic complexes have equal homology dimensions everywhere
    for (int n : degrees)
        if (homology_at(x, n).dims != homology_at(y, n).dims) {
            out.status = EquivStatus::none;
            return out;
        }

    HomBasis hb = hom_homotopy_basis(x, y, 0);
    if (is_acyclic(x) && is_acyclic(y)) {
        out.status = EquivStatus::found;
        out.roof = Roof{hb.source_replacement, hb.source_qiso,
                        ChainMap::zero_map(hb.source_replacement, y)};
        return out;
    }
    if (hb.dim == 0) {
        out.status = EquivStatus::none;
        return out;
    }

    const u32 p = x.modulus;
    // homology is additive in the map, so candidates are scored on small
    // per-degree matrices before any chain map is materialized
    std::vector<std::vector<RepMap>> hmaps(hb.dim);
    for (std::size_t i = 0; i < hb.dim; ++i)
        for (int n : degrees)
            hmaps[i].push_back(homology_map(hb.basis[i], n));

    double total_combos = 1;
    for (std::size_t i = 0; i < hb.dim; ++i)
        total_combos *= p;
    bool exhaustive = total_combos - 1 <= static_cast<double>(budget);

    std::vector<u32> digits(hb.dim, 0);
    std::size_t tried = 0;
    while (tried < budget) {
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == p - 1)
            digits[i++] = 0;
        if (i == digits.size())
            break;
        ++digits[i];
        ++tried;

        bool good = true;
        for (std::size_t dn = 0; dn < degrees.size() && good; ++dn) {
            RepMap sum = RepMap::zero(hmaps[0][dn].source, hmaps[0][dn].target);
            for (std::size_t k = 0; k < hb.dim; ++k)
                if (digits[k] != 0)
                    sum = sum + hmaps[k][dn].scaled(digits[k]);
            good = sum.is_isomorphism();
        }
        if (!good)
            continue;

        ChainMap candidate = ChainMap::zero_map(hb.source_replacement, y);
        for (std::size_t k = 0; k < hb.dim; ++k)
            if (digits[k] != 0)
                candidate = candidate + hb.basis[k].scaled(digits[k]);
        if (!is_quasi_iso(candidate))
            continue;
        out.status = EquivStatus::found;
        out.roof = Roof{hb.source_replacement, hb.source_qiso, std::move(candidate)};
        return out;
    }
    out.status = exhaustive ? EquivStatus::none : EquivStatus::undecided;
    return out;
}

}  // namespace qts
