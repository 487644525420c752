#include "qts/workspace.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qts {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& j, u32 p, const std::string& where) {
    try {
        if (j.is_array()) {
            // nested rows; every dimension must be positive in this form
            std::vector<std::vector<u32>> rows;
            for (const auto& row : j) {
                if (!row.is_array())
                    throw ValidationError("expected a row array");
                rows.push_back(row.get<std::vector<u32>>());
            }
            if (rows.empty())
                throw ValidationError("empty nested-array matrix; use the object form with explicit shape");
            return Matrix::from_rows(rows, p);
        }
        if (j.is_object()) {
            std::size_t r = j.at("rows").get<std::size_t>();
            std::size_t c = j.at("cols").get<std::size_t>();
            auto entries = j.at("entries").get<std::vector<u32>>();
            if (entries.size() != r * c)
                throw ValidationError("entries length does not match rows*cols");
            Matrix m(r, c, p);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t k = 0; k < c; ++k)
                    m.set(i, k, entries[i * c + k]);
            return m;
        }
        throw ValidationError("matrix must be a nested array or an object with rows/cols/entries");
    } catch (const json::exception& e) {
        throw ValidationError(where + ": bad matrix: " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

json matrix_to_json(const Matrix& m) {
    if (m.rows() > 0 && m.cols() > 0) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j)
                row.push_back(m(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    }
    json obj;
    obj["rows"] = m.rows();
    obj["cols"] = m.cols();
    obj["entries"] = json::array();
    return obj;
}

std::vector<Matrix> vertex_matrices_from_json(const json& j, const Workspace& ws,
                                              const std::string& where) {
    if (!j.is_array() || j.size() != ws.quiver->vertex_count)
        throw ValidationError(where + ": expected one matrix per vertex");
    std::vector<Matrix> mats;
    for (std::size_t v = 0; v < j.size(); ++v)
        mats.push_back(matrix_from_json(j[v], ws.modulus, where + ", vertex " + std::to_string(v)));
    return mats;
}

int degree_from_key(const std::string& key, const std::string& where) {
    try {
        std::size_t used = 0;
        int deg = std::stoi(key, &used);
        if (used != key.size())
            throw std::invalid_argument(key);
        return deg;
    } catch (const std::exception&) {
        throw ValidationError(where + ": degree key '" + key + "' is not an integer");
    }
}

}  // namespace

Complex Workspace::complex_named(const std::string& name) const {
    if (name == "0")
        return Complex::zero_complex(quiver, modulus);
    auto it = complexes.find(name);
    if (it == complexes.end())
        throw ValidationError("unknown complex '" + name + "'");
    return it->second;
}

const ChainMap& Workspace::morphism_named(const std::string& name) const {
    auto it = morphisms.find(name);
    if (it == morphisms.end())
        throw ValidationError("unknown morphism '" + name + "'");
    return it->second;
}

ExceptionalCollection Workspace::collection_named(const std::string& name) const {
    auto it = collections.find(name);
    if (it == collections.end())
        throw ValidationError("unknown collection '" + name + "'");
    std::vector<Complex> blocks;
    for (const auto& ref : it->second)
        blocks.push_back(complex_named(ref));
    return check_exceptional_collection(std::move(blocks));
}

Workspace parse_workspace(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("workspace: parse error: ") + e.what());
    }
    Workspace ws;
    try {
        ws.modulus = j.at("modulus").get<u32>();
    } catch (const json::exception&) {
        throw ValidationError("workspace: missing or malformed 'modulus'");
    }
    if (!is_prime(ws.modulus))
        throw ValidationError("workspace: modulus must be prime, got " + std::to_string(ws.modulus));

    try {
        const auto& q = j.at("quiver");
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : q.at("edges"))
            edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
        ws.quiver = Quiver::validated(q.at("vertices").get<std::size_t>(), std::move(edges));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("workspace: bad quiver: ") + e.what());
    }

    const json reps_section = j.value("reps", json::object());
    for (const auto& [name, jr] : reps_section.items()) {
        if (name == "0")
            throw ValidationError("rep '0': the name is reserved for the zero object");
        try {
            auto dims = jr.at("dims").get<std::vector<std::size_t>>();
            const auto& jmaps = jr.at("edge_maps");
            if (!jmaps.is_array() || jmaps.size() != ws.quiver->edges.size())
                throw ValidationError("expected one edge map per quiver edge");
            std::vector<Matrix> mats;
            for (std::size_t e = 0; e < jmaps.size(); ++e)
                mats.push_back(matrix_from_json(jmaps[e], ws.modulus,
                                                "rep '" + name + "', edge " + std::to_string(e)));
            ws.reps.emplace(name, Rep::validated(ws.quiver, ws.modulus, dims, mats));
        } catch (const json::exception& e) {
            throw ValidationError("rep '" + name + "': " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("rep '" + name + "': " + e.what());
        }
    }

    const json complexes_section = j.value("complexes", json::object());
    for (const auto& [name, jc] : complexes_section.items()) {
        if (name == "0" || ws.reps.count(name))
            throw ValidationError("complex '" + name + "': name reserved or already used");
        try {
            std::map<int, Rep> terms;
            const json terms_section = jc.value("terms", json::object());
            for (const auto& [key, ref] : terms_section.items()) {
                int deg = degree_from_key(key, "complex '" + name + "'");
                auto it = ws.reps.find(ref.get<std::string>());
                if (it == ws.reps.end())
                    throw ValidationError("unknown rep '" + ref.get<std::string>() + "'");
                terms.emplace(deg, it->second);
            }
            std::map<int, RepMap> diffs;
            const json diffs_section = jc.value("differentials", json::object());
            for (const auto& [key, jm] : diffs_section.items()) {
                int deg = degree_from_key(key, "complex '" + name + "'");
                if (!terms.count(deg) || !terms.count(deg - 1))
                    throw ValidationError("differential at degree " + key + " has no endpoints");
                auto mats = vertex_matrices_from_json(jm, ws, "complex '" + name + "', d_" + key);
                diffs.emplace(deg, RepMap::validated(terms.at(deg), terms.at(deg - 1), mats));
            }
            ws.complexes.emplace(name, Complex::validated(ws.quiver, ws.modulus, terms, diffs));
        } catch (const json::exception& e) {
            throw ValidationError("complex '" + name + "': " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("complex '" + name + "': " + e.what());
        }
    }

    const json morphisms_section = j.value("morphisms", json::object());
    for (const auto& [name, jm] : morphisms_section.items()) {
        if (name == "0" || ws.reps.count(name) || ws.complexes.count(name))
            throw ValidationError("morphism '" + name + "': name reserved or already used");
        try {
            Complex src = ws.complex_named(jm.at("source").get<std::string>());
            Complex tgt = ws.complex_named(jm.at("target").get<std::string>());
            std::map<int, RepMap> comps;
            const json comps_section = jm.value("components", json::object());
            for (const auto& [key, jmm] : comps_section.items()) {
                int deg = degree_from_key(key, "morphism '" + name + "'");
                auto mats = vertex_matrices_from_json(jmm, ws, "morphism '" + name + "', degree " + key);
                comps.emplace(deg, RepMap::validated(src.term_at(deg), tgt.term_at(deg), mats));
            }
            ws.morphisms.emplace(name, ChainMap::validated(std::move(src), std::move(tgt), comps));
        } catch (const json::exception& e) {
            throw ValidationError("morphism '" + name + "': " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("morphism '" + name + "': " + e.what());
        }
    }

    const json collections_section = j.value("collections", json::object());
    for (const auto& [name, jc] : collections_section.items()) {
        if (name == "0" || ws.reps.count(name) || ws.complexes.count(name) || ws.morphisms.count(name))
            throw ValidationError("collection '" + name + "': name reserved or already used");
        try {
            auto refs = jc.get<std::vector<std::string>>();
            for (const auto& ref : refs)
                ws.complex_named(ref);  // must resolve
            ws.collections.emplace(name, std::move(refs));
        } catch (const json::exception& e) {
            throw ValidationError("collection '" + name + "': " + e.what());
        }
    }
    return ws;
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open workspace file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_workspace(buf.str());
}

std::string serialize_workspace(const Workspace& ws) {
    json j;
    j["modulus"] = ws.modulus;
    j["quiver"]["vertices"] = ws.quiver->vertex_count;
    j["quiver"]["edges"] = json::array();
    for (auto [s, t] : ws.quiver->edges)
        j["quiver"]["edges"].push_back(json::array({s, t}));

    json reps = json::object();
    for (const auto& [name, rep] : ws.reps) {
        json jr;
        jr["dims"] = rep.dims;
        jr["edge_maps"] = json::array();
        for (const auto& m : rep.edge_maps)
            jr["edge_maps"].push_back(matrix_to_json(m));
        reps[name] = std::move(jr);
    }
    j["reps"] = std::move(reps);

    json complexes = json::object();
    for (const auto& [name, cx] : ws.complexes) {
        json jc;
        jc["terms"] = json::object();
        for (const auto& [deg, rep] : cx.terms) {
            // find the rep name (terms always refer to named reps on load)
            std::string ref;
            for (const auto& [rname, r] : ws.reps)
                if (r == rep) {
                    ref = rname;
                    break;
                }
            if (ref.empty())
                throw ValidationError("serialize: complex '" + name + "' uses an unnamed rep");
            jc["terms"][std::to_string(deg)] = ref;
        }
        jc["differentials"] = json::object();
        for (const auto& [deg, d] : cx.diffs) {
            json mats = json::array();
            for (const auto& m : d.components)
                mats.push_back(matrix_to_json(m));
            jc["differentials"][std::to_string(deg)] = std::move(mats);
        }
        complexes[name] = std::move(jc);
    }
    j["complexes"] = std::move(complexes);

    json morphisms = json::object();
    for (const auto& [name, f] : ws.morphisms) {
        json jm;
        auto complex_name = [&](const Complex& c) -> std::string {
            if (c.is_zero_object())
                return "0";
            for (const auto& [cname, cc] : ws.complexes)
                if (cc == c)
                    return cname;
            throw ValidationError("serialize: morphism '" + name + "' endpoint is unnamed");
        };
        jm["source"] = complex_name(f.source);
        jm["target"] = complex_name(f.target);
        jm["components"] = json::object();
        for (const auto& [deg, comp] : f.components) {
            json mats = json::array();
            for (const auto& m : comp.components)
                mats.push_back(matrix_to_json(m));
            jm["components"][std::to_string(deg)] = std::move(mats);
        }
        morphisms[name] = std::move(jm);
    }
    j["morphisms"] = std::move(morphisms);
    j["collections"] = ws.collections;
    return j.dump(2) + "\n";
}

void save_workspace(const Workspace& ws, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write workspace file '" + path + "'");
    out << serialize_workspace(ws);
}

namespace {

const char* kA2Json = R"JSON({
  "modulus": 2,
  "quiver": {"vertices": 2, "edges": [[0, 1]]},
  "reps": {
    "P1": {"dims": [1, 1], "edge_maps": [[[1]]]},
    "P2": {"dims": [0, 1], "edge_maps": [{"rows": 1, "cols": 0, "entries": []}]},
    "S1": {"dims": [1, 0], "edge_maps": [{"rows": 0, "cols": 1, "entries": []}]}
  },
  "complexes": {
    "P1c": {"terms": {"0": "P1"}},
    "P2c": {"terms": {"0": "P2"}},
    "S1c": {"terms": {"0": "S1"}},
    "S1_m1": {"terms": {"-1": "S1"}},
    "S2_m1": {"terms": {"-1": "P2"}},
    "Y": {"terms": {"1": "P2", "0": "S1", "-1": "S1"}}
  },
  "morphisms": {
    "f": {"source": "0", "target": "Y"},
    "incl_P2_P1": {"source": "P2c", "target": "P1c",
                   "components": {"0": [{"rows": 1, "cols": 0, "entries": []}, [[1]]]}},
    "db": {"source": "S1_m1", "target": "S2_m1"}
  },
  "collections": {"std": ["P2c", "P1c"]}
})JSON";

const char* kA3Json = R"JSON({
  "modulus": 2,
  "quiver": {"vertices": 3, "edges": [[0, 1], [1, 2]]},
  "reps": {
    "P1": {"dims": [1, 1, 1], "edge_maps": [[[1]], [[1]]]},
    "P2": {"dims": [0, 1, 1], "edge_maps": [{"rows": 1, "cols": 0, "entries": []}, [[1]]]},
    "P3": {"dims": [0, 0, 1],
           "edge_maps": [{"rows": 0, "cols": 0, "entries": []}, {"rows": 1, "cols": 0, "entries": []}]},
    "S1": {"dims": [1, 0, 0],
           "edge_maps": [{"rows": 0, "cols": 1, "entries": []}, {"rows": 0, "cols": 0, "entries": []}]},
    "S2": {"dims": [0, 1, 0],
           "edge_maps": [{"rows": 1, "cols": 0, "entries": []}, {"rows": 0, "cols": 1, "entries": []}]}
  },
  "complexes": {
    "P1c": {"terms": {"0": "P1"}},
    "P2c": {"terms": {"0": "P2"}},
    "P3c": {"terms": {"0": "P3"}},
    "S1c": {"terms": {"0": "S1"}},
    "S2c": {"terms": {"0": "S2"}}
  },
  "morphisms": {
    "to_S1": {"source": "0", "target": "S1c"}
  },
  "collections": {"std": ["P3c", "P2c", "P1c"]}
})JSON";

}  // namespace

Workspace builtin_a2_workspace() { return parse_workspace(kA2Json); }
Workspace builtin_a3_workspace() { return parse_workspace(kA3Json); }

std::string homology_summary(const Complex& x) {
    auto h = homology_all(x);
    if (h.empty())
        return "0";
    std::ostringstream os;
    for (const auto& [n, rep] : h)
        os << "H_" << n << "=" << rep.str() << " ";
    std::string s = os.str();
    s.pop_back();
    return s;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (c == '"') ? '\'' : c;
    return out;
}

}  // namespace

std::string tower_to_dot(const Tower& t, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  node [shape=box];\n";
    auto node = [&](const std::string& id, const Complex& c, const std::string& label) {
        os << "  " << id << " [label=\"" << dot_escape(label + "\\n" + homology_summary(c)) << "\"];\n";
    };
    node("src", t.base.source, "X");
    for (std::size_t j = 0; j < t.stages.size(); ++j)
        node("z" + std::to_string(j), t.stages[j],
             "Z[" + std::to_string(t.levels.at(t.stages.size() - 1 - j)) + "]");
    node("tgt", t.base.target, "Y");
    auto edge = [&](const std::string& a, const std::string& b, std::size_t map_idx) {
        os << "  " << a << " -> " << b << " [label=\"cofib in " << t.certs[map_idx].window.str()
           << (t.certs[map_idx].ok ? "" : " FAILED") << "\"];\n";
    };
    if (t.stages.empty()) {
        edge("src", "tgt", 0);
    } else {
        edge("src", "z0", 0);
        for (std::size_t j = 0; j + 1 < t.stages.size(); ++j)
            edge("z" + std::to_string(j), "z" + std::to_string(j + 1), j + 1);
        edge("z" + std::to_string(t.stages.size() - 1), "tgt", t.maps.size() - 1);
    }
    os << "}\n";
    return os.str();
}

std::string weaved_tower_to_dot(const WeavedTower& t, const ExceptionalCollection& coll,
                                const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  node [shape=box];\n";
    os << "  t0 [label=\"0\"];\n";
    for (std::size_t j = 0; j < t.stages.size(); ++j)
        os << "  t" << j + 1 << " [label=\"" << dot_escape(homology_summary(t.stages[j])) << "\"];\n";
    os << "  y [label=\"" << dot_escape("Y\\n" + homology_summary(t.target)) << "\"];\n";
    for (std::size_t j = 0; j < t.maps.size(); ++j) {
        std::string a = "t" + std::to_string(j);
        std::string b = j + 1 < t.maps.size() ? "t" + std::to_string(j + 1) : "y";
        os << "  " << a << " -> " << b << " [label=\"cofib in thick(E_" << t.block_of_map[j] + 1
           << ")" << (t.cert_ok.empty() || t.cert_ok[j] ? "" : " FAILED") << "\"];\n";
    }
    (void)coll;  // collection kept in the signature for future block labels
    os << "}\n";
    return os.str();
}

}  // namespace qts
