#include "hannerlab/io.hpp"

#include "hannerlab/flags.hpp"

#include <json.hpp>

namespace hannerlab {

using nlohmann::ordered_json;

namespace {

ordered_json parse_text(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

ordered_json vec_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

ordered_json vecs_json(const std::vector<Vec>& vs) {
    ordered_json a = ordered_json::array();
    for (const auto& v : vs) a.push_back(vec_json(v));
    return a;
}

ordered_json graph_obj(const Graph& g) {
    ordered_json edges = ordered_json::array();
    for (auto [i, j] : g.edges()) edges.push_back({i + 1, j + 1});
    return ordered_json{{"n", g.n}, {"edges", edges}};
}

const char* state_name(FaceKind k) {
    switch (k) {
    case FaceKind::Empty: return "empty";
    case FaceKind::Whole: return "whole";
    case FaceKind::Proper: break;
    }
    return "proper";
}

ordered_json face_node(const HannerExpr& h, int i, Face f) {
    const HannerNode& nd = h.node(i);
    if (nd.kind == NodeKind::Leaf) {
        const char* s = "empty";
        switch (f.at(nd.coord)) {
        case LeafState::Empty: s = "empty"; break;
        case LeafState::Plus: s = "+"; break;
        case LeafState::Minus: s = "-"; break;
        case LeafState::Whole: s = "whole"; break;
        }
        return ordered_json{{"coord", nd.coord + 1}, {"state", s}};
    }
    return ordered_json{{"op", nd.kind == NodeKind::L1 ? "+1" : "+inf"},
                        {"state", state_name(kind_at(h, i, f))},
                        {"dim", face_dim_at(h, i, f)},
                        {"left", face_node(h, nd.left, f)},
                        {"right", face_node(h, nd.right, f)}};
}

std::string sigma_text(const Sigma& s) {
    std::string out;
    for (auto x : s) out += static_cast<char>('0' + x);
    return out;
}

} // namespace

Graph parse_graph_json(const std::string& text) {
    ordered_json j = parse_text(text);
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw FormatError("graph JSON needs an integer field \"n\"");
    int n = j["n"].get<int>();
    if (n < 1 || n > HannerExpr::kMaxDim) throw FormatError("graph size out of range");
    Graph g(n);
    if (!j.contains("edges")) return g;
    if (!j["edges"].is_array()) throw FormatError("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw FormatError("each edge must be a pair of vertex numbers");
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 1 || a > n || b < 1 || b > n || a == b) throw FormatError("edge endpoint out of range or loop");
        g.add_edge(a - 1, b - 1);
    }
    return g;
}

std::string graph_json(const Graph& g) { return graph_obj(g).dump(2); }

std::string graph_report_json(const HannerExpr& h) {
    Graph g = graph_of(h);
    auto lists = [](const std::vector<std::uint32_t>& sets) {
        ordered_json a = ordered_json::array();
        for (auto s : sets) {
            ordered_json m = ordered_json::array();
            for (int j = 0; j < 32; ++j)
                if ((s >> j) & 1u) m.push_back(j + 1);
            a.push_back(m);
        }
        return a;
    };
    return ordered_json{{"expr", h.to_string()},
                        {"graph", graph_obj(g)},
                        {"independent_sets", lists(maximal_independent_sets(g))},
                        {"cliques", lists(maximal_cliques(g))}}
        .dump(2);
}

std::string polytope_json(const VPolytope& p) {
    return ordered_json{{"n", p.n}, {"vertices", vecs_json(p.vertices)}}.dump(2);
}

std::string polytope_json(const HPolytope& p) {
    return ordered_json{{"n", p.n}, {"normals", vecs_json(p.normals)}}.dump(2);
}

VPolytope parse_vpolytope_json(const std::string& text) {
    ordered_json j = parse_text(text);
    if (!j.is_object() || !j.contains("n") || !j.contains("vertices"))
        throw FormatError("polytope JSON needs \"n\" and \"vertices\"");
    VPolytope p{j["n"].get<int>(), {}};
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || static_cast<int>(v.size()) != p.n) throw FormatError("vertex of the wrong dimension");
        Vec x(static_cast<std::size_t>(p.n));
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_string()) throw FormatError("coordinates must be \"p/q\" strings");
            try {
                x[k] = parse_rat(v[k].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw FormatError(std::string("bad coordinate: ") + e.what());
            }
        }
        p.vertices.push_back(std::move(x));
    }
    return p;
}

std::string build_bundle_json(const HannerExpr& h) {
    int n = h.dim();
    std::vector<Vec> v = vertex_vectors(h), pv = polar_vertex_vectors(h);
    Rat vol = hanner_volume(h), pvol = hanner_volume(polar_expr(h));
    Rat flags = factorial(n);
    for (int i = 0; i < n; ++i) flags *= 2;
    ordered_json counts{{"vertices", v.size()},
                        {"facets", pv.size()},
                        {"faces", enumerate_faces(h).size()},
                        {"flags", to_string(flags)}};
    ordered_json j{{"expr", h.to_string()},
                   {"n", n},
                   {"polar_expr", polar_expr(h).to_string()},
                   {"graph", graph_obj(graph_of(h))},
                   {"vertices", vecs_json(v)},
                   {"polar_vertices", vecs_json(pv)},
                   {"counts", counts},
                   {"volume", to_string(vol)},
                   {"polar_volume", to_string(pvol)},
                   {"volume_product", to_string(vol * pvol)}};
    return j.dump(2);
}

std::string face_tree_json(const HannerExpr& h, Face f) { return face_node(h, h.root(), f).dump(); }

std::string faces_json(const HannerExpr& h) {
    FaceLattice lat(h);
    int n = h.dim();
    ordered_json faces = ordered_json::array();
    for (std::size_t i = 0; i < lat.size(); ++i) {
        Face f = lat.face(i);
        faces.push_back(ordered_json{{"index", i},
                                     {"label", face_label(h, f)},
                                     {"dim", lat.dim(i)},
                                     {"centroid", vec_json(lat.centroid(i))},
                                     {"dual", face_label(polar_expr(h), dual_face(f, n))},
                                     {"tree", face_node(h, h.root(), f)}});
    }
    return ordered_json{{"expr", h.to_string()}, {"count", lat.size()}, {"faces", faces}}.dump(2);
}

std::string flags_json(const HannerExpr& h) {
    ordered_json flags = ordered_json::array();
    for (const Flag& fl : enumerate_flags(h)) {
        ordered_json chain = ordered_json::array();
        for (Face f : fl.faces) chain.push_back(face_label(h, f));
        flags.push_back(ordered_json{{"type", sigma_text(fl.type)}, {"faces", chain}});
    }
    return ordered_json{{"expr", h.to_string()}, {"count", flags.size()}, {"flags", flags}}.dump(2);
}

} // namespace hannerlab
