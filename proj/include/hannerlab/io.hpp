#ifndef HANNERLAB_IO_HPP
#define HANNERLAB_IO_HPP

#include "hannerlab/faces.hpp"
#include "hannerlab/geometry.hpp"
#include "hannerlab/hanner.hpp"

#include <stdexcept>
#include <string>

namespace hannerlab {

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// {"n": N, "edges": [[i, j], ...]} with 1-based vertices.
Graph parse_graph_json(const std::string& text);
std::string graph_json(const Graph& g);

// Tree, graph, maximal independent sets and maximal cliques (1-based vertex lists).
std::string graph_report_json(const HannerExpr& h);

// Exact coordinates as "p/q" strings.
std::string polytope_json(const VPolytope& p);
std::string polytope_json(const HPolytope& p);
VPolytope parse_vpolytope_json(const std::string& text);

// Tree, graph, vertices of H and its polar, counts and volumes.
std::string build_bundle_json(const HannerExpr& h);

// One entry per proper face; "tree" mirrors the expression with one state per node.
std::string faces_json(const HannerExpr& h);
std::string face_tree_json(const HannerExpr& h, Face f);

// Flags as chains of face labels with their type at the root.
std::string flags_json(const HannerExpr& h);

} // namespace hannerlab

#endif
