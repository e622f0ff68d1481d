#pragma once

#include <string>
#include <vector>

#include "contour/diagram.hpp"

namespace contour {

/// Vertex- and edge-labelled directed graph used for canonical labelling.
struct LabeledGraph {
    struct Edge {
        int from;
        int to;
        std::string label;
    };
    std::vector<std::string> labels;
    std::vector<Edge> edges;

    int add_node(std::string label) {
        labels.push_back(std::move(label));
        return static_cast<int>(labels.size()) - 1;
    }
    void add_edge(int from, int to, std::string label) { edges.push_back({from, to, std::move(label)}); }
};

/// Lexicographically smallest certificate over all colour-refined labellings.
/// Equal certificates iff the graphs are isomorphic.
std::string canonical_certificate(const LabeledGraph& g);

/// Label-preserving graph encoding of a diagram that ignores ids and the
/// stored direction of arcs.
LabeledGraph diagram_graph(const SingularDiagram& d);

std::string canonical_form(const SingularDiagram& d);
bool isomorphic(const SingularDiagram& a, const SingularDiagram& b);

}  // namespace contour
