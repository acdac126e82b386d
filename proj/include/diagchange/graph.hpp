#pragma once

#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "datum.hpp"

namespace dc {

struct GraphEdge {
    int from;
    CycleRef cycle;
    int to;
};

struct DatumGraph {
    std::vector<Datum> vertices;  // BFS discovery order
    std::vector<GraphEdge> edges;

    int index_of(const Datum& d) const {
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (vertices[i] == d) return static_cast<int>(i);
        }
        return -1;
    }
};

// Closure of d under all staircase moves of both sides.
inline DatumGraph enumerate_graph(const Datum& start, std::size_t max_vertices) {
    DatumGraph g;
    std::map<Datum, int> index;
    std::deque<int> queue;
    auto visit = [&](const Datum& d) {
        auto it = index.find(d);
        if (it != index.end()) return it->second;
        if (g.vertices.size() >= max_vertices) {
            throw VertexBudgetExceeded("more than " + std::to_string(max_vertices) + " vertices");
        }
        int id = static_cast<int>(g.vertices.size());
        g.vertices.push_back(d);
        index.emplace(d, id);
        queue.push_back(id);
        return id;
    };
    visit(start);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        Datum d = g.vertices[v];
        for (const CycleRef& c : all_cycles(d)) {
            int w = visit(act_move(d, c));
            g.edges.push_back({v, c, w});
        }
    }
    return g;
}

inline std::string graph_to_dot(const DatumGraph& g) {
    std::ostringstream os;
    os << "digraph datum_graph {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Datum& d = g.vertices[i];
        os << "  v" << i << " [label=\"" << d.left().cycle_string(" ") << "\\n"
           << d.right().cycle_string(" ") << "\"];\n";
    }
    for (const GraphEdge& e : g.edges) {
        os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.cycle.str() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace dc
