#pragma once

// Hand-rolled generators shared by the property-style tests. Everything is
// seeded, so a failing case reproduces by rerunning the binary.

#include <string>
#include <utility>
#include <vector>

#include "scdg/grd.hpp"
#include "scdg/rng.hpp"

namespace testgen {

inline std::vector<std::string> group_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
    return names;
}

inline scdg::GrdMatrix random_grd(scdg::Rng& rng, const std::vector<std::string>& order,
                                  double density = 0.2, std::uint32_t weight_min = 1,
                                  std::uint32_t weight_max = 20) {
    scdg::GrdMatrix matrix{scdg::SquareMatrix<std::uint32_t>(order.size()), order};
    for (auto& cell : matrix.weights.cells()) {
        if (rng.unit() < density) cell = rng.range_u32(weight_min, weight_max);
    }
    return matrix;
}

inline scdg::GrdMatrix random_nonempty_grd(scdg::Rng& rng, const std::vector<std::string>& order,
                                           double density = 0.2, std::uint32_t weight_min = 1,
                                           std::uint32_t weight_max = 20) {
    for (;;) {
        scdg::GrdMatrix matrix = random_grd(rng, order, density, weight_min, weight_max);
        if (matrix.has_edges()) return matrix;
    }
}

// Random trace graph for round-trip tests: node ids are sparse on purpose.
inline scdg::ScdGraph random_graph(scdg::Rng& rng, std::size_t max_nodes = 12,
                                   std::size_t max_edges = 30) {
    scdg::ScdGraph graph;
    const std::size_t nodes = 1 + rng.below(max_nodes);
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
        id += 1 + std::uint32_t(rng.below(3));
        graph.calls.push_back({id, "call_" + std::to_string(id), std::uint32_t(rng.below(4)),
                               std::uint32_t(1 + rng.below(3))});
    }
    const std::size_t edges = rng.below(max_edges + 1);
    for (std::size_t e = 0; e < edges; ++e) {
        const auto& src = graph.calls[rng.below(graph.calls.size())];
        const auto& dst = graph.calls[rng.below(graph.calls.size())];
        graph.edges.push_back({src.id, std::uint32_t(1 + rng.below(src.out_args)), dst.id,
                               std::uint32_t(1 + rng.below(dst.in_args ? dst.in_args : 1))});
    }
    return graph;
}

}  // namespace testgen
