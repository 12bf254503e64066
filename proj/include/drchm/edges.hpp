#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "drchm/model.hpp"
#include "drchm/paths.hpp"

namespace drchm {

struct Edge {
    std::size_t vertex_index = 0;
    std::size_t interaction_index = 0;
    double activation = 0.0;
    double deactivation = 0.0;
    bool operator==(const Edge&) const = default;
};

// indexed pairing; edges ordered by (vertex_index, interaction_index)
std::vector<Edge> build_edges(const ModelParams& p, const std::vector<Vertex>& vertices,
                              const std::vector<Interaction>& interactions);
std::vector<Edge> build_edges_brute_force(const ModelParams& p, const std::vector<Vertex>& vertices,
                                          const std::vector<Interaction>& interactions);

StepPath edge_count_path(const std::vector<Edge>& edges);

struct PmPaths {
    StepPath plus;
    StepPath minus;
};
PmPaths pm_edge_count_paths(const std::vector<Edge>& edges);
PmPaths pm_edge_count_paths(const ModelParams& p, const std::vector<Vertex>& vertices,
                            const std::vector<Interaction>& interactions);

struct MarkSplit {
    StepPath low;
    StepPath high;
};
double default_mark_threshold(double n);
MarkSplit mark_split_paths(const std::vector<Edge>& edges, const std::vector<Vertex>& vertices,
                           double u_threshold);
MarkSplit mark_split_paths(const ModelParams& p, const std::vector<Vertex>& vertices,
                           const std::vector<Interaction>& interactions, double u_threshold);

// direct recount, used as an oracle
double count_active(const std::vector<Edge>& edges, double t);

}  // namespace drchm
