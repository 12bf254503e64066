#include "drchm/edges.hpp"

#include <algorithm>
#include <cmath>

namespace drchm {

namespace {

// u in (2^-(k+1), 2^-k]
int weight_band(double u) {
    int e = 0;
    const double m = std::frexp(u, &e);  // u = m 2^e, m in [0.5,1)
    return m == 0.5 ? -e + 1 : -e;
}

}  // namespace

std::vector<Edge> build_edges(const ModelParams& p, const std::vector<Vertex>& vertices,
                              const std::vector<Interaction>& interactions) {
    struct Band {
        std::vector<double> x;
        std::vector<std::size_t> idx;
        double reach = 0.0;  // beta * u_lo^-gamma
    };
    std::vector<Band> bands;
    std::vector<double> vfac(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const auto& v = vertices[k];
        vfac[k] = p.beta * std::pow(v.u, -p.gamma);
        const auto j = static_cast<std::size_t>(weight_band(v.u));
        if (bands.size() <= j) bands.resize(j + 1);
        bands[j].idx.push_back(k);
    }
    for (std::size_t j = 0; j < bands.size(); ++j) {
        auto& bd = bands[j];
        if (bd.idx.empty()) continue;
        std::sort(bd.idx.begin(), bd.idx.end(),
                  [&](std::size_t a, std::size_t b) { return vertices[a].x < vertices[b].x; });
        bd.x.reserve(bd.idx.size());
        double umin = 1.0;
        for (auto k : bd.idx) {
            bd.x.push_back(vertices[k].x);
            umin = std::min(umin, vertices[k].u);
        }
        bd.reach = p.beta * std::pow(umin, -p.gamma);
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        const auto& in = interactions[i];
        const double wfac = std::pow(in.w, -p.gamma_prime);
        for (const auto& bd : bands) {
            if (bd.idx.empty()) continue;
            const double R = bd.reach * wfac;
            auto it = std::lower_bound(bd.x.begin(), bd.x.end(), in.z - R);
            for (; it != bd.x.end() && *it <= in.z + R; ++it) {
                const std::size_t k = bd.idx[static_cast<std::size_t>(it - bd.x.begin())];
                const auto& v = vertices[k];
                if (v.b <= in.r && in.r <= v.b + v.l && std::abs(v.x - in.z) <= vfac[k] * wfac)
                    edges.push_back({k, i, in.r, v.b + v.l});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.vertex_index != b.vertex_index ? a.vertex_index < b.vertex_index
                                                : a.interaction_index < b.interaction_index;
    });
    return edges;
}

std::vector<Edge> build_edges_brute_force(const ModelParams& p, const std::vector<Vertex>& vertices,
                                          const std::vector<Interaction>& interactions) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < vertices.size(); ++k)
        for (std::size_t i = 0; i < interactions.size(); ++i)
            if (is_edge(p, vertices[k], interactions[i]))
                edges.push_back({k, i, interactions[i].r, vertices[k].death()});
    return edges;
}

StepPath edge_count_path(const std::vector<Edge>& edges) {
    double init = 0.0;
    std::vector<std::pair<double, double>> ev;
    for (const auto& e : edges) {
        if (e.activation > 1.0 || e.deactivation < 0.0) continue;
        if (e.activation <= 0.0) {
            if (e.deactivation > 0.0) init += 1.0;
        } else {
            ev.emplace_back(e.activation, 1.0);
        }
        if (e.deactivation > 0.0 && e.deactivation <= 1.0 && e.activation < e.deactivation)
            ev.emplace_back(e.deactivation, -1.0);
    }
    return StepPath::from_events(init, std::move(ev));
}

PmPaths pm_edge_count_paths(const std::vector<Edge>& edges) {
    double ip = 0.0, im = 0.0;
    std::vector<std::pair<double, double>> ep, em;
    for (const auto& e : edges) {
        if (e.deactivation < 0.0) continue;
        if (e.activation <= 0.0)
            ip += 1.0;
        else if (e.activation <= 1.0)
            ep.emplace_back(e.activation, 1.0);
        if (e.deactivation <= 0.0)
            im += 1.0;
        else if (e.deactivation <= 1.0)
            em.emplace_back(e.deactivation, 1.0);
    }
    return {StepPath::from_events(ip, std::move(ep)), StepPath::from_events(im, std::move(em))};
}

PmPaths pm_edge_count_paths(const ModelParams& p, const std::vector<Vertex>& vertices,
                            const std::vector<Interaction>& interactions) {
    return pm_edge_count_paths(build_edges(p, vertices, interactions));
}

double default_mark_threshold(double n) { return std::pow(n, -2.0 / 3.0); }

MarkSplit mark_split_paths(const std::vector<Edge>& edges, const std::vector<Vertex>& vertices,
                           double u_threshold) {
    std::vector<Edge> lo, hi;
    for (const auto& e : edges) (vertices[e.vertex_index].u < u_threshold ? lo : hi).push_back(e);
    return {edge_count_path(lo), edge_count_path(hi)};
}

MarkSplit mark_split_paths(const ModelParams& p, const std::vector<Vertex>& vertices,
                           const std::vector<Interaction>& interactions, double u_threshold) {
    return mark_split_paths(build_edges(p, vertices, interactions), vertices, u_threshold);
}

double count_active(const std::vector<Edge>& edges, double t) {
    double c = 0.0;
    for (const auto& e : edges)
        if (e.activation <= t && t < e.deactivation) c += 1.0;
    return c;
}

}  // namespace drchm
