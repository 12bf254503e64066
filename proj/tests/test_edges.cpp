#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "drchm/edges.hpp"
#include "drchm/paths.hpp"
#include "drchm/rng.hpp"
#include "drchm/sampler.hpp"

using namespace drchm;

namespace {

struct Instance {
    ModelParams p;
    std::vector<Vertex> v;
    std::vector<Interaction> i;
};

Instance small_instance(std::uint64_t s, double n = 5.0, double gamma = 0.2) {
    Instance in;
    in.p = ModelParams{0.25, gamma, 0.2, n};
    SamplerConfig c;
    c.auto_w_min = true;
    const auto vs = sample_vertices(in.p, c, s);
    in.v = vs.vertices;
    in.i = sample_interactions(in.p, c, vs, s).interactions;
    return in;
}

}  // namespace

TEST_CASE("single pair examples") {
    const ModelParams p{0.25, 0.2, 0.2, 1};
    const std::vector<Vertex> v{{0.0, 1.0, 0.0, 1.0}};
    auto e = build_edges(p, v, {Interaction{0.2, 1.0, 0.5}});
    REQUIRE(e.size() == 1);
    CHECK(e[0].activation == 0.5);
    CHECK(e[0].deactivation == 1.0);
    CHECK(build_edges(p, v, {Interaction{0.2, 1.0, 1.5}}).empty());
}

TEST_CASE("hand-enumerated path") {
    std::vector<Edge> e{{0, 0, -0.5, 0.5}, {0, 1, 0.2, 2.0}};
    const auto s = edge_count_path(e);
    CHECK(s(0.0) == 1);
    CHECK(s(0.1) == 1);
    CHECK(s(0.2) == 2);
    CHECK(s(0.45) == 2);
    CHECK(s(0.5) == 1);
    CHECK(s(1.0) == 1);
    CHECK(sup_norm(edge_count_path({})) == 0.0);
}

TEST_CASE("indexed pairing equals brute force") {
    int checked = 0;
    for (std::uint64_t s = 0; checked < 50; ++s) {
        const double gamma = s % 2 ? 0.2 : 0.7;
        const auto in = small_instance(s, 2.0 + double(s % 5), gamma);
        if (in.v.size() + in.i.size() > 200) continue;
        ++checked;
        CHECK(build_edges(in.p, in.v, in.i) == build_edges_brute_force(in.p, in.v, in.i));
    }
    // larger instances too, where the band index matters more
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto in = small_instance(1000 + s, 40.0, 0.7);
        CHECK(build_edges(in.p, in.v, in.i) == build_edges_brute_force(in.p, in.v, in.i));
    }
}

TEST_CASE("path equals a direct recount") {
    Rng rng(4, 0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto in = small_instance(s, 10.0);
        const auto e = build_edges(in.p, in.v, in.i);
        const auto path = edge_count_path(e);
        for (int k = 0; k < 100; ++k) {
            const double t = rng.uniform();
            REQUIRE(path(t) == count_active(e, t));
        }
        // also right at the event times
        for (const auto& x : e) {
            if (x.activation > 0.0 && x.activation <= 1.0) REQUIRE(path(x.activation) == count_active(e, x.activation));
            if (x.deactivation > 0.0 && x.deactivation <= 1.0)
                REQUIRE(path(x.deactivation) == count_active(e, x.deactivation));
        }
    }
}

TEST_CASE("edge activation windows follow the connection rule") {
    const auto in = small_instance(8, 10.0);
    for (const auto& x : build_edges(in.p, in.v, in.i)) {
        const auto& v = in.v[x.vertex_index];
        const auto& i = in.i[x.interaction_index];
        REQUIRE(is_edge(in.p, v, i));
        CHECK(x.activation == i.r);
        CHECK(x.deactivation == v.death());
    }
}

TEST_CASE("plus minus decomposition") {
    Rng rng(6, 0);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto in = small_instance(s, 10.0, s % 2 ? 0.2 : 0.7);
        const auto e = build_edges(in.p, in.v, in.i);
        const auto path = edge_count_path(e);
        const auto pm = pm_edge_count_paths(e);
        for (int k = 0; k < 100; ++k) {
            const double t = rng.uniform();
            REQUIRE(pm.plus(t) - pm.minus(t) == path(t));
        }
        for (std::size_t k = 1; k < pm.plus.size(); ++k) REQUIRE(pm.plus.values[k] >= pm.plus.values[k - 1]);
        for (std::size_t k = 1; k < pm.minus.size(); ++k) REQUIRE(pm.minus.values[k] >= pm.minus.values[k - 1]);
        const auto pm2 = pm_edge_count_paths(in.p, in.v, in.i);
        CHECK(pm2.plus.values == pm.plus.values);
    }
}

TEST_CASE("plus minus single edge") {
    // vertex dies at 0.5, interaction at 0.2
    const ModelParams p{0.25, 0.2, 0.2, 1};
    const auto pm = pm_edge_count_paths(p, {Vertex{0.0, 1.0, -0.1, 0.6}}, {Interaction{0.1, 1.0, 0.2}});
    CHECK(pm.plus(0.19) == 0);
    CHECK(pm.plus(0.2) == 1);
    CHECK(pm.minus(0.49) == 0);
    CHECK(pm.minus(0.5) == 1);
    CHECK(pm.plus(1.0) - pm.minus(1.0) == 0);
}

TEST_CASE("mark split") {
    Rng rng(7, 0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto in = small_instance(s, 10.0);
        const auto e = build_edges(in.p, in.v, in.i);
        const auto path = edge_count_path(e);
        const auto one = mark_split_paths(e, in.v, 1.01);
        const auto zero = mark_split_paths(e, in.v, 0.0);
        const auto mid = mark_split_paths(in.p, in.v, in.i, default_mark_threshold(in.p.n));
        for (int k = 0; k < 100; ++k) {
            const double t = rng.uniform();
            REQUIRE(one.low(t) == path(t));
            REQUIRE(one.high(t) == 0);
            REQUIRE(zero.low(t) == 0);
            REQUIRE(zero.high(t) == path(t));
            REQUIRE(mid.low(t) + mid.high(t) == path(t));
        }
    }
    CHECK(default_mark_threshold(1000.0) == doctest::Approx(0.01));
}

TEST_CASE("step path construction") {
    const auto p = StepPath::from_events(2.0, {{0.5, 1.0}, {0.25, -1.0}, {0.5, 2.0}});
    CHECK(p(0.0) == 2.0);
    CHECK(p(0.25) == 1.0);
    CHECK(p(0.5) == 4.0);
    CHECK(p.size() == 3);
    CHECK_THROWS(StepPath::from_events(0.0, {{0.0, 1.0}}));
}

TEST_CASE("normalization") {
    const auto p = StepPath::from_events(2.0, {{0.5, 1.0}});
    const auto id = normalize_path(p, 0.0, 1.0);
    CHECK(sup_norm_distance(id, p) == 0.0);
    CHECK(sup_norm(normalize_path(StepPath::constant(3.0), 3.0, 7.0)) == 0.0);
    StepPath scaled = p;
    for (auto& v : scaled.values) v *= 4.0;
    CHECK(sup_norm_distance(normalize_path(scaled, 4.0 * 1.5, 4.0), normalize_path(p, 1.5, 1.0)) ==
          doctest::Approx(0.0));
    CHECK_THROWS(normalize_path(p, 0.0, 0.0));
}

TEST_CASE("sup norm distance") {
    const auto a = StepPath::from_events(1.0, {{0.3, 1.0}, {0.7, -2.0}});
    CHECK(sup_norm_distance(a, a) == 0.0);
    CHECK(sup_norm_distance(StepPath::constant(0.0), StepPath::constant(-2.5)) == 2.5);
    Rng rng(2, 0);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::pair<double, double>> ea, eb;
        for (int k = 0; k < 8; ++k) ea.emplace_back(rng.uniform_oc(), rng.uniform(-1, 1));
        for (int k = 0; k < 8; ++k) eb.emplace_back(rng.uniform_oc(), rng.uniform(-1, 1));
        const auto x = StepPath::from_events(rng.uniform(), ea), y = StepPath::from_events(rng.uniform(), eb);
        auto lx = LinearPath::from_step(x);
        lx.slopes.assign(lx.slopes.size(), 0.0);
        for (auto& s : lx.slopes) s = rng.uniform(-3, 3);
        // rebuild values so the linear path is continuous apart from its own jumps
        double grid_max = 0.0, grid_max_s = 0.0;
        for (int k = 0; k <= 10000; ++k) {
            const double t = k / 10000.0;
            grid_max = std::max(grid_max, std::abs(x(t) - y(t)));
            grid_max_s = std::max(grid_max_s, std::abs(lx(t) - y(t)));
        }
        CHECK(sup_norm_distance(x, y) == doctest::Approx(grid_max));
        // grid misses the left limits only by O(grid spacing * slope)
        CHECK(sup_norm_distance(lx, y) >= grid_max_s - 1e-12);
        CHECK(sup_norm_distance(lx, y) <= grid_max_s + 3.0 * 1e-4 + 1e-12);
    }
}
