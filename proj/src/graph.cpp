#include "rgl/graph.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rgl {

GraphSample sample_gnp(int n, double p, RngStream rng, bool allow_degenerate) {
    if (n < 2) throw std::invalid_argument("sample_gnp: n must be >= 2");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_gnp: p outside [0,1]");
    if ((p == 0.0 || p == 1.0) && !allow_degenerate)
        throw std::invalid_argument("sample_gnp: p in {0,1} requires degenerate mode");

    GraphSample g(n, p, rng.seed(), rng.stream_id(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_bernoulli(p)) g.set_edge(i, j, true);
    g.recompute_degrees();
    return g;
}

std::vector<int> switchable_set(const GraphSample& g, int i, int j) {
    std::vector<int> idx;
    for (int k = 0; k < g.n(); ++k) {
        if (k == i || k == j) continue;
        if (g.edge(k, i) != g.edge(k, j)) idx.push_back(k);
    }
    return idx;
}

GraphSample switch_neighbors(const GraphSample& g, int i, int j, RngStream& rng) {
    const int n = g.n();
    if (i == j) throw std::invalid_argument("switch_neighbors: i == j");
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("switch_neighbors: vertex out of range");

    GraphSample out = g;
    for (int k : switchable_set(g, i, j)) {
        bool to_i = rng.next_coin();
        out.set_edge(k, i, to_i);
        out.set_edge(k, j, !to_i);
    }
    out.recompute_degrees();
    out.bump_generation();
    return out;
}

void store_graph(const GraphSample& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("store_graph: cannot open " + path);
    char head[128];
    std::snprintf(head, sizeof(head), "%d %ld %.17g %" PRIu64 " %d", g.n(), g.edge_count(),
                  g.p(), g.seed(), g.generation());
    f << head << "\n";
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j)
            if (g.edge(i, j)) f << i << " " << j << "\n";
    if (!f) throw std::runtime_error("store_graph: write failed for " + path);
}

GraphSample load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_graph: cannot open " + path);

    std::string line;
    if (!std::getline(f, line)) throw ParseError("empty file", 1);
    std::istringstream head(line);
    long n = 0, m = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    long generation = 0;
    if (!(head >> n >> m >> p >> seed >> generation))
        throw ParseError("malformed header, expected 'n m p seed generation'", 1);
    if (n < 2) throw ParseError("vertex count must be >= 2", 1);
    if (p < 0.0 || p > 1.0) throw ParseError("p outside [0,1]", 1);
    if (m < 0 || m > n * (n - 1) / 2) throw ParseError("edge count out of range", 1);

    GraphSample g(int(n), p, seed, 0, int(generation));
    for (long e = 0; e < m; ++e) {
        int line_no = int(e) + 2;
        if (!std::getline(f, line)) throw ParseError("missing edge line", line_no);
        std::istringstream es(line);
        long u = -1, v = -1;
        if (!(es >> u >> v)) throw ParseError("malformed edge '" + line + "'", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("endpoint out of range in '" + line + "'", line_no);
        if (u >= v) throw ParseError("edges must satisfy u < v in '" + line + "'", line_no);
        if (g.edge(int(u), int(v)))
            throw ParseError("duplicate edge '" + line + "'", line_no);
        g.set_edge(int(u), int(v), true);
    }
    g.recompute_degrees();
    return g;
}

} // namespace rgl
