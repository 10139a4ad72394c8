// Erdos-Renyi graph samples: packed adjacency bits, cached degrees,
// neighbor switching, and the text file format.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgl/rng.hpp"

namespace rgl {

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// One G(n,p) draw. Immutable after construction; switching returns a copy.
class GraphSample {
public:
    GraphSample(int n, double p, std::uint64_t seed, std::uint64_t stream_id, int generation)
        : n_(n), p_(p), seed_(seed), stream_id_(stream_id), generation_(generation),
          words_(std::size_t(n) * word_stride(n), 0), degrees_(n, 0) {}

    int n() const { return n_; }
    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    int generation() const { return generation_; }
    const std::vector<int>& degrees() const { return degrees_; }

    bool edge(int i, int j) const {
        return (words_[std::size_t(i) * stride() + std::size_t(j) / 64] >> (j % 64)) & 1ULL;
    }

    long edge_count() const {
        long total = 0;
        for (int d : degrees_) total += d;
        return total / 2;
    }

    // Symmetric set/clear; callers keep degrees consistent via recompute_degrees().
    void set_edge(int i, int j, bool on) {
        if (i == j) throw std::invalid_argument("set_edge: self loop");
        set_bit(i, j, on);
        set_bit(j, i, on);
    }

    void recompute_degrees() {
        for (int i = 0; i < n_; ++i) {
            int d = 0;
            const std::uint64_t* row = &words_[std::size_t(i) * stride()];
            for (std::size_t w = 0; w < stride(); ++w) d += __builtin_popcountll(row[w]);
            degrees_[i] = d;
        }
    }

    void bump_generation() { ++generation_; }

private:
    static std::size_t word_stride(int n) { return (std::size_t(n) + 63) / 64; }
    std::size_t stride() const { return word_stride(n_); }

    void set_bit(int i, int j, bool on) {
        std::uint64_t& w = words_[std::size_t(i) * stride() + std::size_t(j) / 64];
        std::uint64_t mask = 1ULL << (j % 64);
        if (on) w |= mask; else w &= ~mask;
    }

    int n_;
    double p_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    int generation_;
    std::vector<std::uint64_t> words_;
    std::vector<int> degrees_;
};

// Each unordered pair {i,j} is an edge independently with probability p.
// p in {0,1} is rejected unless allow_degenerate (test fixtures only).
GraphSample sample_gnp(int n, double p, RngStream rng, bool allow_degenerate = false);

// Reassigns the single-edge neighbors of vertices i and j by fair coins.
// Preserves d_i + d_j, the edge {i,j}, and every edge disjoint from {i,j};
// output has the same law as a fresh sample. Default pair: last two vertices.
GraphSample switch_neighbors(const GraphSample& g, int i, int j, RngStream& rng);
inline GraphSample switch_neighbors(const GraphSample& g, RngStream& rng) {
    return switch_neighbors(g, g.n() - 2, g.n() - 1, rng);
}

// Indices k outside {i,j} adjacent to exactly one of i, j.
std::vector<int> switchable_set(const GraphSample& g, int i, int j);

// Text format: line 1 "n m p seed generation", then m lines "u v" with u < v.
void store_graph(const GraphSample& g, const std::string& path);
GraphSample load_graph(const std::string& path);

} // namespace rgl
