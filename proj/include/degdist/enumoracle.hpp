#pragma once

#include "degdist/distribution.hpp"
#include "degdist/real.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace degdist {

// Labeled simple graph on at most 8 vertices; adj[v] is the neighbour bitset.
struct SmallGraph {
    int n = 0;
    std::array<std::uint8_t, 8> adj{};

    static SmallGraph empty(int n);
    static SmallGraph complete(int n);
    static SmallGraph cycle(int n);
    static SmallGraph complete_bipartite(int a, int b);
    // Edge i of the mask is the pair (a, b), a < b, with index b(b-1)/2 + a.
    static SmallGraph from_mask(int n, std::uint64_t mask);

    void add_edge(int a, int b);
    bool has_edge(int a, int b) const { return (adj[a] >> b) & 1; }
    int degree(int v) const;
    int edges() const;
    std::uint64_t mask() const;
    // Vertex v of the result is perm[v] of this graph.
    SmallGraph permuted(const std::vector<int>& perm) const;
};

struct ClassFlags {
    bool connected = false;
    bool two_connected = false;
    bool three_connected = false;
    bool planar = false;
    bool series_parallel = false;
    bool outerplanar = false;
};

ClassFlags classify(const SmallGraph& g);
bool in_family(const ClassFlags& f, Family fam);

struct LevelCounts {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> by_degree;                // degree of vertex 0
    std::vector<std::uint64_t> by_edges;                 // edge count
    std::vector<std::vector<std::uint64_t>> by_edges_degree;  // [m][k]
};

struct ClassCounts {
    Family family = Family::Planar;
    int n = 0;
    std::uint64_t total = 0;  // all graphs of the family, any connectivity
    std::array<LevelCounts, 3> level;  // indexed by Level

    const LevelCounts& at(Level l) const { return level[static_cast<int>(l)]; }
};

struct EnumOptions {
    bool allow_n8 = false;
    int threads = 0;  // 0: hardware concurrency
};

// Counts for all three families in one pass; results are memoised per n.
// Only graphs with N(0) = {1..k} are visited, weighted by C(n-1,k).
const std::array<ClassCounts, 3>& enumerate_all(int n, const EnumOptions& opt = {});
ClassCounts enumerate(int n, Family fam, const EnumOptions& opt = {});

// d_k^(n) = [x^n]C_k / [x^n]C': root degree over graphs on n+1 vertices
// (the root plus n labeled vertices). n = 7 needs allow_n8.
std::vector<Rational> finite_n_distribution(int n, Family fam, Level level, const EnumOptions& opt = {});

// Text table, one line per (family, n, level, k, count).
void write_count_table(std::ostream& os, const ClassCounts& c);
std::vector<std::array<std::uint64_t, 3>> read_count_table(std::istream& is, Family fam, int n, Level level);

}  // namespace degdist
