#include "degdist/enumoracle.hpp"

#include "degdist/errors.hpp"

#include <bit>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace degdist {

namespace {

constexpr int kTableN = 7;
constexpr int pairs(int n) { return n * (n - 1) / 2; }
constexpr int pair_index(int a, int b) { return b * (b - 1) / 2 + a; }

enum MinorBit : std::uint8_t { kK4 = 1, kK23 = 2, kK5 = 4, kK33 = 8 };

int nbits(unsigned x) { return std::popcount(x); }

bool has_triangle_in(const SmallGraph& g, unsigned set) {
    for (int a = 0; a < g.n; ++a) {
        if (!((set >> a) & 1)) continue;
        unsigned na = g.adj[a] & set & ~((2u << a) - 1);
        for (int b = a + 1; b < g.n; ++b)
            if ((na >> b) & 1)
                if (g.adj[b] & na & ~((2u << b) - 1)) return true;
    }
    return false;
}

// Minors that occur as subgraphs (no contraction needed).
std::uint8_t subgraph_bits(const SmallGraph& g) {
    std::uint8_t r = 0;
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            unsigned common = g.adj[a] & g.adj[b];
            if (nbits(common) >= 3) r |= kK23;
            if (g.has_edge(a, b)) {
                // K4: an edge inside the common neighbourhood of an edge.
                for (int c = 0; c < g.n; ++c)
                    if (((common >> c) & 1) && (g.adj[c] & common)) r |= kK4;
                // K5: a triangle inside the common neighbourhood of an edge.
                if (!(r & kK5) && has_triangle_in(g, common)) r |= kK5;
            }
            for (int c = b + 1; c < g.n; ++c)
                if (nbits(common & g.adj[c]) >= 3) r |= kK33;
        }
    return r;
}

SmallGraph contract(const SmallGraph& g, int u, int v) {
    // merge v into u (u < v), drop v and shift the labels above it
    SmallGraph h;
    h.n = g.n - 1;
    auto squeeze = [v](unsigned s) {
        unsigned low = s & ((1u << v) - 1);
        unsigned high = (s >> (v + 1)) << v;
        return low | high;
    };
    for (int a = 0, ha = 0; a < g.n; ++a) {
        if (a == v) continue;
        unsigned s = g.adj[a];
        if (a == u) s |= g.adj[v];
        if ((s >> v) & 1) s |= 1u << u;
        s &= ~(1u << a);
        h.adj[ha++] = static_cast<std::uint8_t>(squeeze(s) & ~(1u << (a < v ? a : a - 1)));
    }
    return h;
}

int effective_n(std::uint64_t mask) {
    if (mask == 0) return 0;
    int top = 63 - std::countl_zero(mask);
    int b = 1;
    while (pairs(b + 1) <= top) ++b;
    return b + 1;
}

struct MinorTable {
    std::vector<std::uint8_t> bits;
    MinorTable() : bits(std::size_t(1) << pairs(kTableN), 0) {
        for (std::uint64_t m = 1; m < bits.size(); ++m) {
            int n = effective_n(m);
            SmallGraph g = SmallGraph::from_mask(n, m);
            bits[m] = minor_bits(g);
        }
    }
    std::uint8_t lookup(const SmallGraph& g) const { return bits[g.mask()]; }
    std::uint8_t minor_bits(const SmallGraph& g) const {
        // K5 and K3,3 both contain K4 and K2,3 minors
        auto close = [](std::uint8_t b) { return (b & (kK5 | kK33)) ? std::uint8_t(b | kK4 | kK23) : b; };
        std::uint8_t r = close(subgraph_bits(g));
        for (int v = 1; v < g.n && !(r & kK4 && r & kK23 && r & (kK5 | kK33)); ++v)
            for (int u = 0; u < v; ++u)
                if (g.has_edge(u, v)) r = close(r | bits[contract(g, u, v).mask()]);
        return r;
    }
};

const MinorTable& minor_table() {
    static const MinorTable t;
    return t;
}

std::uint8_t minors(const SmallGraph& g) {
    const MinorTable& t = minor_table();
    if (g.n <= kTableN) return t.lookup(g);
    return t.minor_bits(g);
}

bool connected_without(const SmallGraph& g, unsigned removed) {
    unsigned alive = ((1u << g.n) - 1) & ~removed;
    if (alive == 0) return true;
    unsigned seen = alive & (~alive + 1);
    unsigned frontier = seen;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        unsigned nb = g.adj[v] & alive & ~seen;
        seen |= nb;
        frontier |= nb;
    }
    return seen == alive;
}

}  // namespace

SmallGraph SmallGraph::empty(int n) {
    if (n < 1 || n > 8) throw TooLarge("SmallGraph: n must be in 1..8");
    SmallGraph g;
    g.n = n;
    return g;
}

SmallGraph SmallGraph::complete(int n) {
    SmallGraph g = empty(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

SmallGraph SmallGraph::cycle(int n) {
    SmallGraph g = empty(n);
    for (int a = 0; a < n; ++a) g.add_edge(a, (a + 1) % n);
    return g;
}

SmallGraph SmallGraph::complete_bipartite(int a, int b) {
    SmallGraph g = empty(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

SmallGraph SmallGraph::from_mask(int n, std::uint64_t mask) {
    SmallGraph g;
    g.n = n;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a)
            if ((mask >> pair_index(a, b)) & 1) g.add_edge(a, b);
    return g;
}

void SmallGraph::add_edge(int a, int b) {
    if (a == b) throw DomainError("SmallGraph: loops are not allowed");
    adj[a] |= std::uint8_t(1u << b);
    adj[b] |= std::uint8_t(1u << a);
}

int SmallGraph::degree(int v) const { return nbits(adj[v]); }

int SmallGraph::edges() const {
    int s = 0;
    for (int v = 0; v < n; ++v) s += degree(v);
    return s / 2;
}

std::uint64_t SmallGraph::mask() const {
    std::uint64_t m = 0;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a)
            if (has_edge(a, b)) m |= std::uint64_t(1) << pair_index(a, b);
    return m;
}

SmallGraph SmallGraph::permuted(const std::vector<int>& perm) const {
    SmallGraph g = empty(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (has_edge(perm[a], perm[b])) g.add_edge(a, b);
    return g;
}

ClassFlags classify(const SmallGraph& g) {
    if (g.n > 8) throw TooLarge("classify: n > 8");
    ClassFlags f;
    f.connected = connected_without(g, 0);
    if (f.connected && g.n >= 2) {
        if (g.n == 2) {
            f.two_connected = true;
        } else {
            f.two_connected = true;
            for (int v = 0; v < g.n && f.two_connected; ++v) f.two_connected = connected_without(g, 1u << v);
        }
        if (f.two_connected && g.n >= 4) {
            f.three_connected = true;
            for (int a = 0; a < g.n && f.three_connected; ++a)
                for (int b = a + 1; b < g.n && f.three_connected; ++b)
                    f.three_connected = connected_without(g, (1u << a) | (1u << b));
        }
    }
    int m = g.edges();
    std::uint8_t mb = minors(g);
    f.planar = !(mb & (kK5 | kK33)) && (g.n < 3 || m <= 3 * g.n - 6);
    f.series_parallel = !(mb & kK4);
    f.outerplanar = !(mb & (kK4 | kK23));
    return f;
}

bool in_family(const ClassFlags& f, Family fam) {
    switch (fam) {
        case Family::Outerplanar: return f.outerplanar;
        case Family::SeriesParallel: return f.series_parallel;
        case Family::Planar: return f.planar;
    }
    return false;
}

namespace {

std::array<ClassCounts, 3> make_counts(int n) {
    std::array<ClassCounts, 3> out;
    int P = pairs(n);
    for (int fi = 0; fi < 3; ++fi) {
        out[fi].family = static_cast<Family>(fi);
        out[fi].n = n;
        for (auto& lc : out[fi].level) {
            lc.by_degree.assign(n, 0);
            lc.by_edges.assign(P + 1, 0);
            lc.by_edges_degree.assign(P + 1, std::vector<std::uint64_t>(n, 0));
        }
    }
    return out;
}

void merge(std::array<ClassCounts, 3>& into, const std::array<ClassCounts, 3>& from) {
    for (int fi = 0; fi < 3; ++fi) {
        into[fi].total += from[fi].total;
        for (int l = 0; l < 3; ++l) {
            auto& a = into[fi].level[l];
            const auto& b = from[fi].level[l];
            a.count += b.count;
            for (std::size_t k = 0; k < a.by_degree.size(); ++k) a.by_degree[k] += b.by_degree[k];
            for (std::size_t m = 0; m < a.by_edges.size(); ++m) {
                a.by_edges[m] += b.by_edges[m];
                for (std::size_t k = 0; k < a.by_degree.size(); ++k) a.by_edges_degree[m][k] += b.by_edges_degree[m][k];
            }
        }
    }
}

// Graphs with N(0) = {1..k}; every count is invariant under relabeling
// 1..n-1, so each graph stands for C(n-1,k) graphs with deg(0) = k.
void count_range(int n, int k, std::uint64_t weight, std::uint64_t lo, std::uint64_t hi,
                 std::array<ClassCounts, 3>& acc) {
    for (std::uint64_t rest = lo; rest < hi; ++rest) {
        SmallGraph h = SmallGraph::from_mask(n - 1, rest);
        SmallGraph g;
        g.n = n;
        for (int v = 0; v < n - 1; ++v) g.adj[v + 1] = static_cast<std::uint8_t>(h.adj[v] << 1);
        for (int v = 1; v <= k; ++v) g.add_edge(0, v);
        ClassFlags f = classify(g);
        int m = g.edges();
        bool lev[3] = {f.connected, f.two_connected, f.three_connected};
        for (int fi = 0; fi < 3; ++fi) {
            if (!in_family(f, static_cast<Family>(fi))) continue;
            acc[fi].total += weight;
            for (int l = 0; l < 3; ++l) {
                if (!lev[l]) continue;
                auto& lc = acc[fi].level[l];
                lc.count += weight;
                lc.by_degree[k] += weight;
                lc.by_edges[m] += weight;
                lc.by_edges_degree[m][k] += weight;
            }
        }
    }
}

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

const std::array<ClassCounts, 3>& enumerate_all(int n, const EnumOptions& opt) {
    if (n < 1 || n > 8) throw TooLarge("enumerate: n must be in 1..8");
    if (n == 8 && !opt.allow_n8) throw TooLarge("enumerate: n = 8 requires the opt-in flag");
    static std::mutex mu;
    static std::map<int, std::array<ClassCounts, 3>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    minor_table();
    int rest_bits = pairs(n - 1);
    int shard_bits = rest_bits > 12 ? rest_bits - 12 : 0;
    std::uint64_t per_k = (std::uint64_t(1) << rest_bits) >> shard_bits;
    std::uint64_t shards = per_k * n;
    int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (std::uint64_t(threads) > shards) threads = static_cast<int>(shards);

    std::vector<std::array<ClassCounts, 3>> acc(threads, make_counts(n));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::uint64_t s = t; s < shards; s += threads) {
                int k = static_cast<int>(s / per_k);
                std::uint64_t lo = (s % per_k) << shard_bits;
                count_range(n, k, binomial(n - 1, k), lo, lo + (std::uint64_t(1) << shard_bits), acc[t]);
            }
        });
    for (auto& th : pool) th.join();
    auto result = make_counts(n);
    for (auto& a : acc) merge(result, a);
    return memo.emplace(n, std::move(result)).first->second;
}

ClassCounts enumerate(int n, Family fam, const EnumOptions& opt) {
    return enumerate_all(n, opt)[static_cast<int>(fam)];
}

std::vector<Rational> finite_n_distribution(int n, Family fam, Level level, const EnumOptions& opt) {
    if (n < 0 || n > 7) throw TooLarge("finite_n_distribution: n must be in 0..7");
    const LevelCounts& lc = enumerate_all(n + 1, opt)[static_cast<int>(fam)].at(level);
    std::vector<Rational> d(n + 1, Rational(0));
    if (lc.count == 0) return d;
    for (int k = 0; k <= n; ++k) d[k] = Rational(BigInt(lc.by_degree[k]), BigInt(lc.count));
    return d;
}

void write_count_table(std::ostream& os, const ClassCounts& c) {
    for (int l = 0; l < 3; ++l)
        for (std::size_t k = 0; k < c.level[l].by_degree.size(); ++k)
            os << family_name(c.family) << ' ' << c.n << ' ' << level_name(static_cast<Level>(l)) << ' ' << k << ' '
               << c.level[l].by_degree[k] << '\n';
}

std::vector<std::array<std::uint64_t, 3>> read_count_table(std::istream& is, Family fam, int n, Level level) {
    std::vector<std::array<std::uint64_t, 3>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string f, l;
        int nn;
        std::uint64_t k, cnt;
        if (!(ss >> f >> nn >> l >> k >> cnt)) throw DomainError("count table: malformed line: " + line);
        if (parse_family(f) == fam && nn == n && parse_level(l) == level) rows.push_back({std::uint64_t(nn), k, cnt});
    }
    return rows;
}

}  // namespace degdist
