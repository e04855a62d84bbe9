#include "tritile/walk.hpp"

#include "tritile/errors.hpp"
#include "tritile/structure.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>

namespace tritile {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Uniform in {0, 1, 2}: multiply-shift with rejection.
int choose3(std::mt19937_64& rng) {
    constexpr std::uint64_t threshold = (0 - std::uint64_t{3}) % 3;
    while (true) {
        const unsigned __int128 m = static_cast<unsigned __int128>(rng()) * 3u;
        if (static_cast<std::uint64_t>(m) >= threshold) {
            return static_cast<int>(m >> 64);
        }
    }
}

double norm2(const Point& p) { return squared_length(p).to_double(); }

} // namespace

std::optional<std::size_t> LargeAdjacencyGraph::node_of(std::size_t triangle) const {
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (nodes[n].triangle == triangle) {
            return n;
        }
    }
    return std::nullopt;
}

LargeAdjacencyGraph extract_graph(const TilingPatch& patch) {
    LargeAdjacencyGraph graph;
    std::map<std::size_t, std::size_t> node_at;
    const auto add = [&](std::size_t t) {
        auto [it, inserted] = node_at.emplace(t, graph.nodes.size());
        if (inserted) {
            const auto& tri = patch.triangle(t);
            graph.nodes.push_back({t, tri.vertex(0), tri.side(), patch.is_interior(t), {}});
        }
        return it->second;
    };
    std::vector<std::size_t> roots;
    for (std::size_t t = 0; t < patch.size(); ++t) {
        if (patch.is_interior(t) && classify(patch, t) == TriangleClass::Large) {
            roots.push_back(add(t));
        }
    }
    if (roots.empty()) {
        throw StructureError("patch has no interior large triangle");
    }
    for (std::size_t n : roots) {
        const std::size_t t = graph.nodes[n].triangle;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto host = edge_host(patch, t, k);
            if (!host) {
                continue;
            }
            if (unchecked::classify(patch, *host) != TriangleClass::Large) {
                throw StructureError("corner " + std::to_string(k) + " of large triangle " + std::to_string(t) +
                                     " lies inside an edge of a non-large triangle");
            }
            const std::size_t m = add(*host);
            graph.nodes[n].neighbours[k] = m;
        }
    }
    return graph;
}

std::optional<Scalar> martingale_deviation(const LargeAdjacencyGraph& graph) {
    std::optional<Scalar> worst;
    for (const auto& node : graph.nodes) {
        if (!node.interior || !node.complete()) {
            continue;
        }
        const std::array<Scalar, 3> sides{graph.nodes[*node.neighbours[0]].side,
                                          graph.nodes[*node.neighbours[1]].side,
                                          graph.nodes[*node.neighbours[2]].side};
        Scalar d = lemma10_deviation(node.side, sides);
        if (!worst || *worst < d) {
            worst = std::move(d);
        }
    }
    return worst;
}

std::optional<StepSet> step_set(const TilingPatch& patch, const LargeAdjacencyGraph& graph) {
    (void)patch;
    std::optional<StepSet> found;
    for (const auto& node : graph.nodes) {
        if (!node.interior || !node.complete()) {
            continue;
        }
        StepSet s;
        for (std::size_t k = 0; k < 3; ++k) {
            s.steps[k] = graph.nodes[*node.neighbours[k]].anchor - node.anchor;
        }
        if (!found) {
            found = s;
        } else if (!(found->steps[0] == s.steps[0] && found->steps[1] == s.steps[1] &&
                     found->steps[2] == s.steps[2])) {
            return std::nullopt;
        }
    }
    return found;
}

double WalkStats::return_frequency(std::uint64_t n) const {
    if (trials == 0) {
        return 0.0;
    }
    std::uint64_t total = 0;
    for (std::uint64_t k = 1; k <= n && k < first_returns.size(); ++k) {
        total += first_returns[k];
    }
    return static_cast<double>(total) / static_cast<double>(trials);
}

WalkStats simulate(const StepSet& steps, std::uint64_t n_steps, std::uint64_t trials, std::uint64_t seed,
                   const std::optional<SizeField>& sizes) {
    const Point sum = steps.steps[0] + steps.steps[1] + steps.steps[2];
    if (sum.x.sign() != 0 || sum.y.sign() != 0) {
        throw PreconditionViolated("steps must sum to zero");
    }
    if (cross(steps.steps[0], steps.steps[1]).sign() == 0) {
        throw PreconditionViolated("steps must span the plane");
    }
    if (trials == 0 || n_steps == 0) {
        throw PreconditionViolated("steps and trials must be positive");
    }
    // Integer coordinates over steps[0], steps[1]; steps[2] is (-1, -1).
    const double g00 = norm2(steps.steps[0]);
    const double g11 = norm2(steps.steps[1]);
    const double g01 = dot(steps.steps[0], steps.steps[1]).to_double();
    constexpr long dm[3] = {1, 0, -1};
    constexpr long dn[3] = {0, 1, -1};

    WalkStats stats;
    stats.steps = n_steps;
    stats.trials = trials;
    stats.seed = seed;
    stats.msd.assign(n_steps + 1, 0.0);
    stats.first_returns.assign(n_steps + 1, 0);
    stats.step_variance = (g00 + g11 + norm2(steps.steps[2])) / 3.0;

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ t));
        long m = 0;
        long n = 0;
        bool returned = false;
        bool hit = false;
        for (std::uint64_t k = 1; k <= n_steps; ++k) {
            const int c = choose3(rng);
            m += dm[c];
            n += dn[c];
            const double md = static_cast<double>(m);
            const double nd = static_cast<double>(n);
            stats.msd[k] += g00 * md * md + 2.0 * g01 * md * nd + g11 * nd * nd;
            if (!returned && m == 0 && n == 0) {
                returned = true;
                ++stats.first_returns[k];
            }
            if (sizes && !hit && m == sizes->special_site[0] && n == sizes->special_site[1]) {
                hit = true;
            }
        }
        stats.hits += hit ? 1 : 0;
    }
    for (double& v : stats.msd) {
        v /= static_cast<double>(trials);
    }
    if (sizes) {
        const Scalar h = Scalar::constant(sizes->base, static_cast<unsigned long>(stats.hits));
        const Scalar all = Scalar::constant(sizes->base, static_cast<unsigned long>(trials));
        stats.size_at_stop = (h * sizes->special + (all - h) * sizes->base) / all;
    }
    return stats;
}

WalkStats simulate(const LargeAdjacencyGraph& graph, std::size_t start, std::uint64_t n_steps,
                   std::uint64_t trials, std::uint64_t seed) {
    if (start >= graph.nodes.size()) {
        throw PreconditionViolated("start node out of range");
    }
    if (trials == 0 || n_steps == 0) {
        throw PreconditionViolated("steps and trials must be positive");
    }
    const auto& nodes = graph.nodes;
    std::vector<double> ax(nodes.size());
    std::vector<double> ay(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        ax[i] = nodes[i].anchor.x.to_double() - nodes[start].anchor.x.to_double();
        ay[i] = nodes[i].anchor.y.to_double() - nodes[start].anchor.y.to_double();
    }
    WalkStats stats;
    stats.steps = n_steps;
    stats.trials = trials;
    stats.seed = seed;
    stats.msd.assign(n_steps + 1, 0.0);
    stats.first_returns.assign(n_steps + 1, 0);
    std::vector<std::uint64_t> stopped_at(nodes.size(), 0);
    double variance = 0.0;
    if (nodes[start].complete()) {
        for (const auto& nb : nodes[start].neighbours) {
            variance += ax[*nb] * ax[*nb] + ay[*nb] * ay[*nb];
        }
        stats.step_variance = variance / 3.0;
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ t));
        std::size_t at = start;
        bool absorbed = false;
        bool returned = false;
        for (std::uint64_t k = 1; k <= n_steps; ++k) {
            if (!absorbed) {
                const auto& next = nodes[at].neighbours[choose3(rng)];
                if (next) {
                    at = *next;
                } else {
                    absorbed = true;
                    ++stats.absorbed;
                }
            }
            stats.msd[k] += ax[at] * ax[at] + ay[at] * ay[at];
            if (!absorbed && !returned && at == start) {
                returned = true;
                ++stats.first_returns[k];
            }
        }
        ++stopped_at[at];
    }
    for (double& v : stats.msd) {
        v /= static_cast<double>(trials);
    }
    const Scalar& like = nodes[start].side;
    Scalar total = Scalar::constant(like, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (stopped_at[i] > 0) {
            total += Scalar::constant(like, static_cast<unsigned long>(stopped_at[i])) * nodes[i].side;
        }
    }
    stats.size_at_stop = total / Scalar::constant(like, static_cast<unsigned long>(trials));
    return stats;
}

std::string ContradictionReport::summary() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "a=%s a'=%s trials=%llu hits=%llu hit_frequency=%.6f empirical_mean=%s threshold=%s verdict=%s",
                  a.to_string().c_str(), a_prime.to_string().c_str(), static_cast<unsigned long long>(trials),
                  static_cast<unsigned long long>(hits), hit_frequency, empirical_mean.to_string().c_str(),
                  threshold.to_string().c_str(),
                  inconclusive ? "inconclusive" : (inconsistent ? "inconsistent" : "consistent"));
    return buf;
}

ContradictionReport contradiction_demo(const StepSet& steps, const Scalar& a, const Scalar& a_prime,
                                       std::uint64_t n_steps, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0 || n_steps == 0) {
        throw PreconditionViolated("steps and trials must be positive");
    }
    if (a.sign() <= 0 || a_prime.sign() <= 0) {
        throw NonPositiveSide("sizes must be positive");
    }
    const Point sum = steps.steps[0] + steps.steps[1] + steps.steps[2];
    if (sum.x.sign() != 0 || sum.y.sign() != 0) {
        throw PreconditionViolated("steps must sum to zero");
    }
    // Stopped walk: a trial ends on reaching the site of steps[0] or after
    // n_steps. Trajectories match simulate() for the same seed up to the stop.
    constexpr long dm[3] = {1, 0, -1};
    constexpr long dn[3] = {0, 1, -1};
    WalkStats stats;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ t));
        long m = 0;
        long n = 0;
        for (std::uint64_t k = 1; k <= n_steps; ++k) {
            const int c = choose3(rng);
            m += dm[c];
            n += dn[c];
            if (m == 1 && n == 0) {
                ++stats.hits;
                break;
            }
        }
    }
    {
        const Scalar h = Scalar::constant(a, static_cast<unsigned long>(stats.hits));
        const Scalar all = Scalar::constant(a, static_cast<unsigned long>(trials));
        stats.size_at_stop = (h * a_prime + (all - h) * a) / all;
    }
    ContradictionReport r;
    r.a = a;
    r.a_prime = a_prime;
    r.trials = trials;
    r.hits = stats.hits;
    r.hit_frequency = static_cast<double>(stats.hits) / static_cast<double>(trials);
    r.empirical_mean = *stats.size_at_stop;
    r.threshold = a / a_prime;
    r.inconclusive = stats.hits == 0;
    r.inconsistent = !r.inconclusive && a != a_prime && r.empirical_mean != a;
    return r;
}

} // namespace tritile
