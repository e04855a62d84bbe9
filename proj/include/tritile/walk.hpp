#pragma once

#include "tritile/model.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tritile {

/// A Large triangle and the three Large triangles whose edges contain its
/// corners (neighbour k hosts corner k). Missing neighbours are nullopt.
struct GraphNode {
    std::size_t triangle;
    Point anchor;
    Scalar side;
    bool interior;
    std::array<std::optional<std::size_t>, 3> neighbours;

    bool complete() const { return neighbours[0] && neighbours[1] && neighbours[2]; }
};

/// Directed graph with out-degree three on Large triangles.
struct LargeAdjacencyGraph {
    std::vector<GraphNode> nodes;

    std::optional<std::size_t> node_of(std::size_t triangle) const;
};

/// Nodes are the Interior Large triangles plus every Large triangle hosting
/// one of their corners. A corner whose host is absent or not Large gives a
/// missing neighbour.
LargeAdjacencyGraph extract_graph(const TilingPatch& patch);

/// Largest |side(T) - mean side of T's neighbours| over complete Interior nodes;
/// nullopt if there is none.
std::optional<Scalar> martingale_deviation(const LargeAdjacencyGraph& graph);

/// Three steps with zero sum; the walk lives on the lattice they span.
struct StepSet {
    std::array<Point, 3> steps;
};

/// Neighbour offsets (anchor differences) of the complete Interior nodes, if
/// they coincide for all of them.
std::optional<StepSet> step_set(const TilingPatch& patch, const LargeAdjacencyGraph& graph);

/// Side length attached to each lattice site: `base` everywhere except at
/// `special_site`, which carries `special`. The walk stops on first reaching
/// the special site.
struct SizeField {
    Scalar base;
    std::array<long, 2> special_site{1, 0};
    Scalar special;
};

struct WalkStats {
    std::uint64_t steps = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// msd[n]: mean squared displacement after n steps, n = 0..steps.
    std::vector<double> msd;
    /// first_returns[n]: trials whose first return to the start is at step n.
    std::vector<std::uint64_t> first_returns;
    /// Expected squared displacement per step, from the step set.
    double step_variance = 0.0;
    /// Trials absorbed at a missing neighbour (graph walks only).
    std::uint64_t absorbed = 0;
    /// Trials that reached the special site of the size field.
    std::uint64_t hits = 0;
    /// Mean size at the stopping time, if a size is defined.
    std::optional<Scalar> size_at_stop;

    /// Fraction of trials that returned to the start within n steps.
    double return_frequency(std::uint64_t n) const;
};

/// Walk on the lattice spanned by a step set, choosing each step uniformly.
/// Deterministic in `seed`: trial t draws from mt19937_64 seeded with
/// splitmix64(seed ^ t). Positions are integer lattice coordinates.
WalkStats simulate(const StepSet& steps, std::uint64_t n_steps, std::uint64_t trials, std::uint64_t seed,
                   const std::optional<SizeField>& sizes = std::nullopt);

/// Walk on the graph from `start`, stopping at a missing neighbour. The size at
/// the stopping time is the side of the node where the walk stands.
WalkStats simulate(const LargeAdjacencyGraph& graph, std::size_t start, std::uint64_t n_steps,
                   std::uint64_t trials, std::uint64_t seed);

struct ContradictionReport {
    Scalar a;
    Scalar a_prime;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double hit_frequency = 0.0;
    /// Mean size at the stopping time of the hypothetical size field.
    Scalar empirical_mean;
    /// a / a': a hit frequency at or above this forces the mean above a.
    Scalar threshold;
    /// True iff a != a' and the observed hits contradict a constant mean a.
    bool inconsistent = false;
    /// No hits at all: the run says nothing.
    bool inconclusive = false;

    std::string summary() const;
};

/// Hypothetical size field: a everywhere except a' at the neighbour site
/// steps[0]. A martingale would keep the expected size at the stopping time
/// equal to a; when the walk reaches the site often enough the empirical mean
/// exceeds a, which exposes the field as impossible.
ContradictionReport contradiction_demo(const StepSet& steps, const Scalar& a, const Scalar& a_prime,
                                       std::uint64_t n_steps, std::uint64_t trials, std::uint64_t seed);

/// splitmix64 finaliser used for per-trial seeding.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace tritile
