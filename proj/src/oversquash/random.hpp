#pragma once

#include <cstdint>
#include <random>

#include "oversquash/graph.hpp"

namespace oversquash {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent child seeds so that
/// per-item streams do not depend on scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix_seed(mix_seed(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

/// Random recursive tree (each node attaches to a uniform earlier node) plus
/// `extra_edges` uniformly chosen non-edges. Always connected and simple.
Graph random_connected_graph(int num_nodes, int extra_edges, Rng& rng);

/// Random connected graph that contains an odd cycle (non-bipartite).
Graph random_nonbipartite_graph(int num_nodes, int extra_edges, Rng& rng);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);

/// Two K_k cliques joined by a single edge (k-1, k).
Graph barbell_graph(int k);

}  // namespace oversquash
