#pragma once

#include <cstdint>

#include "dirlp/digraph.hpp"

namespace dirlp::datasets {

/// Directed ring 0 -> 1 -> ... -> n-1 -> 0.
DirectedGraph make_directed_ring(NodeId n);

/// Dense layered digraph: nodes carry a hidden rank (a seeded permutation);
/// each ordered pair within `window` ranks apart gets a forward edge with
/// probability p_edge, and each forward edge is reciprocated with
/// probability p_reciprocal. Directional transitivity makes direction
/// informative for prediction; the reciprocation rate controls the
/// bidirectional-pair ratio 2r/(1+r).
DirectedGraph make_layered_digraph(NodeId n, NodeId window, double p_edge, double p_reciprocal,
                                   std::uint64_t seed);

/// Citation-style copying digraph: node v cites `refs` earlier nodes; the
/// first reference is uniform over the last `window` arrivals and each
/// further one either copies a reference of an already-cited node (with
/// probability copy_prob, closing the directed triangle v -> u -> x with
/// v -> x) or is uniform again. Each edge is reciprocated with probability
/// p_reciprocal. Direction carries the signal here: prediction follows
/// out-in transitivity, while symmetrized neighborhoods mix citers with
/// cited and blur it.
DirectedGraph make_citation_digraph(NodeId n, int refs, double copy_prob, NodeId window,
                                    double p_reciprocal, std::uint64_t seed);

/// Directed triadic-closure growth: sprinkle `seed_edges` uniform directed
/// edges, then repeatedly pick a random open 2-path u -> t -> v and close
/// it with u -> v (`closures` times). Every closure edge carries at least
/// one specific directed 2-path, so direction-aware scores see the wiring
/// while symmetrized neighborhoods drown it in co-citation. Reciprocal
/// edges are then planted uniformly until |E_<->| / |E| reaches
/// `mutual_ratio`.
DirectedGraph make_closure_digraph(NodeId n, std::size_t seed_edges, std::size_t closures,
                                   double mutual_ratio, std::uint64_t seed);

/// Fraction of edges whose reverse is also an edge (|E_<->| / |E|).
double bidirectional_pair_ratio(const DirectedGraph& g);

/// |E| / (n * (n - 1)).
double density(const DirectedGraph& g);

}  // namespace dirlp::datasets
