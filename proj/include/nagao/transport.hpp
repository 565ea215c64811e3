#pragma once

// Transporters: δ_{x,y} between vertices of one horosphere, γ_x and
// γ_{x,y} = γ_y γ_x⁻¹ between vertices of equal level, and τ_{X,Y} between
// components of the level-≤-i forest.

#include <cstdint>
#include <vector>

#include "nagao/horo.hpp"
#include "nagao/report.hpp"

namespace nagao {

/// The element of Δ conjugate to ⟨U_{j,s} | j > i⟩ moving x to y.
/// Throws LevelZeroBase, NotSameHorosphere.
DeltaWord delta_xy(const Tree& t, const VertexAddress& x, const VertexAddress& y);
/// As above, insisting that both vertices lie in the ball (NotInTruncation).
DeltaWord delta_xy(const Tree& t, const TruncatedTree& ball, const VertexAddress& x,
                   const VertexAddress& y);

/// γ_x = δ_x γ_s with δ_x the address word of x.
GammaElement gamma_x(const NagaoDatum& d, const VertexAddress& x);
/// Throws LevelMismatch.
GammaElement gamma_xy(const Tree& t, const VertexAddress& x, const VertexAddress& y);

/// τ_{C_i(a), C_i(b)} read off the tree geodesic from a to b; needs no ball.
/// Throws LevelTooHigh.
DeltaWord tau_between(const Tree& t, const VertexAddress& a, const VertexAddress& b, int i);
/// τ_{X,Y} along the 𝒢_i geodesic. Throws NotInGraph.
DeltaWord tau(const Tree& t, const ComponentGraph& g, int x, int y);
/// Product of the edge transporters along an arbitrary path. Throws NotInGraph.
DeltaWord tau_along(const Tree& t, const ComponentGraph& g, const std::vector<int>& path);

struct TransportOptions {
  bool exhaustive = true;
  int samples = 200;
  uint32_t seed = 1;
  /// Random Δ-elements used for the equivariance rules.
  int conjugators = 20;
};

/// δ-, γ- and τ-rules, path independence, well-definedness of δ_{x,y} and the
/// restriction lemma on the ball's level-i data.
Report verify_transport(const Tree& t, const TruncatedTree& ball, int i,
                        const TransportOptions& opt = {});

}  // namespace nagao
