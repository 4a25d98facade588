#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topoflow/diagram.hpp"

namespace topoflow {

// A strand diagram in a rectangle whose top and bottom edges are the two
// sides of one sphere level: position i on top is glued to position i on
// the bottom.  Closing the gluing must yield a single curve (a knot).
//
// Text format:
//   b=3
//   signs= + - +                      (derived; validated when present)
//   strand b1 1u+ b2                  (terminal, gauss tokens, terminal)
//   strand t2 t3
//   strand b3 1o+ t1
// For b=0 the single closed component is written "loop <tokens>" or
// "loop O" for a bare circle.
class AnnularDiagram {
  public:
    static AnnularDiagram parse(const std::string& text);
    static AnnularDiagram from_core(detail::Core core);

    std::string serialize() const;  // canonical: equal diagrams render equally

    int b() const { return static_cast<int>(core_.bottom.size()); }
    int crossing_count() const { return static_cast<int>(core_.crossings.size()); }
    // Sign of the level passage at each glued point, oriented so the total
    // is non-negative.
    const std::vector<int>& cut_signs() const { return signs_; }
    int intersection_index() const;

    // Joins top point i to bottom point i by nested arcs around the
    // rectangle; adds no crossings.
    PlanarDiagram closure() const;

    // Boundary-to-boundary strand pieces, in order of first boundary slot.
    struct Strand {
        End first, second;         // boundary attachments
        std::vector<ArcId> arcs;   // rectangle arcs in walk order
        bool through = false;      // one end on each side of the level
    };
    std::vector<Strand> strands() const;

    // Reidemeister moves confined to the rectangle interior (no face of the
    // move touches the boundary).  Moves are named in the closure's arc ids.
    std::vector<Move> enumerate_interior_moves() const;
    AnnularDiagram apply_interior_move(const Move& m) const;

    // Removes level returns that cross nothing (an isotopy across the
    // sphere level); each removal drops b by 2.
    AnnularDiagram reduce_trivial_returns() const;

    bool operator==(const AnnularDiagram& rhs) const { return serialize() == rhs.serialize(); }
    bool operator!=(const AnnularDiagram& rhs) const { return !(*this == rhs); }

    const detail::Core& core() const { return core_; }

  private:
    AnnularDiagram() = default;
    void compute_signs();
    detail::Core core_;
    std::vector<int> signs_;
};

}  // namespace topoflow
