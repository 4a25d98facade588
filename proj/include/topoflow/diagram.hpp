#pragma once

#include <array>
#include <string>
#include <vector>

#include "topoflow/laurent.hpp"

namespace topoflow {

using ArcId = int;

// One crossing of a diagram.  The four incident strand-arcs are listed in
// counterclockwise cyclic order; slots 0 and 2 carry the under-strand,
// slots 1 and 3 the over-strand.  With component orientations, a crossing
// is positive exactly when (under enters at slot 0 and over at slot 3) or
// (under enters at slot 2 and over at slot 1).
struct Crossing {
    std::array<ArcId, 4> slot;
};

// An arc endpoint: a crossing slot, or a marked point on the bottom/top
// boundary edge (crossing is then kBottom/kTop and slot is the position).
struct End {
    int crossing = 0;
    int slot = 0;
    static constexpr int kBottom = -1;
    static constexpr int kTop = -2;
    bool at_terminal() const { return crossing < 0; }
    bool operator==(const End& o) const { return crossing == o.crossing && slot == o.slot; }
    bool operator<(const End& o) const {
        return crossing != o.crossing ? crossing < o.crossing : slot < o.slot;
    }
};

namespace detail {

// Shared storage for planar (closed) and annular (rectangle) diagrams.
// Arcs are implicit: ids 0..arc_count-1, each appearing exactly twice among
// crossing slots and boundary attachments.  Closed curves meeting no
// crossing and no boundary are counted in free_loops.
struct Core {
    std::vector<Crossing> crossings;
    int free_loops = 0;
    std::vector<ArcId> bottom;  // arc attached at each bottom marked point
    std::vector<ArcId> top;

    int arc_count() const;
    std::vector<std::array<End, 2>> arc_ends() const;
    End other_end(const std::vector<std::array<End, 2>>& ends, ArcId arc, End from) const;
    ArcId arc_at(End e) const;
    void check() const;  // throws DiagramError on structural/planarity defects
};

// A face side is a directed arc traversal; faces are the cyclic side lists
// of the rotation system of a closed core.
struct FaceSide {
    ArcId arc;
    End from;
    End to;
};
using Face = std::vector<FaceSide>;
std::vector<Face> trace_faces(const Core& core);

struct WalkStep {
    int crossing;    // crossing reached
    int entry_slot;  // slot it was entered through
    ArcId arc;       // arc just traversed
};
std::vector<WalkStep> walk_closed(const Core& core, const std::vector<std::array<End, 2>>& ends,
                                  ArcId start, int dir);
int crossing_sign(int under_in_slot, int over_in_slot);
std::string render_walks(const std::vector<std::vector<WalkStep>>& walks, int free_loops);

}  // namespace detail

// A knot/link diagram in S^2 given by crossing records.
class PlanarDiagram {
  public:
    PlanarDiagram() { core_.free_loops = 1; }  // 0-crossing unknot

    static PlanarDiagram unknot() { return PlanarDiagram(); }
    static PlanarDiagram empty_link();
    // Signed Gauss code, one line per component; tokens "label{o|u}{+|-}"
    // (an optional sign prefix on the label is tolerated).  A line "O" or an
    // empty line is a 0-crossing component; the empty string is the unknot.
    static PlanarDiagram parse_gauss(const std::string& code);
    static PlanarDiagram from_core(detail::Core core);

    // Canonical signed Gauss code: lexicographically minimal over all
    // component orders, starting arcs and directions.  Equal diagrams
    // serialize identically.
    std::string gauss_code() const;

    int crossing_count() const { return static_cast<int>(core_.crossings.size()); }
    int free_loop_count() const { return core_.free_loops; }
    int component_count() const;

    PlanarDiagram mirrored() const;
    // One diagram per link component, each with the other components removed.
    std::vector<PlanarDiagram> split_components() const;

    void validate() const { core_.check(); }

    bool operator==(const PlanarDiagram& rhs) const { return gauss_code() == rhs.gauss_code(); }
    bool operator!=(const PlanarDiagram& rhs) const { return !(*this == rhs); }

    const detail::Core& core() const { return core_; }

  private:
    detail::Core core_;
};

enum class MoveType { R1Remove, R2Remove, R3, R2Insert, R1Insert };

struct Move {
    MoveType type;
    std::vector<int> crossings;  // removal sites / R3 corners (A, B, C)
    std::vector<ArcId> arcs;     // insertion arcs / R3 movable side
    int variant = 0;             // R1Insert kink variant; R2Insert 1 = over
    int face = -1;               // face index; free-loop index for R1Insert
    std::string describe() const;
    bool operator<(const Move& rhs) const;
    bool operator==(const Move& rhs) const;
};

// All applicable moves in the deterministic exploration order
// (remove-I, remove-II, III, insert-II, insert-I).
std::vector<Move> enumerate_moves(const PlanarDiagram& d);
PlanarDiagram apply_reidemeister(const PlanarDiagram& d, const Move& move);

struct SimplifyResult {
    PlanarDiagram diagram;
    bool complete = false;  // search space exhausted within bounds
};

// Breadth-first search over Reidemeister moves, bounded by max_crossings
// per diagram and max_states explored.  Deterministic: fixed move order,
// lexicographic tie-break on the canonical code.
SimplifyResult simplify_bfs(const PlanarDiagram& d, int max_crossings, int max_states);

namespace detail {

struct Rewire {
    std::vector<int> removed_crossings;  // pass-throughs glued by default
    std::vector<ArcId> removed_arcs;     // material deleted outright
    std::vector<End> removed_terminals;  // boundary points dropped with their strand
    int added_crossings = 0;             // new ids follow the old ones
    std::vector<std::pair<End, End>> connections;
    struct Splice {
        ArcId arc;
        End from;
        std::vector<std::pair<End, End>> through;
    };
    std::vector<Splice> splices;
};
// Resolve a rewiring into a fresh core; old_to_new (optional) receives the
// crossing id mapping, indexed by old id then appended new ids.
Core apply_rewire(const Core& core, const Rewire& rw, std::vector<int>* old_to_new = nullptr);

std::vector<Move> enumerate_core_moves(const Core& core, const std::vector<bool>& frozen_arc,
                                       bool allow_loop_kinks);
Core apply_core_move(const Core& core, const Move& move, const std::vector<bool>& frozen_arc,
                     bool allow_loop_kinks, std::vector<int>* cmap);
Core apply_core_move_unchecked(const Core& core, const Move& move, std::vector<int>* cmap);

}  // namespace detail

}  // namespace topoflow
