#pragma once

#include "topoflow/diagram.hpp"
#include "topoflow/laurent.hpp"

namespace topoflow {

struct BracketOptions {
    int max_crossings = 24;
    int threads = 0;  // 0 = pick from hardware, capped
};

// Kauffman bracket state sum: over all 2^n smoothings, A^(a-b) * d^(loops-1)
// with d = -A^2 - A^-2.  A-smoothing of a crossing joins slot pairs (0,1)
// and (2,3); B-smoothing joins (1,2) and (3,0).  Exact; the result is
// identical for any worker count.
LaurentPoly kauffman_bracket(const PlanarDiagram& d, const BracketOptions& opt = {});

// A diagram plus a direction choice per component (components ordered by
// their smallest arc id; free loops carry no orientation data).
struct OrientedDiagram {
    PlanarDiagram base;
    std::vector<bool> reversed;  // one flag per crossing-carrying component

    static OrientedDiagram standard(const PlanarDiagram& d);
};

int writhe(const OrientedDiagram& d);

// (-A^3)^(-writhe) * bracket, in the variable A (t = A^-4 is a rendering
// choice).  For knots the orientation does not matter.
LaurentPoly jones(const OrientedDiagram& d, const BracketOptions& opt = {});
LaurentPoly jones(const PlanarDiagram& d, const BracketOptions& opt = {});

// True iff pq = p*q; the connected-sum multiplicativity test.
bool jones_connected_sum_check(const LaurentPoly& p, const LaurentPoly& q,
                               const LaurentPoly& pq);

}  // namespace topoflow
