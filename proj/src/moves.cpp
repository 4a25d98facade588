// Reidemeister move machinery.
//
// Every move is expressed as a rewiring of the diagram core: crossings are
// removed (their strand pass-throughs glued), new crossings are spliced
// into existing arcs, and explicit connections wire junction slots of the
// removed crossings to slots of the new ones.  One engine (apply_rewire)
// resolves the resulting connection graph into fresh arcs, which keeps the
// many coincidence cases (continuation arcs shared between strands, loops
// closing onto themselves) out of the per-move code.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "topoflow/diagram.hpp"

namespace topoflow {
namespace detail {

Core apply_rewire(const Core& core, const Rewire& rw, std::vector<int>* old_to_new) {
    const int n_old = static_cast<int>(core.crossings.size());
    std::vector<bool> removed(n_old, false);
    for (int r : rw.removed_crossings) removed.at(r) = true;
    const auto ends = core.arc_ends();
    const int arc_n = static_cast<int>(ends.size());
    std::vector<bool> arc_removed(arc_n, false);
    for (ArcId a : rw.removed_arcs) arc_removed.at(a) = true;
    std::set<End> dropped_terminals(rw.removed_terminals.begin(), rw.removed_terminals.end());

    // connection graph with explicit edge identities
    std::map<End, std::vector<std::pair<End, int>>> adj;
    int edge_count = 0;
    auto link = [&](End p, End q) {
        adj[p].push_back({q, edge_count});
        adj[q].push_back({p, edge_count});
        ++edge_count;
    };

    std::vector<std::vector<const Rewire::Splice*>> splices_of(arc_n);
    for (const auto& sp : rw.splices) splices_of.at(sp.arc).push_back(&sp);
    for (ArcId a = 0; a < arc_n; ++a) {
        if (arc_removed[a]) continue;
        const auto& sps = splices_of[a];
        if (sps.empty()) {
            link(ends[a][0], ends[a][1]);
        } else if (sps.size() == 1) {
            const auto& sp = *sps[0];
            const End far = core.other_end(ends, a, sp.from);
            End cur = sp.from;
            for (const auto& [in, out] : sp.through) {
                link(cur, in);
                cur = out;
            }
            link(cur, far);
        } else if (sps.size() == 2 && !(sps[0]->from == sps[1]->from)) {
            // spliced from both ends: walk the first insertion forward,
            // then the second against its own direction
            const auto& fwd = *sps[0];
            const auto& bwd = *sps[1];
            End cur = fwd.from;
            for (const auto& [in, out] : fwd.through) {
                link(cur, in);
                cur = out;
            }
            for (auto it = bwd.through.rbegin(); it != bwd.through.rend(); ++it) {
                link(cur, it->second);
                cur = it->first;
            }
            link(cur, bwd.from);
        } else {
            throw DiagramError("conflicting splices on one arc");
        }
    }

    std::set<End> connected;
    for (const auto& [p, q] : rw.connections) {
        link(p, q);
        connected.insert(p);
        connected.insert(q);
    }
    for (int r : rw.removed_crossings) {
        for (int k = 0; k < 2; ++k) {
            const End p{r, k}, q{r, k + 2};
            if (connected.count(p) || connected.count(q)) continue;
            const bool p_gone = arc_removed[core.crossings[r].slot[k]];
            const bool q_gone = arc_removed[core.crossings[r].slot[k + 2]];
            if (p_gone && q_gone) continue;
            link(p, q);
        }
    }

    const int n_new = n_old + rw.added_crossings;
    auto is_final = [&](End e) {
        if (e.at_terminal()) return dropped_terminals.count(e) == 0;
        return e.crossing >= n_old || !removed[e.crossing];
    };
    for (const auto& [node, nb] : adj) {
        const size_t deg = nb.size();
        if (is_final(node) ? deg != 1 : deg != 2)
            throw DiagramError("rewire produced an inconsistent connection graph");
    }

    std::vector<End> final_order;
    for (int i = 0; i < static_cast<int>(core.bottom.size()); ++i) {
        const End e{End::kBottom, i};
        if (!dropped_terminals.count(e)) final_order.push_back(e);
    }
    for (int i = 0; i < static_cast<int>(core.top.size()); ++i) {
        const End e{End::kTop, i};
        if (!dropped_terminals.count(e)) final_order.push_back(e);
    }
    for (int c = 0; c < n_new; ++c) {
        if (c < n_old && removed[c]) continue;
        for (int k = 0; k < 4; ++k) final_order.push_back(End{c, k});
    }

    std::map<End, ArcId> arc_of;
    std::vector<bool> edge_used(edge_count, false);
    int next_arc = 0;
    for (const End start : final_order) {
        if (arc_of.count(start)) continue;
        auto it = adj.find(start);
        if (it == adj.end()) throw DiagramError("dangling endpoint after rewire");
        End cur = start;
        while (true) {
            const auto& nb = adj.at(cur);
            int chosen = -1;
            for (const auto& [to, eid] : nb)
                if (!edge_used[eid]) {
                    chosen = eid;
                    cur = to;
                    break;
                }
            if (chosen < 0) throw DiagramError("connection walk stalled");
            edge_used[chosen] = true;
            if (is_final(cur)) break;
        }
        arc_of[start] = next_arc;
        arc_of[cur] = next_arc;
        ++next_arc;
    }

    // leftover cycles among junction nodes are material closing on itself
    int extra_loops = 0;
    for (const auto& [node, nb] : adj) {
        (void)node;
        for (const auto& [to, eid] : nb) {
            (void)to;
            if (edge_used[eid]) continue;
            // walk the cycle
            End cur = node;
            while (true) {
                int chosen = -1;
                for (const auto& [to2, eid2] : adj.at(cur))
                    if (!edge_used[eid2]) {
                        chosen = eid2;
                        cur = to2;
                        break;
                    }
                if (chosen < 0) break;
                edge_used[chosen] = true;
            }
            ++extra_loops;
        }
    }

    Core out;
    out.free_loops = core.free_loops + extra_loops;
    std::vector<int> new_id(n_new, -1);
    for (int c = 0; c < n_old; ++c)
        if (!removed[c]) {
            new_id[c] = static_cast<int>(out.crossings.size());
            out.crossings.push_back({});
        }
    for (int c = n_old; c < n_new; ++c) {
        new_id[c] = static_cast<int>(out.crossings.size());
        out.crossings.push_back({});
    }
    for (int c = 0; c < n_new; ++c) {
        if (new_id[c] < 0) continue;
        for (int k = 0; k < 4; ++k) {
            const auto it = arc_of.find(End{c, k});
            if (it == arc_of.end()) throw DiagramError("unfilled slot after rewire");
            out.crossings[new_id[c]].slot[k] = it->second;
        }
    }
    for (int i = 0; i < static_cast<int>(core.bottom.size()); ++i) {
        const End e{End::kBottom, i};
        if (!dropped_terminals.count(e)) out.bottom.push_back(arc_of.at(e));
    }
    for (int i = 0; i < static_cast<int>(core.top.size()); ++i) {
        const End e{End::kTop, i};
        if (!dropped_terminals.count(e)) out.top.push_back(arc_of.at(e));
    }
    if (old_to_new) {
        old_to_new->assign(n_new, -1);
        for (int c = 0; c < n_new; ++c) (*old_to_new)[c] = new_id[c];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Move enumeration

namespace {

bool arc_frozen(const std::vector<bool>& frozen, ArcId a) {
    return a >= 0 && a < static_cast<int>(frozen.size()) && frozen[a];
}

bool face_frozen(const Face& f, const std::vector<bool>& frozen) {
    for (const auto& s : f)
        if (arc_frozen(frozen, s.arc)) return true;
    return false;
}

bool continuations_frozen(const Core& core, const Face& f, const std::vector<bool>& frozen) {
    for (const auto& s : f) {
        if (arc_frozen(frozen, core.crossings[s.from.crossing].slot[(s.from.slot + 2) % 4]))
            return true;
        if (arc_frozen(frozen, core.crossings[s.to.crossing].slot[(s.to.slot + 2) % 4]))
            return true;
    }
    return false;
}

// R1 kink: an arc occupying two CCW-adjacent slots of one crossing.
bool kink_at(const Core& core, int c) {
    const auto& s = core.crossings[c].slot;
    for (int k = 0; k < 4; ++k)
        if (s[k] == s[(k + 1) % 4]) return true;
    return false;
}

}  // namespace

std::vector<Move> enumerate_core_moves(const Core& core, const std::vector<bool>& frozen_arc,
                                       bool allow_loop_kinks) {
    if (!core.bottom.empty() || !core.top.empty())
        throw DiagramError("move enumeration requires a closed core");
    std::vector<Move> out;
    const int n = static_cast<int>(core.crossings.size());
    std::vector<Face> faces;
    if (n > 0) faces = trace_faces(core);

    for (int c = 0; c < n; ++c) {
        if (!kink_at(core, c)) continue;
        bool frozen = false;
        for (int k = 0; k < 4; ++k)
            if (arc_frozen(frozen_arc, core.crossings[c].slot[k])) frozen = true;
        if (frozen) continue;
        out.push_back(Move{MoveType::R1Remove, {c}, {}, 0, -1});
    }

    std::set<std::pair<int, int>> bigons;
    for (const Face& f : faces) {
        if (f.size() != 2) continue;
        const int c = f[0].to.crossing, d = f[1].to.crossing;
        if (c == d || f[0].arc == f[1].arc) continue;
        if (f[0].from.slot % 2 != f[0].to.slot % 2) continue;
        if (face_frozen(f, frozen_arc) || continuations_frozen(core, f, frozen_arc)) continue;
        const auto key = std::minmax(c, d);
        if (!bigons.insert({key.first, key.second}).second) continue;
        out.push_back(Move{MoveType::R2Remove, {key.first, key.second}, {}, 0, -1});
    }

    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        const Face& f = faces[fi];
        if (f.size() != 3) continue;
        const int a = f[0].to.crossing, b = f[1].to.crossing, c = f[2].to.crossing;
        if (a == b || b == c || a == c) continue;
        if (f[0].arc == f[1].arc || f[1].arc == f[2].arc || f[0].arc == f[2].arc) continue;
        if (face_frozen(f, frozen_arc) || continuations_frozen(core, f, frozen_arc)) continue;
        for (int i = 0; i < 3; ++i) {
            if (f[i].from.slot % 2 != f[i].to.slot % 2) continue;
            out.push_back(Move{MoveType::R3,
                               {f[i].from.crossing, f[i].to.crossing, f[(i + 1) % 3].to.crossing},
                               {f[i].arc},
                               0,
                               fi});
        }
    }

    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        const Face& f = faces[fi];
        if (face_frozen(f, frozen_arc)) continue;
        for (int i = 0; i < static_cast<int>(f.size()); ++i)
            for (int j = 0; j < static_cast<int>(f.size()); ++j) {
                if (i == j || f[i].arc == f[j].arc) continue;
                for (int over = 0; over < 2; ++over)
                    out.push_back(Move{MoveType::R2Insert, {}, {f[i].arc, f[j].arc}, over, fi});
            }
    }

    const int arc_n = core.arc_count();
    for (ArcId a = 0; a < arc_n; ++a) {
        if (arc_frozen(frozen_arc, a)) continue;
        for (int v = 0; v < 4; ++v) out.push_back(Move{MoveType::R1Insert, {}, {a}, v, -1});
    }
    if (allow_loop_kinks)
        for (int l = 0; l < core.free_loops; ++l)
            for (int v = 0; v < 4; ++v) out.push_back(Move{MoveType::R1Insert, {}, {}, v, l});

    std::stable_sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Move application

namespace {

Core apply_r1_insert(const Core& core, const Move& m, std::vector<int>* cmap) {
    const int N = static_cast<int>(core.crossings.size());
    if (m.arcs.empty()) {
        if (m.face < 0 || m.face >= core.free_loops)
            throw DiagramError("inapplicable move location");
        Core out = core;
        out.free_loops -= 1;
        const ArcId rest = core.arc_count();
        const ArcId loop = rest + 1;
        Crossing cr{};
        cr.slot[m.variant] = loop;
        cr.slot[(m.variant + 1) % 4] = loop;
        cr.slot[(m.variant + 2) % 4] = rest;
        cr.slot[(m.variant + 3) % 4] = rest;
        out.crossings.push_back(cr);
        if (cmap) {
            cmap->resize(N + 1);
            for (int i = 0; i <= N; ++i) (*cmap)[i] = i;
        }
        return out;
    }
    Rewire rw;
    rw.added_crossings = 1;
    const int v = m.variant;  // loop occupies slots (v, v+1)
    rw.splices.push_back(Rewire::Splice{m.arcs[0],
                                        core.arc_ends()[m.arcs[0]][0],
                                        {{End{N, (v + 2) % 4}, End{N, (v + 3) % 4}}}});
    rw.connections.push_back({End{N, v}, End{N, (v + 1) % 4}});
    return apply_rewire(core, rw, cmap);
}

Core apply_r1_remove(const Core& core, const Move& m, std::vector<int>* cmap) {
    const int c = m.crossings.at(0);
    if (c < 0 || c >= static_cast<int>(core.crossings.size()) || !kink_at(core, c))
        throw DiagramError("inapplicable move location");
    Rewire rw;
    rw.removed_crossings = {c};
    return apply_rewire(core, rw, cmap);
}

Core apply_r2_remove(const Core& core, const Move& m, std::vector<int>* cmap) {
    const auto faces = trace_faces(core);
    for (const Face& f : faces) {
        if (f.size() != 2) continue;
        const int c = f[0].to.crossing, d = f[1].to.crossing;
        if (std::minmax(c, d) !=
            std::minmax(m.crossings.at(0), m.crossings.at(1)))
            continue;
        if (c == d || f[0].arc == f[1].arc) continue;
        if (f[0].from.slot % 2 != f[0].to.slot % 2) continue;
        Rewire rw;
        rw.removed_crossings = {c, d};
        return apply_rewire(core, rw, cmap);
    }
    throw DiagramError("inapplicable move location");
}

Core apply_r2_insert(const Core& core, const Move& m, std::vector<int>* cmap) {
    const auto faces = trace_faces(core);
    if (m.face < 0 || m.face >= static_cast<int>(faces.size()))
        throw DiagramError("inapplicable move location");
    const Face& f = faces[m.face];
    int i = -1, j = -1;
    for (int k = 0; k < static_cast<int>(f.size()); ++k) {
        if (f[k].arc == m.arcs.at(0) && i < 0) i = k;
        if (f[k].arc == m.arcs.at(1) && j < 0) j = k;
    }
    if (i < 0 || j < 0 || i == j) throw DiagramError("inapplicable move location");
    const FaceSide& x = f[i];
    const FaceSide& y = f[j];
    const int N = static_cast<int>(core.crossings.size());
    Rewire rw;
    rw.added_crossings = 2;
    if (m.variant == 0) {  // x pushed under y
        rw.splices.push_back(Rewire::Splice{
            x.arc, x.from, {{End{N, 0}, End{N, 2}}, {End{N + 1, 2}, End{N + 1, 0}}}});
        rw.splices.push_back(Rewire::Splice{
            y.arc, y.from, {{End{N + 1, 1}, End{N + 1, 3}}, {End{N, 1}, End{N, 3}}}});
    } else {  // x pushed over y
        rw.splices.push_back(Rewire::Splice{
            x.arc, x.from, {{End{N, 3}, End{N, 1}}, {End{N + 1, 1}, End{N + 1, 3}}}});
        rw.splices.push_back(Rewire::Splice{
            y.arc, y.from, {{End{N + 1, 0}, End{N + 1, 2}}, {End{N, 0}, End{N, 2}}}});
    }
    return apply_rewire(core, rw, cmap);
}

Core mirror_core(const Core& core) {
    Core out = core;
    for (auto& c : out.crossings) c.slot = {c.slot[1], c.slot[2], c.slot[3], c.slot[0]};
    return out;
}

// Slide strand x (under both others) across the far crossing C of the
// triangle: delete its crossings with sz and sy and re-cross on the other
// side of C, in swapped order.
Core apply_r3_under(const Core& core, const Face& f, int i, std::vector<int>* cmap) {
    const FaceSide& x = f[i];
    const FaceSide& y = f[(i + 1) % 3];
    const FaceSide& z = f[(i + 2) % 3];
    const int A = x.from.crossing, B = x.to.crossing, C = y.to.crossing;
    const int N = static_cast<int>(core.crossings.size());
    const int B2 = N, A2 = N + 1;

    const int c_zc = (z.from.slot + 2) % 4;
    const int c_yc = (y.to.slot + 2) % 4;

    Rewire rw;
    rw.removed_crossings = {A, B};
    rw.added_crossings = 2;
    rw.connections = {
        {End{A, z.to.slot}, End{A, (z.to.slot + 2) % 4}},      // sz straight through old A
        {End{B, y.from.slot}, End{B, (y.from.slot + 2) % 4}},  // sy straight through old B
        {End{A, (x.from.slot + 2) % 4}, End{B2, 0}},           // sx: B2 replaces its A pass
        {End{A, x.from.slot}, End{B2, 2}},
        {End{B, x.to.slot}, End{A2, 0}},  // sx: A2 replaces its B pass
        {End{B, (x.to.slot + 2) % 4}, End{A2, 2}},
    };
    rw.splices.push_back(
        Rewire::Splice{core.crossings[C].slot[c_zc], End{C, c_zc}, {{End{A2, 1}, End{A2, 3}}}});
    rw.splices.push_back(
        Rewire::Splice{core.crossings[C].slot[c_yc], End{C, c_yc}, {{End{B2, 1}, End{B2, 3}}}});
    return apply_rewire(core, rw, cmap);
}

Core apply_r3(const Core& core, const Move& m, std::vector<int>* cmap) {
    const auto faces = trace_faces(core);
    for (const Face& f : faces) {
        if (f.size() != 3) continue;
        for (int i = 0; i < 3; ++i) {
            if (f[i].arc != m.arcs.at(0)) continue;
            if (f[i].from.crossing != m.crossings.at(0) ||
                f[i].to.crossing != m.crossings.at(1) ||
                f[(i + 1) % 3].to.crossing != m.crossings.at(2))
                continue;
            if (f[i].from.slot % 2 != f[i].to.slot % 2) continue;
            if (f[i].from.slot % 2 == 0) return apply_r3_under(core, f, i, cmap);
            // movable strand passes over both: conjugate by the mirror
            const Core mc = mirror_core(core);
            for (const Face& mf : trace_faces(mc)) {
                if (mf.size() != 3) continue;
                for (int k = 0; k < 3; ++k) {
                    if (mf[k].arc != m.arcs.at(0)) continue;
                    if (mf[k].from.crossing != m.crossings.at(0) ||
                        mf[k].to.crossing != m.crossings.at(1) ||
                        mf[(k + 1) % 3].to.crossing != m.crossings.at(2))
                        continue;
                    return mirror_core(apply_r3_under(mc, mf, k, cmap));
                }
            }
            throw DiagramError("inapplicable move location");
        }
    }
    throw DiagramError("inapplicable move location");
}

}  // namespace

Core apply_core_move_unchecked(const Core& core, const Move& m, std::vector<int>* cmap) {
    Core out;
    switch (m.type) {
        case MoveType::R1Insert:
            out = apply_r1_insert(core, m, cmap);
            break;
        case MoveType::R1Remove:
            out = apply_r1_remove(core, m, cmap);
            break;
        case MoveType::R2Insert:
            out = apply_r2_insert(core, m, cmap);
            break;
        case MoveType::R2Remove:
            out = apply_r2_remove(core, m, cmap);
            break;
        case MoveType::R3:
            out = apply_r3(core, m, cmap);
            break;
    }
    out.check();
    return out;
}

Core apply_core_move(const Core& core, const Move& m, const std::vector<bool>& frozen_arc,
                     bool allow_loop_kinks, std::vector<int>* cmap) {
    const auto legal = enumerate_core_moves(core, frozen_arc, allow_loop_kinks);
    if (std::find(legal.begin(), legal.end(), m) == legal.end())
        throw DiagramError("inapplicable move location");
    return apply_core_move_unchecked(core, m, cmap);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public move API

std::string Move::describe() const {
    std::ostringstream os;
    switch (type) {
        case MoveType::R1Remove:
            os << "R1 remove kink at crossing " << crossings.at(0);
            break;
        case MoveType::R2Remove:
            os << "R2 remove bigon at crossings " << crossings.at(0) << "," << crossings.at(1);
            break;
        case MoveType::R3:
            os << "R3 slide arc " << arcs.at(0) << " across crossing " << crossings.at(2);
            break;
        case MoveType::R2Insert:
            os << "R2 push arc " << arcs.at(0) << (variant ? " over " : " under ") << "arc "
               << arcs.at(1) << " (face " << face << ")";
            break;
        case MoveType::R1Insert:
            if (arcs.empty())
                os << "R1 kink on free loop " << face << " (variant " << variant << ")";
            else
                os << "R1 kink on arc " << arcs.at(0) << " (variant " << variant << ")";
            break;
    }
    return os.str();
}

bool Move::operator<(const Move& rhs) const {
    auto rank = [](MoveType t) {
        switch (t) {
            case MoveType::R1Remove: return 0;
            case MoveType::R2Remove: return 1;
            case MoveType::R3: return 2;
            case MoveType::R2Insert: return 3;
            case MoveType::R1Insert: return 4;
        }
        return 5;
    };
    if (rank(type) != rank(rhs.type)) return rank(type) < rank(rhs.type);
    if (arcs != rhs.arcs) return arcs < rhs.arcs;
    if (crossings != rhs.crossings) return crossings < rhs.crossings;
    if (variant != rhs.variant) return variant < rhs.variant;
    return face < rhs.face;
}

bool Move::operator==(const Move& rhs) const {
    return type == rhs.type && crossings == rhs.crossings && arcs == rhs.arcs &&
           variant == rhs.variant && face == rhs.face;
}

std::vector<Move> enumerate_moves(const PlanarDiagram& d) {
    return detail::enumerate_core_moves(d.core(), {}, true);
}

PlanarDiagram apply_reidemeister(const PlanarDiagram& d, const Move& move) {
    return PlanarDiagram::from_core(detail::apply_core_move(d.core(), move, {}, true, nullptr));
}

SimplifyResult simplify_bfs(const PlanarDiagram& d, int max_crossings, int max_states) {
    if (max_crossings <= 0 || max_states <= 0)
        throw Error("simplify_bfs bounds must be positive");
    std::string best_code = d.gauss_code();
    int best_crossings = d.crossing_count();
    std::set<std::string> visited{best_code};
    std::deque<std::string> queue{best_code};
    int explored = 0;
    bool truncated = false;
    while (!queue.empty()) {
        if (explored >= max_states) {
            truncated = true;
            break;
        }
        const std::string code = queue.front();
        queue.pop_front();
        ++explored;
        const PlanarDiagram cur = PlanarDiagram::parse_gauss(code);
        if (cur.crossing_count() < best_crossings ||
            (cur.crossing_count() == best_crossings && code < best_code)) {
            best_crossings = cur.crossing_count();
            best_code = code;
        }
        if (best_crossings == 0) return SimplifyResult{cur, true};
        for (const Move& m : enumerate_moves(cur)) {
            PlanarDiagram next =
                PlanarDiagram::from_core(detail::apply_core_move_unchecked(cur.core(), m, nullptr));
            if (next.crossing_count() > max_crossings) continue;
            std::string next_code = next.gauss_code();
            if (visited.count(next_code)) continue;
            visited.insert(next_code);
            queue.push_back(std::move(next_code));
        }
    }
    return SimplifyResult{PlanarDiagram::parse_gauss(best_code), !truncated};
}

}  // namespace topoflow
