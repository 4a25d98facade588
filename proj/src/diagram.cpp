#include "topoflow/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace topoflow {
namespace detail {

int Core::arc_count() const {
    int max_id = -1;
    for (const auto& c : crossings)
        for (ArcId a : c.slot) max_id = std::max(max_id, a);
    for (ArcId a : bottom) max_id = std::max(max_id, a);
    for (ArcId a : top) max_id = std::max(max_id, a);
    return max_id + 1;
}

std::vector<std::array<End, 2>> Core::arc_ends() const {
    const int n = arc_count();
    std::vector<std::array<End, 2>> ends(n);
    std::vector<int> seen(n, 0);
    auto attach = [&](ArcId a, End e) {
        if (a < 0 || a >= n) throw DiagramError("arc id out of range");
        if (seen[a] >= 2) throw DiagramError("arc id appears more than twice");
        ends[a][seen[a]++] = e;
    };
    for (int c = 0; c < static_cast<int>(crossings.size()); ++c)
        for (int k = 0; k < 4; ++k) attach(crossings[c].slot[k], End{c, k});
    for (int i = 0; i < static_cast<int>(bottom.size()); ++i)
        attach(bottom[i], End{End::kBottom, i});
    for (int i = 0; i < static_cast<int>(top.size()); ++i) attach(top[i], End{End::kTop, i});
    for (int a = 0; a < n; ++a)
        if (seen[a] != 2) throw DiagramError("arc id appears fewer than twice");
    return ends;
}

End Core::other_end(const std::vector<std::array<End, 2>>& ends, ArcId arc, End from) const {
    return ends[arc][0] == from ? ends[arc][1] : ends[arc][0];
}

ArcId Core::arc_at(End e) const {
    if (e.crossing == End::kBottom) return bottom.at(e.slot);
    if (e.crossing == End::kTop) return top.at(e.slot);
    return crossings.at(e.crossing).slot.at(e.slot);
}

std::vector<Face> trace_faces(const Core& core) {
    if (!core.bottom.empty() || !core.top.empty())
        throw DiagramError("face tracing requires a closed diagram");
    const auto ends = core.arc_ends();
    // A directed side is (arc, index of its head end).  The face turn at the
    // head crossing continues from the CCW-next slot.
    std::vector<std::array<bool, 2>> used(ends.size(), {false, false});
    std::vector<Face> faces;
    for (ArcId a = 0; a < static_cast<int>(ends.size()); ++a) {
        for (int h = 0; h < 2; ++h) {
            if (used[a][h]) continue;
            Face face;
            ArcId arc = a;
            int head = h;
            while (!used[arc][head]) {
                used[arc][head] = true;
                const End to = ends[arc][head];
                const End from = ends[arc][1 - head];
                face.push_back(FaceSide{arc, from, to});
                const End next_from{to.crossing, (to.slot + 1) % 4};
                const ArcId next_arc = core.crossings[to.crossing].slot[next_from.slot];
                head = (ends[next_arc][0] == next_from) ? 1 : 0;
                arc = next_arc;
            }
            faces.push_back(std::move(face));
        }
    }
    return faces;
}

std::vector<WalkStep> walk_closed(const Core& core, const std::vector<std::array<End, 2>>& ends,
                                  ArcId start, int dir) {
    std::vector<WalkStep> steps;
    ArcId arc = start;
    End entry = ends[arc][dir];
    const End stop = entry;
    while (true) {
        const End exit = core.other_end(ends, arc, entry);
        if (exit.at_terminal()) throw DiagramError("closed walk hit a boundary point");
        steps.push_back(WalkStep{exit.crossing, exit.slot, arc});
        entry = End{exit.crossing, (exit.slot + 2) % 4};
        arc = core.crossings[exit.crossing].slot[entry.slot];
        if (arc == start && entry == stop) break;
        if (steps.size() > 4 * core.crossings.size() + 4)
            throw DiagramError("component walk failed to close");
    }
    return steps;
}

int crossing_sign(int under_in_slot, int over_in_slot) {
    return ((under_in_slot == 0 && over_in_slot == 3) ||
            (under_in_slot == 2 && over_in_slot == 1))
               ? 1
               : -1;
}

std::string render_walks(const std::vector<std::vector<WalkStep>>& walks, int free_loops) {
    std::map<int, int> under_in, over_in;
    for (const auto& w : walks)
        for (const auto& s : w) {
            if (s.entry_slot % 2 == 0)
                under_in[s.crossing] = s.entry_slot;
            else
                over_in[s.crossing] = s.entry_slot;
        }
    std::map<int, int> label;
    std::ostringstream os;
    for (size_t t = 0; t < walks.size(); ++t) {
        if (t) os << "\n";
        bool first = true;
        for (const auto& s : walks[t]) {
            if (!first) os << " ";
            first = false;
            auto [it, ignore] = label.try_emplace(s.crossing, static_cast<int>(label.size()) + 1);
            (void)ignore;
            const int sign = crossing_sign(under_in.at(s.crossing), over_in.at(s.crossing));
            os << it->second << (s.entry_slot % 2 == 1 ? 'o' : 'u') << (sign > 0 ? '+' : '-');
        }
    }
    for (int i = 0; i < free_loops; ++i) {
        if (!walks.empty() || i) os << "\n";
        os << "O";
    }
    return os.str();
}

void Core::check() const {
    if (free_loops < 0) throw DiagramError("negative free loop count");
    const auto ends = arc_ends();

    if (!bottom.empty() || !top.empty()) return;  // checked through the closure

    // Genus check per connected piece of the 4-valent graph: the rotation
    // system must satisfy V - E + F = 2.
    const int n = static_cast<int>(crossings.size());
    if (n == 0) return;
    std::vector<int> piece(n, -1);
    int pieces = 0;
    for (int c0 = 0; c0 < n; ++c0) {
        if (piece[c0] >= 0) continue;
        std::vector<int> stack{c0};
        piece[c0] = pieces;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int k = 0; k < 4; ++k) {
                const End o = other_end(ends, crossings[c].slot[k], End{c, k});
                if (o.at_terminal()) continue;
                if (piece[o.crossing] < 0) {
                    piece[o.crossing] = pieces;
                    stack.push_back(o.crossing);
                }
            }
        }
        ++pieces;
    }
    std::vector<int> verts(pieces, 0), edges(pieces, 0), face_cnt(pieces, 0);
    for (int c = 0; c < n; ++c) ++verts[piece[c]];
    for (const auto& e : ends)
        if (!e[0].at_terminal()) ++edges[piece[e[0].crossing]];
    for (const auto& f : trace_faces(*this)) ++face_cnt[piece[f.front().to.crossing]];
    for (int p = 0; p < pieces; ++p)
        if (verts[p] - edges[p] + face_cnt[p] != 2)
            throw DiagramError("diagram is not realizable in the plane (genus != 0)");
}

}  // namespace detail

PlanarDiagram PlanarDiagram::empty_link() {
    PlanarDiagram d;
    d.core_.free_loops = 0;
    return d;
}

PlanarDiagram PlanarDiagram::from_core(detail::Core core) {
    if (!core.bottom.empty() || !core.top.empty())
        throw DiagramError("planar diagram cannot carry boundary points");
    PlanarDiagram d;
    d.core_ = std::move(core);
    d.validate();
    return d;
}

int PlanarDiagram::component_count() const {
    if (core_.crossings.empty()) return core_.free_loops;
    const auto ends = core_.arc_ends();
    std::vector<bool> seen(ends.size(), false);
    int count = 0;
    for (ArcId a = 0; a < static_cast<int>(ends.size()); ++a) {
        if (seen[a]) continue;
        for (const auto& s : detail::walk_closed(core_, ends, a, 0)) seen[s.arc] = true;
        ++count;
    }
    return count + core_.free_loops;
}

PlanarDiagram PlanarDiagram::mirrored() const {
    detail::Core core = core_;
    for (auto& c : core.crossings) c.slot = {c.slot[1], c.slot[2], c.slot[3], c.slot[0]};
    return from_core(std::move(core));
}

// ---------------------------------------------------------------------------
// Gauss codes

namespace {

struct Visit {
    int label;
    bool over;
    int sign;
};

std::vector<std::vector<Visit>> tokenize_gauss(const std::string& code) {
    std::vector<std::vector<Visit>> lines;
    std::istringstream in(code);
    std::string line;
    bool any = false;
    while (std::getline(in, line)) {
        any = true;
        std::vector<Visit> visits;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "O") continue;  // bare-loop marker
            size_t i = 0;
            if (tok[i] == '+' || tok[i] == '-') ++i;  // tolerated label sign
            size_t d0 = i;
            while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
            if (d0 == i) throw ParseError("gauss token lacks a crossing label: " + tok);
            const int label = std::stoi(tok.substr(d0, i - d0));
            if (i >= tok.size() || (tok[i] != 'o' && tok[i] != 'u'))
                throw ParseError("gauss token lacks o/u marker: " + tok);
            const bool over = tok[i] == 'o';
            ++i;
            if (i >= tok.size() || (tok[i] != '+' && tok[i] != '-'))
                throw ParseError("gauss token lacks crossing sign: " + tok);
            const int sign = tok[i] == '+' ? 1 : -1;
            if (i + 1 != tok.size()) throw ParseError("trailing characters in token: " + tok);
            visits.push_back(Visit{label, over, sign});
        }
        lines.push_back(std::move(visits));
    }
    if (!any) lines.push_back({});  // "" is the unknot
    return lines;
}

}  // namespace

PlanarDiagram PlanarDiagram::parse_gauss(const std::string& code) {
    if (code == "(empty)") return empty_link();
    const auto lines = tokenize_gauss(code);

    detail::Core core;
    std::map<int, int> crossing_of_label;
    std::map<int, int> sign_of_label;
    std::map<int, int> visit_score;
    int total_visits = 0;
    for (const auto& comp : lines) total_visits += static_cast<int>(comp.size());
    if (total_visits % 2 != 0) throw ParseError("odd number of crossing visits");
    core.crossings.resize(total_visits / 2, Crossing{{-1, -1, -1, -1}});

    int next_crossing = 0;
    int next_arc = 0;
    for (const auto& comp : lines) {
        if (comp.empty()) {
            ++core.free_loops;
            continue;
        }
        const int m = static_cast<int>(comp.size());
        const int first_arc = next_arc;
        for (int j = 0; j < m; ++j) {
            const Visit& v = comp[j];
            auto [it, fresh] = crossing_of_label.try_emplace(v.label, next_crossing);
            if (fresh) {
                if (next_crossing >= static_cast<int>(core.crossings.size()))
                    throw ParseError("crossing label count exceeds visit pairs");
                ++next_crossing;
                sign_of_label[v.label] = v.sign;
            } else if (sign_of_label[v.label] != v.sign) {
                throw ParseError("inconsistent sign for crossing label " +
                                 std::to_string(v.label));
            }
            visit_score[v.label] += v.over ? 1 : 4;
            const int c = it->second;
            const ArcId in_arc = first_arc + (j + m - 1) % m;
            const ArcId out_arc = first_arc + j;
            Crossing& rec = core.crossings[c];
            int in_slot, out_slot;
            if (!v.over) {
                in_slot = 0;
                out_slot = 2;
            } else if (v.sign > 0) {
                in_slot = 3;
                out_slot = 1;
            } else {
                in_slot = 1;
                out_slot = 3;
            }
            if (rec.slot[in_slot] != -1 || rec.slot[out_slot] != -1)
                throw ParseError("crossing label visited twice as " +
                                 std::string(v.over ? "over" : "under") + ": " +
                                 std::to_string(v.label));
            rec.slot[in_slot] = in_arc;
            rec.slot[out_slot] = out_arc;
        }
        next_arc += m;
    }
    for (const auto& [label, score] : visit_score)
        if (score != 5)
            throw ParseError("crossing label must appear exactly once over and once under: " +
                             std::to_string(label));
    for (const auto& rec : core.crossings)
        for (ArcId a : rec.slot)
            if (a < 0) throw ParseError("incomplete crossing record");
    return from_core(std::move(core));
}

std::string PlanarDiagram::gauss_code() const {
    const auto& core = core_;
    if (core.crossings.empty()) {
        if (core.free_loops == 0) return "(empty)";
        std::string s;
        for (int i = 0; i < core.free_loops; ++i) {
            if (i) s += "\n";
            s += "O";
        }
        return s;
    }
    const auto ends = core.arc_ends();
    const int arc_n = static_cast<int>(ends.size());

    std::vector<int> comp_of_arc(arc_n, -1);
    int ncomp = 0;
    for (ArcId a = 0; a < arc_n; ++a) {
        if (comp_of_arc[a] >= 0) continue;
        for (const auto& s : detail::walk_closed(core, ends, a, 0)) comp_of_arc[s.arc] = ncomp;
        ++ncomp;
    }
    std::vector<std::vector<std::pair<ArcId, int>>> comp_starts(ncomp);
    for (ArcId a = 0; a < arc_n; ++a)
        for (int dir = 0; dir < 2; ++dir) comp_starts[comp_of_arc[a]].push_back({a, dir});

    std::string best;
    std::vector<std::vector<detail::WalkStep>> walks;
    std::vector<bool> used(ncomp, false);
    std::function<void()> rec = [&]() {
        if (static_cast<int>(walks.size()) == ncomp) {
            std::string s = detail::render_walks(walks, core.free_loops);
            if (best.empty() || s < best) best = s;
            return;
        }
        for (int cidx = 0; cidx < ncomp; ++cidx) {
            if (used[cidx]) continue;
            used[cidx] = true;
            for (const auto& [arc, dir] : comp_starts[cidx]) {
                walks.push_back(detail::walk_closed(core, ends, arc, dir));
                rec();
                walks.pop_back();
            }
            used[cidx] = false;
        }
    };
    rec();
    return best;
}

std::vector<PlanarDiagram> PlanarDiagram::split_components() const {
    std::vector<PlanarDiagram> out;
    const auto& core = core_;
    if (!core.crossings.empty()) {
        const auto ends = core.arc_ends();
        const int arc_n = static_cast<int>(ends.size());
        std::vector<bool> seen(arc_n, false);
        for (ArcId a = 0; a < arc_n; ++a) {
            if (seen[a]) continue;
            const auto walk = detail::walk_closed(core, ends, a, 0);
            for (const auto& s : walk) seen[s.arc] = true;
            // keep self-crossings only; crossings shared with another
            // component are projection artifacts for this knot alone
            std::map<int, int> passes;
            for (const auto& s : walk) ++passes[s.crossing];
            std::vector<detail::WalkStep> own;
            for (const auto& s : walk)
                if (passes.at(s.crossing) == 2) own.push_back(s);
            if (own.empty()) {
                out.push_back(unknot());
                continue;
            }
            out.push_back(parse_gauss(detail::render_walks({own}, 0)));
        }
    }
    for (int i = 0; i < core.free_loops; ++i) out.push_back(unknot());
    return out;
}

}  // namespace topoflow
