#include "topoflow/annular.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace topoflow {

namespace {

using detail::Core;

// Closure bookkeeping: crossing ids are preserved; each merged arc of the
// closed core remembers the chain of rectangle arcs and glued points it
// absorbed, so interior moves can be pulled back to the rectangle.
struct ClosureInfo {
    Core closed;
    std::vector<bool> merged;  // per closed arc
    struct Chain {
        End e0, e1;                // crossing-slot endpoints in the closed core
        std::vector<End> joints;   // terminal end of the left piece at each junction
    };
    std::map<ArcId, Chain> chains;      // keyed by closed arc id
    std::vector<ArcId> closed_of_arc;   // rectangle arc -> closed arc
    int chain_loops = 0;                // chains that closed into free loops
};

ClosureInfo close_annular(const Core& rect) {
    const auto ends = rect.arc_ends();
    const int arc_n = static_cast<int>(ends.size());
    const int b = static_cast<int>(rect.bottom.size());

    ClosureInfo info;
    info.closed.crossings = rect.crossings;
    info.closed.free_loops = rect.free_loops;
    info.closed_of_arc.assign(arc_n, -1);

    auto mate = [&](End t) {
        return End{t.crossing == End::kBottom ? End::kTop : End::kBottom, t.slot};
    };
    auto arc_at_terminal = [&](End t) {
        return t.crossing == End::kBottom ? rect.bottom[t.slot] : rect.top[t.slot];
    };

    std::vector<bool> seen(arc_n, false);
    int next_arc = 0;
    // chains starting and ending at crossing slots
    for (ArcId a = 0; a < arc_n; ++a) {
        if (seen[a] || ends[a][0].at_terminal() || ends[a][1].at_terminal()) continue;
        seen[a] = true;
        info.closed_of_arc[a] = next_arc++;
    }
    for (ArcId a = 0; a < arc_n; ++a) {
        if (seen[a]) continue;
        // walk to one extreme of the chain
        End start_cross{};
        bool cyclic = true;
        {
            ArcId cur = a;
            End from = ends[cur][0];
            if (!from.at_terminal()) from = ends[cur][1];
            // from is a terminal end; walk the other way first to find a
            // crossing end, if any
            End head = rect.other_end(ends, cur, from);
            std::set<ArcId> guard;
            while (head.at_terminal()) {
                if (!guard.insert(cur).second) break;
                const End m = mate(head);
                cur = arc_at_terminal(m);
                head = rect.other_end(ends, cur, m);
            }
            if (!head.at_terminal()) {
                cyclic = false;
                start_cross = head;
            }
        }
        if (cyclic) {
            // pure terminal cycle: the chain closes into a free loop
            ArcId cur = a;
            End from = ends[cur][0].at_terminal() ? ends[cur][0] : ends[cur][1];
            while (!seen[cur]) {
                seen[cur] = true;
                info.closed_of_arc[cur] = -2;  // absorbed into a loop
                const End far = rect.other_end(ends, cur, from);
                const End m = mate(far);
                from = m;
                cur = arc_at_terminal(m);
            }
            info.closed.free_loops += 1;
            info.chain_loops += 1;
            continue;
        }
        // walk the chain from start_cross to the far crossing end
        ClosureInfo::Chain chain;
        chain.e0 = start_cross;
        const ArcId closed_id = next_arc++;
        ArcId cur = rect.crossings[start_cross.crossing].slot[start_cross.slot];
        End from = start_cross;
        while (true) {
            seen[cur] = true;
            info.closed_of_arc[cur] = closed_id;
            const End far = rect.other_end(ends, cur, from);
            if (!far.at_terminal()) {
                chain.e1 = far;
                break;
            }
            chain.joints.push_back(far);
            const End m = mate(far);
            from = m;
            cur = arc_at_terminal(m);
        }
        info.chains[closed_id] = std::move(chain);
    }

    info.merged.assign(next_arc, false);
    for (const auto& [id, chain] : info.chains) {
        (void)chain;
        info.merged[id] = true;
    }
    for (auto& c : info.closed.crossings)
        for (int k = 0; k < 4; ++k) {
            const ArcId mapped = info.closed_of_arc[c.slot[k]];
            if (mapped < 0) throw DiagramError("closure mapping failure");
            c.slot[k] = mapped;
        }
    info.closed.check();
    return info;
}

}  // namespace

// ---------------------------------------------------------------------------

AnnularDiagram AnnularDiagram::from_core(detail::Core core) {
    if (core.bottom.size() != core.top.size())
        throw DiagramError("bottom and top boundary counts differ");
    AnnularDiagram d;
    d.core_ = std::move(core);
    const auto info = close_annular(d.core_);  // validates planarity
    // single closed curve
    int comps = info.closed.free_loops;
    if (!info.closed.crossings.empty()) {
        const auto ends = info.closed.arc_ends();
        std::vector<bool> seen(ends.size(), false);
        for (ArcId a = 0; a < static_cast<int>(ends.size()); ++a) {
            if (seen[a]) continue;
            for (const auto& s : detail::walk_closed(info.closed, ends, a, 0)) seen[s.arc] = true;
            ++comps;
        }
    }
    if (comps != 1)
        throw DiagramError("glued-up curve must be a single component, got " +
                           std::to_string(comps));
    d.compute_signs();
    return d;
}

void AnnularDiagram::compute_signs() {
    const int b = static_cast<int>(core_.bottom.size());
    signs_.assign(b, 0);
    if (b == 0) return;
    const auto ends = core_.arc_ends();
    ArcId arc = core_.bottom[0];
    End entry{End::kBottom, 0};
    int guard = 0;
    while (true) {
        const End exit = core_.other_end(ends, arc, entry);
        if (exit.at_terminal()) {
            if (exit.crossing == End::kTop) {
                signs_[exit.slot] = 1;  // passing the level upward
                entry = End{End::kBottom, exit.slot};
                arc = core_.bottom[exit.slot];
            } else {
                signs_[exit.slot] = -1;
                entry = End{End::kTop, exit.slot};
                arc = core_.top[exit.slot];
            }
            if (entry.crossing == End::kBottom && entry.slot == 0) break;
        } else {
            entry = End{exit.crossing, (exit.slot + 2) % 4};
            arc = core_.crossings[exit.crossing].slot[entry.slot];
        }
        if (++guard > 8 * (static_cast<int>(core_.crossings.size()) + b) + 8)
            throw DiagramError("level trace failed to close");
    }
    const int total = std::accumulate(signs_.begin(), signs_.end(), 0);
    if (total < 0)
        for (int& s : signs_) s = -s;
}

int AnnularDiagram::intersection_index() const {
    return std::accumulate(signs_.begin(), signs_.end(), 0);
}

PlanarDiagram AnnularDiagram::closure() const {
    return PlanarDiagram::from_core(close_annular(core_).closed);
}

std::vector<AnnularDiagram::Strand> AnnularDiagram::strands() const {
    std::vector<Strand> out;
    const int b = static_cast<int>(core_.bottom.size());
    if (b == 0) return out;
    const auto ends = core_.arc_ends();
    std::set<std::pair<int, int>> used;  // terminal ends consumed
    auto key = [](End e) { return std::pair<int, int>(e.crossing, e.slot); };
    std::vector<End> order;
    for (int i = 0; i < b; ++i) order.push_back(End{End::kBottom, i});
    for (int i = 0; i < b; ++i) order.push_back(End{End::kTop, i});
    for (const End start : order) {
        if (used.count(key(start))) continue;
        Strand s;
        s.first = start;
        ArcId arc = start.crossing == End::kBottom ? core_.bottom[start.slot]
                                                   : core_.top[start.slot];
        End entry = start;
        while (true) {
            s.arcs.push_back(arc);
            const End exit = core_.other_end(ends, arc, entry);
            if (exit.at_terminal()) {
                s.second = exit;
                break;
            }
            entry = End{exit.crossing, (exit.slot + 2) % 4};
            arc = core_.crossings[exit.crossing].slot[entry.slot];
        }
        used.insert(key(s.first));
        used.insert(key(s.second));
        s.through = s.first.crossing != s.second.crossing;
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interior moves

std::vector<Move> AnnularDiagram::enumerate_interior_moves() const {
    const auto info = close_annular(core_);
    return detail::enumerate_core_moves(info.closed, info.merged, false);
}

AnnularDiagram AnnularDiagram::apply_interior_move(const Move& m) const {
    const auto info = close_annular(core_);
    std::vector<int> cmap;
    const Core moved =
        detail::apply_core_move(info.closed, m, info.merged, false, &cmap);

    // Pull the result back to the rectangle: merged arcs were untouched, so
    // each is recovered at its (mapped) old endpoint slot and re-split into
    // its chain of rectangle pieces.
    const auto moved_ends = moved.arc_ends();
    const int closed_arcs = static_cast<int>(moved_ends.size());
    std::vector<char> is_chain(closed_arcs, 0);
    struct Pending {
        ArcId moved_arc;
        const ClosureInfo::Chain* chain;
        bool from_e0;
    };
    std::vector<Pending> pending;
    for (const auto& [old_id, chain] : info.chains) {
        (void)old_id;
        const int nc = cmap.at(chain.e0.crossing);
        if (nc < 0) throw DiagramError("frozen arc endpoint vanished");
        const ArcId na = moved.crossings[nc].slot[chain.e0.slot];
        is_chain[na] = 1;
        pending.push_back(Pending{na, &chain, true});
    }

    Core rect;
    rect.crossings = moved.crossings;
    rect.free_loops = moved.free_loops - info.chain_loops;  // chain loops stay glued
    const int b = static_cast<int>(core_.bottom.size());
    rect.bottom.assign(b, -1);
    rect.top.assign(b, -1);
    // re-add the pure-terminal chains untouched by the move
    rect.free_loops = moved.free_loops;
    rect.free_loops -= info.chain_loops;

    int next_arc = 0;
    std::vector<ArcId> plain_id(closed_arcs, -1);
    for (ArcId a = 0; a < closed_arcs; ++a)
        if (!is_chain[a]) plain_id[a] = next_arc++;

    // split chains back into rectangle pieces
    std::map<std::pair<int, int>, ArcId> slot_arc;  // (crossing,slot) -> rect arc
    for (const auto& p : pending) {
        const auto& chain = *p.chain;
        const End ne0{cmap.at(chain.e0.crossing), chain.e0.slot};
        const End ne1{cmap.at(chain.e1.crossing), chain.e1.slot};
        ArcId cur = next_arc;
        slot_arc[{ne0.crossing, ne0.slot}] = cur;
        for (const End joint : chain.joints) {
            const End m{joint.crossing == End::kBottom ? End::kTop : End::kBottom, joint.slot};
            if (joint.crossing == End::kBottom)
                rect.bottom[joint.slot] = cur;
            else
                rect.top[joint.slot] = cur;
            ++next_arc;
            cur = next_arc;
            if (m.crossing == End::kBottom)
                rect.bottom[m.slot] = cur;
            else
                rect.top[m.slot] = cur;
        }
        slot_arc[{ne1.crossing, ne1.slot}] = cur;
        ++next_arc;
    }
    // terminal-cycle chains: restore their rectangle arcs verbatim
    {
        const auto old_ends = core_.arc_ends();
        std::vector<bool> done(old_ends.size(), false);
        for (ArcId a = 0; a < static_cast<int>(old_ends.size()); ++a) {
            if (done[a] || info.closed_of_arc[a] != -2) continue;
            ArcId cur = a;
            End from = old_ends[cur][0];
            while (!done[cur]) {
                done[cur] = true;
                const ArcId id = next_arc++;
                const End e0 = from;
                const End e1 = core_.other_end(old_ends, cur, from);
                for (const End e : {e0, e1}) {
                    if (e.crossing == End::kBottom)
                        rect.bottom[e.slot] = id;
                    else
                        rect.top[e.slot] = id;
                }
                const End m{e1.crossing == End::kBottom ? End::kTop : End::kBottom, e1.slot};
                from = m;
                cur = m.crossing == End::kBottom ? core_.bottom[m.slot] : core_.top[m.slot];
            }
        }
    }

    for (int c = 0; c < static_cast<int>(rect.crossings.size()); ++c)
        for (int k = 0; k < 4; ++k) {
            const auto it = slot_arc.find({c, k});
            if (it != slot_arc.end()) {
                rect.crossings[c].slot[k] = it->second;
            } else {
                const ArcId a = moved.crossings[c].slot[k];
                if (plain_id[a] < 0) throw DiagramError("slot maps to a missing arc");
                rect.crossings[c].slot[k] = plain_id[a];
            }
        }
    for (int i = 0; i < b; ++i)
        if (rect.bottom[i] < 0 || rect.top[i] < 0)
            throw DiagramError("terminal lost during interior move");
    return from_core(std::move(rect));
}

AnnularDiagram AnnularDiagram::reduce_trivial_returns() const {
    Core cur = core_;
    bool changed = true;
    while (changed) {
        changed = false;
        AnnularDiagram d;
        d.core_ = cur;
        const auto ss = d.strands();
        const int b = static_cast<int>(cur.bottom.size());
        for (const auto& s : ss) {
            if (s.arcs.size() != 1 || s.through) continue;
            const int i = std::min(s.first.slot, s.second.slot);
            const int j = std::max(s.first.slot, s.second.slot);
            if (j != i + 1) continue;
            const bool at_bottom = s.first.crossing == End::kBottom;
            // merge the two mate arcs on the other side
            Core next;
            next.crossings = cur.crossings;
            next.free_loops = cur.free_loops;
            const ArcId removed = s.arcs[0];
            ArcId u = at_bottom ? cur.top[i] : cur.bottom[i];
            ArcId v = at_bottom ? cur.top[j] : cur.bottom[j];
            std::map<ArcId, ArcId> remap;
            int next_id = 0;
            const int arc_n = cur.arc_count();
            if (u == v) next.free_loops += 1;
            for (ArcId a = 0; a < arc_n; ++a) {
                if (a == removed) continue;
                if (a == v && u != v) continue;
                remap[a] = next_id++;
            }
            if (u != v) remap[v] = remap[u];
            auto map_arc = [&](ArcId a) { return remap.at(a); };
            for (auto& c : next.crossings)
                for (int k = 0; k < 4; ++k) c.slot[k] = map_arc(c.slot[k]);
            for (int p = 0; p < b; ++p) {
                if (p == i || p == j) continue;
                next.bottom.push_back(map_arc(cur.bottom[p]));
                next.top.push_back(map_arc(cur.top[p]));
            }
            // drop attachments of u/v that sat at the removed points:
            // they were only in bottom/top arrays, already skipped
            if (u == v) {
                // the loop arc no longer attaches anywhere
                bool still_used = false;
                for (const auto& c : next.crossings)
                    for (int k = 0; k < 4; ++k)
                        if (c.slot[k] == remap.at(u)) still_used = true;
                for (ArcId a : next.bottom)
                    if (a == remap.at(u)) still_used = true;
                for (ArcId a : next.top)
                    if (a == remap.at(u)) still_used = true;
                if (still_used) throw DiagramError("loop arc still attached");
                // compact: remove its id
                std::map<ArcId, ArcId> shrink;
                int id2 = 0;
                for (ArcId a = 0; a < next_id; ++a) {
                    if (a == remap.at(u)) continue;
                    shrink[a] = id2++;
                }
                for (auto& c : next.crossings)
                    for (int k = 0; k < 4; ++k) c.slot[k] = shrink.at(c.slot[k]);
                for (auto& a : next.bottom) a = shrink.at(a);
                for (auto& a : next.top) a = shrink.at(a);
            }
            cur = std::move(next);
            changed = true;
            break;
        }
    }
    return from_core(std::move(cur));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

End parse_terminal(const std::string& tok, int b) {
    if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 't'))
        throw ParseError("expected boundary point like b1 or t2, got: " + tok);
    for (size_t i = 1; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            throw ParseError("bad boundary point: " + tok);
    const int pos = std::stoi(tok.substr(1));
    if (pos < 1 || pos > b) throw ParseError("boundary position out of range: " + tok);
    return End{tok[0] == 'b' ? End::kBottom : End::kTop, pos - 1};
}

struct GaussTok {
    int label;
    bool over;
    int sign;
};

GaussTok parse_gauss_token(const std::string& tok) {
    size_t i = 0;
    if (tok[i] == '+' || tok[i] == '-') ++i;
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
    return GaussTok{label, over, sign};
}

}  // namespace

AnnularDiagram AnnularDiagram::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int b = -1;
    std::vector<int> declared_signs;
    struct StrandLine {
        End from, to;
        std::vector<GaussTok> toks;
        bool loop = false;
    };
    std::vector<StrandLine> strand_lines;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word.rfind("b=", 0) == 0) {
            b = std::stoi(word.substr(2));
            if (b < 0) throw ParseError("b must be non-negative");
            continue;
        }
        if (word.rfind("signs=", 0) == 0 || word == "signs=") {
            std::string rest = word.size() > 6 ? word.substr(6) : "";
            if (!rest.empty()) {
                declared_signs.push_back(rest == "+" ? 1 : -1);
            }
            std::string s;
            while (ls >> s) declared_signs.push_back(s == "+" ? 1 : (s == "-" ? -1 : 0));
            for (int v : declared_signs)
                if (v == 0) throw ParseError("signs= entries must be + or -");
            continue;
        }
        if (word == "strand") {
            if (b < 0) throw ParseError("b=<int> header must precede strands");
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (toks.size() < 2) throw ParseError("strand needs two boundary points");
            StrandLine sl;
            sl.from = parse_terminal(toks.front(), b);
            sl.to = parse_terminal(toks.back(), b);
            for (size_t i = 1; i + 1 < toks.size(); ++i)
                sl.toks.push_back(parse_gauss_token(toks[i]));
            strand_lines.push_back(std::move(sl));
            continue;
        }
        if (word == "loop") {
            StrandLine sl;
            sl.loop = true;
            std::string t;
            while (ls >> t) {
                if (t == "O") continue;
                sl.toks.push_back(parse_gauss_token(t));
            }
            strand_lines.push_back(std::move(sl));
            continue;
        }
        throw ParseError("unrecognized line in annular text: " + line);
    }
    if (b < 0) throw ParseError("missing b=<int> header");

    detail::Core core;
    core.bottom.assign(b, -1);
    core.top.assign(b, -1);
    std::map<int, int> crossing_of_label, sign_of_label, score;
    int next_arc = 0;
    int crossing_count = 0;
    for (const auto& sl : strand_lines) crossing_count += static_cast<int>(sl.toks.size());
    if (crossing_count % 2 != 0) throw ParseError("odd number of crossing visits");
    core.crossings.resize(crossing_count / 2, Crossing{{-1, -1, -1, -1}});
    int next_crossing = 0;

    auto wire_visit = [&](const GaussTok& v, ArcId in_arc, ArcId out_arc) {
        auto [it, fresh] = crossing_of_label.try_emplace(v.label, next_crossing);
        if (fresh) {
            if (next_crossing >= static_cast<int>(core.crossings.size()))
                throw ParseError("crossing label count exceeds visit pairs");
            ++next_crossing;
            sign_of_label[v.label] = v.sign;
        } else if (sign_of_label[v.label] != v.sign) {
            throw ParseError("inconsistent sign for crossing label " + std::to_string(v.label));
        }
        score[v.label] += v.over ? 1 : 4;
        Crossing& rec = core.crossings[it->second];
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
    };
    auto attach_terminal = [&](End t, ArcId a) {
        auto& slot = t.crossing == End::kBottom ? core.bottom[t.slot] : core.top[t.slot];
        if (slot != -1)
            throw ParseError("boundary point used twice: " +
                             std::string(t.crossing == End::kBottom ? "b" : "t") +
                             std::to_string(t.slot + 1));
        slot = a;
    };

    for (const auto& sl : strand_lines) {
        const int m = static_cast<int>(sl.toks.size());
        if (sl.loop) {
            if (m == 0) {
                core.free_loops += 1;
                continue;
            }
            const int first = next_arc;
            for (int j = 0; j < m; ++j)
                wire_visit(sl.toks[j], first + (j + m - 1) % m, first + j);
            next_arc += m;
            continue;
        }
        const int first = next_arc;
        next_arc += m + 1;
        attach_terminal(sl.from, first);
        attach_terminal(sl.to, first + m);
        for (int j = 0; j < m; ++j) wire_visit(sl.toks[j], first + j, first + j + 1);
    }
    for (const auto& [label, sc] : score)
        if (sc != 5)
            throw ParseError("crossing label must appear exactly once over and once under: " +
                             std::to_string(label));
    for (int i = 0; i < b; ++i)
        if (core.bottom[i] < 0 || core.top[i] < 0)
            throw ParseError("unused boundary point at position " + std::to_string(i + 1));

    AnnularDiagram d = from_core(std::move(core));
    if (!declared_signs.empty()) {
        if (static_cast<int>(declared_signs.size()) != b)
            throw ParseError("signs= length disagrees with b");
        std::vector<int> neg;
        for (int v : declared_signs) neg.push_back(-v);
        if (declared_signs != d.signs_ && neg != d.signs_)
            throw ParseError("declared cut signs disagree with the traced diagram");
    }
    return d;
}

std::string AnnularDiagram::serialize() const {
    const int b = static_cast<int>(core_.bottom.size());
    std::ostringstream os;
    os << "b=" << b;
    if (b > 0) {
        os << "\nsigns=";
        for (int s : signs_) os << " " << (s > 0 ? "+" : "-");
    }
    if (b == 0) {
        if (core_.free_loops > 0) {
            for (int i = 0; i < core_.free_loops; ++i) os << "\nloop O";
        }
        if (!core_.crossings.empty()) {
            const auto ends = core_.arc_ends();
            const auto walk = detail::walk_closed(core_, ends, 0, 0);
            os << "\nloop " << detail::render_walks({walk}, 0);
        }
        return os.str();
    }
    // trace the glued curve from bottom point 1 upward; emit strands in
    // traversal order with crossing labels by first encounter
    const auto ends = core_.arc_ends();
    std::map<int, int> label;
    std::vector<int> under_in(core_.crossings.size(), -1), over_in(core_.crossings.size(), -1);
    struct Line {
        End from, to;
        std::vector<std::pair<int, int>> visits;  // (crossing, entry slot)
    };
    std::vector<Line> lines;
    {
        ArcId arc = core_.bottom[0];
        End entry{End::kBottom, 0};
        Line cur_line{entry, {}, {}};
        int guard = 0;
        while (true) {
            const End exit = core_.other_end(ends, arc, entry);
            if (exit.at_terminal()) {
                cur_line.to = exit;
                lines.push_back(cur_line);
                const End m{exit.crossing == End::kBottom ? End::kTop : End::kBottom, exit.slot};
                if (m.crossing == End::kBottom && m.slot == 0) break;
                entry = m;
                arc = m.crossing == End::kBottom ? core_.bottom[m.slot] : core_.top[m.slot];
                cur_line = Line{entry, {}, {}};
            } else {
                cur_line.visits.push_back({exit.crossing, exit.slot});
                label.try_emplace(exit.crossing, static_cast<int>(label.size()) + 1);
                if (exit.slot % 2 == 0)
                    under_in[exit.crossing] = exit.slot;
                else
                    over_in[exit.crossing] = exit.slot;
                entry = End{exit.crossing, (exit.slot + 2) % 4};
                arc = core_.crossings[exit.crossing].slot[entry.slot];
            }
            if (++guard > 8 * (static_cast<int>(core_.crossings.size()) + b) + 8)
                throw DiagramError("serialize trace failed to close");
        }
    }
    auto term_name = [](End e) {
        return std::string(e.crossing == End::kBottom ? "b" : "t") + std::to_string(e.slot + 1);
    };
    for (const auto& ln : lines) {
        os << "\nstrand " << term_name(ln.from);
        for (const auto& [c, slot] : ln.visits) {
            const int sign = detail::crossing_sign(under_in[c], over_in[c]);
            os << " " << label.at(c) << (slot % 2 == 1 ? 'o' : 'u') << (sign > 0 ? '+' : '-');
        }
        os << " " << term_name(ln.to);
    }
    return os.str();
}

}  // namespace topoflow
