#include "eg/diagram.hpp"
#include "eg/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <set>

namespace eg {

char corner_letter(CornerPos p)
{
    static constexpr char letters[] = {'S', 'E', 'N', 'W'};
    return letters[static_cast<int>(p)];
}

std::vector<Corner> Face::corners() const
{
    std::vector<Corner> out;
    for (const auto& walk : walks)
        out.insert(out.end(), walk.begin(), walk.end());
    return out;
}

namespace {

struct RegionHint {
    const std::vector<std::array<int, 4>>* corner_region;
    int region_count;
};

EndRef other_end(const PlanarDiagram& d, EndRef at)
{
    const Arc& a = d.arcs()[d.crossings()[at.crossing].ends[at.slot].arc - 1];
    return a.tail == at ? a.head : a.tail;
}

void canonicalize_walk(std::vector<Corner>& walk)
{
    auto smallest = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), smallest, walk.end());
}

void sort_faces(std::vector<Face>& faces)
{
    for (Face& f : faces) {
        for (auto& w : f.walks)
            canonicalize_walk(w);
        std::sort(f.walks.begin(), f.walks.end());
    }
    // Faces with corners ordered by their smallest corner; empty faces last.
    std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.walks.empty() || b.walks.empty())
            return !a.walks.empty() && b.walks.empty();
        return a.walks.front().front() < b.walks.front().front();
    });
}

bool graph_connected(const PlanarDiagram& d)
{
    const int n = static_cast<int>(d.crossings().size());
    if (n == 0)
        return true;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        for (int s = 0; s < 4; ++s) {
            const int next = other_end(d, {c, s}).crossing;
            if (!seen[next]) {
                seen[next] = true;
                stack.push_back(next);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<std::vector<Corner>> boundary_walks(const PlanarDiagram& d)
{
    const int n = static_cast<int>(d.crossings().size());
    std::vector<std::array<bool, 4>> visited(n, {false, false, false, false});
    std::vector<std::vector<Corner>> walks;
    for (int c = 0; c < n; ++c) {
        for (int s = 0; s < 4; ++s) {
            if (visited[c][s])
                continue;
            std::vector<Corner> walk;
            int cc = c;
            int ss = s;
            while (!visited[cc][ss]) {
                visited[cc][ss] = true;
                walk.push_back({cc, static_cast<CornerPos>(ss)});
                // Corner ss lies between slots ss and ss+1; leave through slot ss
                // and arrive at the far end, where the next corner is the one
                // clockwise-adjacent to the arrival slot.
                const EndRef arrive = other_end(d, {cc, ss});
                cc = arrive.crossing;
                ss = (arrive.slot + 3) % 4;
            }
            walks.push_back(std::move(walk));
        }
    }
    return walks;
}

} // namespace

class DiagramBuilder {
public:
    static PlanarDiagram make(std::vector<Crossing> crossings, std::vector<Arc> arcs, int components,
                              int free_loops, std::optional<RegionHint> hint)
    {
        PlanarDiagram d;
        d.crossings_ = std::move(crossings);
        d.arcs_ = std::move(arcs);
        d.components_ = components;
        d.free_loops_ = free_loops;
        d.faces_ = compute_faces(d, hint);
        return d;
    }

    static PlanarDiagram with_faces(std::vector<Crossing> crossings, std::vector<Arc> arcs,
                                    int components, int free_loops, std::vector<Face> faces)
    {
        PlanarDiagram d;
        d.crossings_ = std::move(crossings);
        d.arcs_ = std::move(arcs);
        d.components_ = components;
        d.free_loops_ = free_loops;
        sort_faces(faces);
        d.faces_ = std::move(faces);
        return d;
    }

private:
    static std::vector<Face> compute_faces(const PlanarDiagram& d, std::optional<RegionHint> hint)
    {
        auto walks = boundary_walks(d);
        std::vector<Face> faces;
        if (hint) {
            faces.resize(hint->region_count);
            for (auto& w : walks) {
                const int region = (*hint->corner_region)[w.front().crossing][static_cast<int>(w.front().pos)];
                for (const Corner& c : w)
                    if ((*hint->corner_region)[c.crossing][static_cast<int>(c.pos)] != region)
                        throw std::logic_error("boundary walk crosses sweep regions");
                faces[region].walks.push_back(std::move(w));
            }
        } else {
            const int n = static_cast<int>(d.crossings().size());
            if (!graph_connected(d))
                throw ValidationError("split diagrams must be given as Morse words");
            if (n == 0) {
                faces.resize(2);
            } else {
                if (static_cast<int>(walks.size()) != n + 2)
                    throw InconsistentError("rotation system is not planar: " +
                                            std::to_string(walks.size()) + " faces for " +
                                            std::to_string(n) + " crossings");
                for (auto& w : walks)
                    faces.push_back(Face{{std::move(w)}});
            }
        }
        sort_faces(faces);
        return faces;
    }
};

// ---------------------------------------------------------------------------

namespace {

// Slot layout of a crossing in PD order (i, j, k, l), i = incoming under-strand,
// listed counter-clockwise.
Crossing crossing_from_pd(const std::array<int, 4>& x, int sign)
{
    Crossing c;
    c.sign = sign;
    const auto [i, j, k, l] = x;
    if (sign > 0) {
        // over-strand l -> j: BL = l, BR = i, TR = j, TL = k
        c.ends = {CrossingEnd{l, true, true}, CrossingEnd{i, false, true},
                  CrossingEnd{j, true, false}, CrossingEnd{k, false, false}};
    } else {
        // over-strand j -> l: BL = i, BR = j, TR = k, TL = l
        c.ends = {CrossingEnd{i, false, true}, CrossingEnd{j, true, true},
                  CrossingEnd{k, false, false}, CrossingEnd{l, true, false}};
    }
    return c;
}

std::array<int, 4> crossing_to_pd(const Crossing& c)
{
    const auto& e = c.ends;
    if (c.sign > 0)
        return {e[1].arc, e[2].arc, e[3].arc, e[0].arc};
    return {e[0].arc, e[1].arc, e[2].arc, e[3].arc};
}

// Fills arcs from crossing end flags; throws if a label is not used as exactly
// one outgoing and one incoming end.
std::vector<Arc> arcs_from_ends(const std::vector<Crossing>& crossings, int n_labels,
                                const std::vector<int>& component_of_label)
{
    std::vector<Arc> arcs(n_labels);
    std::vector<int> outs(n_labels, 0);
    std::vector<int> ins(n_labels, 0);
    for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
        for (int s = 0; s < 4; ++s) {
            const CrossingEnd& e = crossings[c].ends[s];
            Arc& a = arcs[e.arc - 1];
            if (e.incoming) {
                a.head = {c, s};
                ++ins[e.arc - 1];
            } else {
                a.tail = {c, s};
                ++outs[e.arc - 1];
            }
        }
    }
    for (int a = 0; a < n_labels; ++a) {
        if (outs[a] != 1 || ins[a] != 1)
            throw InconsistentError("arc " + std::to_string(a + 1) +
                                    " does not run from one crossing to another");
        arcs[a].component = component_of_label[a];
    }
    return arcs;
}

} // namespace

PlanarDiagram parse_pd(std::string_view text)
{
    static const std::regex token(R"(X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\])");
    std::string s(text);
    // Tolerate an enclosing PD[...] and commas between crossings.
    static const std::regex wrapper(R"(^\s*PD\s*\[(.*)\]\s*$)");
    std::smatch wm;
    if (std::regex_match(s, wm, wrapper))
        s = wm[1].str();

    std::vector<std::array<int, 4>> raw;
    std::string rest;
    auto begin = std::sregex_iterator(s.begin(), s.end(), token);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        rest += s.substr(last, it->position() - last);
        last = it->position() + it->length();
        raw.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3]), std::stoi((*it)[4])});
    }
    rest += s.substr(last);
    if (rest.find_first_not_of(" \t\r\n,") != std::string::npos)
        throw SyntaxError("unexpected text in PD code: '" + rest + "'");
    if (raw.empty())
        throw SyntaxError("empty PD code");

    // Relabel to 1..2n preserving order.
    std::map<int, int> count;
    for (const auto& x : raw)
        for (int v : x)
            ++count[v];
    for (const auto& [label, k] : count)
        if (k != 2)
            throw InconsistentError("arc label " + std::to_string(label) + " appears " +
                                    std::to_string(k) + " time(s), expected 2");
    std::map<int, int> relabel;
    for (const auto& [label, k] : count)
        relabel.emplace(label, static_cast<int>(relabel.size()) + 1);
    for (auto& x : raw)
        for (int& v : x)
            v = relabel.at(v);
    const int n_labels = static_cast<int>(relabel.size());

    // Components: labels joined through each crossing's two strands.
    std::vector<int> parent(n_labels + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [i, j, k, l] : raw) {
        parent[find(i)] = find(k);
        parent[find(j)] = find(l);
    }
    std::map<int, std::vector<int>> members;
    for (int v = 1; v <= n_labels; ++v)
        members[find(v)].push_back(v);
    std::vector<int> lo(n_labels + 1), hi(n_labels + 1), comp(n_labels + 1);
    std::vector<std::pair<int, int>> ranges;
    for (const auto& [root, labels] : members) {
        const int m = labels.front();
        const int big = labels.back();
        if (big - m + 1 != static_cast<int>(labels.size()))
            throw InconsistentError("labels of a component are not consecutive");
        ranges.push_back({m, big});
    }
    std::sort(ranges.begin(), ranges.end());
    for (int ci = 0; ci < static_cast<int>(ranges.size()); ++ci)
        for (int v = ranges[ci].first; v <= ranges[ci].second; ++v) {
            lo[v] = ranges[ci].first;
            hi[v] = ranges[ci].second;
            comp[v] = ci;
        }
    auto succ = [&](int x) { return x == hi[x] ? lo[x] : x + 1; };

    std::vector<int> sign(raw.size(), 0);
    std::vector<int> outgoing(n_labels + 1, 0);
    for (std::size_t c = 0; c < raw.size(); ++c) {
        const auto [i, j, k, l] = raw[c];
        if (succ(i) != k)
            throw InconsistentError("under-strand labels of crossing " + std::to_string(c) +
                                    " are not consecutive along the component");
        ++outgoing[k];
        const bool pos = succ(l) == j;
        const bool neg = succ(j) == l;
        if (!pos && !neg)
            throw InconsistentError("over-strand labels of crossing " + std::to_string(c) +
                                    " are not consecutive along the component");
        if (pos != neg) {
            sign[c] = pos ? +1 : -1;
            ++outgoing[pos ? j : l];
        }
    }
    for (std::size_t c = 0; c < raw.size(); ++c) {
        if (sign[c] != 0)
            continue;
        const auto [i, j, k, l] = raw[c];
        sign[c] = outgoing[j] == 0 ? +1 : -1;
        ++outgoing[sign[c] > 0 ? j : l];
    }

    std::vector<Crossing> crossings;
    for (std::size_t c = 0; c < raw.size(); ++c)
        crossings.push_back(crossing_from_pd(raw[c], sign[c]));
    std::vector<int> component_of_label(n_labels);
    for (int v = 1; v <= n_labels; ++v)
        component_of_label[v - 1] = comp[v];
    auto arcs = arcs_from_ends(crossings, n_labels, component_of_label);
    return DiagramBuilder::make(std::move(crossings), std::move(arcs),
                                static_cast<int>(ranges.size()), 0, std::nullopt);
}

std::string pd_serialize(const PlanarDiagram& d)
{
    std::string out;
    for (const Crossing& c : d.crossings()) {
        const auto x = crossing_to_pd(c);
        if (!out.empty())
            out += ' ';
        out += "X[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
               std::to_string(x[2]) + "," + std::to_string(x[3]) + "]";
    }
    return out;
}

PlanarDiagram morse_to_pd(const MorseWord& w)
{
    const MorseTrace t = trace_morse(w);
    const auto& events = w.events();
    const int n = static_cast<int>(t.event_of_crossing.size());

    std::vector<Crossing> crossings(n);
    for (int c = 0; c < n; ++c) {
        const int sign = events[t.event_of_crossing[c]].sign;
        crossings[c].sign = sign;
        const bool bl_over = sign > 0;
        crossings[c].ends[0] = {0, bl_over, true};
        crossings[c].ends[1] = {0, !bl_over, true};
        crossings[c].ends[2] = {0, bl_over, false};
        crossings[c].ends[3] = {0, !bl_over, false};
    }

    // Knot-graph edges: from an outgoing end, follow links and extrema to the
    // next incoming end.
    std::vector<int> partner(4 * events.size(), -1);
    for (const auto& l : t.links) {
        partner[l.lower] = l.upper;
        partner[l.upper] = l.lower;
    }
    auto next_in = [&](int c, int out_slot) {
        int q = partner[4 * t.event_of_crossing[c] + out_slot];
        while (!events[q / 4].is_cross())
            q = partner[q ^ 1];
        return EndRef{t.crossing_of_event[q / 4], q % 4};
    };

    // Label arcs component by component along the orientation.
    int label = 0;
    int components = 0;
    std::vector<int> component_of_label;
    for (int c = 0; c < n; ++c) {
        for (int start_slot : {3, 2}) {
            if (crossings[c].ends[start_slot].arc != 0)
                continue;
            int cc = c;
            int slot = start_slot;
            while (crossings[cc].ends[slot].arc == 0) {
                ++label;
                component_of_label.push_back(components);
                crossings[cc].ends[slot].arc = label;
                const EndRef in = next_in(cc, slot);
                crossings[in.crossing].ends[in.slot].arc = label;
                // Strands pass straight through: BL -> TR, BR -> TL.
                cc = in.crossing;
                slot = in.slot == 0 ? 2 : 3;
            }
            ++components;
        }
    }

    // Crossing-free components.
    std::vector<bool> on_arc(events.size(), false);
    for (std::size_t e = 0; e < events.size(); ++e)
        if (!events[e].is_cross() && t.extremum_ends[e].first >= 0)
            on_arc[e] = true;
    int free_loops = 0;
    for (std::size_t e = 0; e < events.size(); ++e) {
        if (events[e].is_cross() || on_arc[e])
            continue;
        ++free_loops;
        int q = static_cast<int>(4 * e);
        while (!on_arc[q / 4]) {
            on_arc[q / 4] = true;
            q = partner[q ^ 1];
        }
    }

    auto arcs = arcs_from_ends(crossings, label, component_of_label);
    return DiagramBuilder::make(std::move(crossings), std::move(arcs), components + free_loops,
                                free_loops, RegionHint{&t.corner_region, t.region_count});
}

const std::vector<Face>& faces(const PlanarDiagram& d)
{
    return d.faces();
}

int writhe(const PlanarDiagram& d)
{
    int w = 0;
    for (const Crossing& c : d.crossings())
        w += c.sign;
    return w;
}

PlanarDiagram reverse_orientation(const PlanarDiagram& d)
{
    // Labels of each component run m..M; reversed traversal relabels x -> m + M - x.
    const int n_labels = static_cast<int>(d.arcs().size());
    std::map<int, std::pair<int, int>> range;
    for (int a = 1; a <= n_labels; ++a) {
        const int comp = d.arcs()[a - 1].component;
        auto it = range.find(comp);
        if (it == range.end())
            range[comp] = {a, a};
        else
            it->second = {std::min(it->second.first, a), std::max(it->second.second, a)};
    }
    auto relabel = [&](int a) {
        const auto [m, big] = range.at(d.arcs()[a - 1].component);
        return m + big - a;
    };

    std::vector<Crossing> crossings;
    for (const Crossing& c : d.crossings()) {
        Crossing r;
        r.sign = c.sign;
        for (int k = 0; k < 4; ++k) {
            const CrossingEnd& old = c.ends[(k + 2) % 4];
            r.ends[k] = {relabel(old.arc), old.over, !old.incoming};
        }
        crossings.push_back(r);
    }
    std::vector<Arc> arcs(n_labels);
    for (int a = 1; a <= n_labels; ++a) {
        const Arc& old = d.arcs()[a - 1];
        Arc& na = arcs[relabel(a) - 1];
        na.tail = {old.head.crossing, (old.head.slot + 2) % 4};
        na.head = {old.tail.crossing, (old.tail.slot + 2) % 4};
        na.component = old.component;
    }
    std::vector<Face> faces = d.faces();
    for (Face& f : faces)
        for (auto& walk : f.walks)
            for (Corner& c : walk)
                c.pos = static_cast<CornerPos>((static_cast<int>(c.pos) + 2) % 4);
    return DiagramBuilder::with_faces(std::move(crossings), std::move(arcs), d.components(),
                                      d.free_loops(), std::move(faces));
}

nlohmann::json faces_to_json(const std::vector<Face>& faces)
{
    auto corner_json = [](const Corner& c) {
        return nlohmann::json::array({c.crossing, std::string(1, corner_letter(c.pos))});
    };
    nlohmann::json out = nlohmann::json::array();
    for (const Face& f : faces) {
        nlohmann::json corners = nlohmann::json::array();
        nlohmann::json walks = nlohmann::json::array();
        for (const auto& walk : f.walks) {
            nlohmann::json wj = nlohmann::json::array();
            for (const Corner& c : walk) {
                corners.push_back(corner_json(c));
                wj.push_back(corner_json(c));
            }
            walks.push_back(std::move(wj));
        }
        out.push_back({{"corners", std::move(corners)}, {"walks", std::move(walks)}});
    }
    return out;
}

nlohmann::json to_json(const PlanarDiagram& d)
{
    static constexpr const char* slot_names[] = {"BL", "BR", "TR", "TL"};
    nlohmann::json crossings = nlohmann::json::array();
    for (std::size_t c = 0; c < d.crossings().size(); ++c) {
        const Crossing& x = d.crossings()[c];
        nlohmann::json rotation = nlohmann::json::array();
        for (int s = 0; s < 4; ++s)
            rotation.push_back({{"slot", slot_names[s]},
                                {"arc", x.ends[s].arc},
                                {"over", x.ends[s].over},
                                {"in", x.ends[s].incoming}});
        crossings.push_back({{"id", c}, {"sign", x.sign}, {"rotation", std::move(rotation)}});
    }
    return {{"crossings", std::move(crossings)},
            {"components", d.components()},
            {"free_loops", d.free_loops()},
            {"pd", pd_serialize(d)},
            {"faces", faces_to_json(d.faces())}};
}

} // namespace eg
