#include "eg/diagram.hpp"
#include "eg/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace eg {

namespace {

// Applies one event to the running strand orientation list. Returns an error
// message, or an empty string when the event is legal.
std::string step(std::vector<Dir>& strands, const Event& e)
{
    const int width = static_cast<int>(strands.size());
    switch (e.kind) {
    case Event::Kind::Cup: {
        if (e.pos < 0 || e.pos > width)
            return "cup position out of range";
        const Dir left = e.turn == Turn::Rightward ? Dir::Down : Dir::Up;
        const Dir right = e.turn == Turn::Rightward ? Dir::Up : Dir::Down;
        strands.insert(strands.begin() + e.pos, {left, right});
        return {};
    }
    case Event::Kind::Cap: {
        if (e.pos < 0 || e.pos + 1 >= width)
            return "cap needs two strands";
        const Dir left = strands[e.pos];
        const Dir right = strands[e.pos + 1];
        const bool ok = e.turn == Turn::Leftward ? (right == Dir::Up && left == Dir::Down)
                                                 : (left == Dir::Up && right == Dir::Down);
        if (!ok)
            return "cap joins strands with incompatible orientation";
        strands.erase(strands.begin() + e.pos, strands.begin() + e.pos + 2);
        return {};
    }
    case Event::Kind::Cross:
        if (e.pos < 0 || e.pos + 1 >= width)
            return "crossing needs two strands";
        if (strands[e.pos] != Dir::Up || strands[e.pos + 1] != Dir::Up)
            return "crossing on a strand that does not run upwards";
        if (e.sign != 1 && e.sign != -1)
            return "crossing sign must be +1 or -1";
        return {};
    }
    return "unknown event";
}

} // namespace

MorseWord::MorseWord(std::vector<Event> events) : events_(std::move(events))
{
    std::vector<Dir> strands;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const std::string err = step(strands, events_[i]);
        if (!err.empty())
            throw ValidationError("event " + std::to_string(i) + ": " + err);
    }
    if (!strands.empty())
        throw ValidationError("word is not closed: " + std::to_string(strands.size()) +
                              " strands left open at the top");
}

int MorseWord::crossing_count() const
{
    return static_cast<int>(
        std::count_if(events_.begin(), events_.end(), [](const Event& e) { return e.is_cross(); }));
}

std::vector<Dir> MorseWord::strands_at(std::size_t index) const
{
    std::vector<Dir> strands;
    for (std::size_t i = 0; i < index && i < events_.size(); ++i)
        step(strands, events_[i]);
    return strands;
}

MorseWord parse_morse(std::string_view text)
{
    std::vector<Event> events;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool any_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op))
            continue;
        any_content = true;
        long pos = 0;
        std::string extra;
        if (!(ls >> pos) || (ls >> extra))
            throw SyntaxError("line " + std::to_string(lineno) + ": expected '<op> <index>'");
        const int p = static_cast<int>(pos);
        if (op == "cup>")
            events.push_back(Event::cup(p, Turn::Rightward));
        else if (op == "cup<")
            events.push_back(Event::cup(p, Turn::Leftward));
        else if (op == "cap>")
            events.push_back(Event::cap(p, Turn::Rightward));
        else if (op == "cap<")
            events.push_back(Event::cap(p, Turn::Leftward));
        else if (op == "x+")
            events.push_back(Event::cross(p, +1));
        else if (op == "x-")
            events.push_back(Event::cross(p, -1));
        else
            throw SyntaxError("line " + std::to_string(lineno) + ": unknown event '" + op + "'");
    }
    if (!any_content)
        throw SyntaxError("empty Morse word");
    return MorseWord(std::move(events));
}

std::string to_text(const MorseWord& w)
{
    std::string out;
    for (const Event& e : w.events()) {
        switch (e.kind) {
        case Event::Kind::Cup:
            out += e.turn == Turn::Rightward ? "cup> " : "cup< ";
            break;
        case Event::Kind::Cap:
            out += e.turn == Turn::Rightward ? "cap> " : "cap< ";
            break;
        case Event::Kind::Cross:
            out += e.sign > 0 ? "x+ " : "x- ";
            break;
        }
        out += std::to_string(e.pos);
        out += '\n';
    }
    return out;
}

int rotation_number(const MorseWord& w)
{
    int halves = 0;
    for (const Event& e : w.events()) {
        if (e.kind == Event::Kind::Cup)
            halves += e.turn == Turn::Rightward ? 1 : -1;
        else if (e.kind == Event::Kind::Cap)
            halves += e.turn == Turn::Leftward ? 1 : -1;
    }
    return halves / 2;
}

int writhe(const MorseWord& w)
{
    return std::accumulate(w.events().begin(), w.events().end(), 0,
                           [](int s, const Event& e) { return e.is_cross() ? s + e.sign : s; });
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    int add()
    {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

MorseTrace trace_morse(const MorseWord& w)
{
    const auto& events = w.events();
    const int n_events = static_cast<int>(events.size());

    MorseTrace t;
    t.crossing_of_event.assign(n_events, -1);
    t.extremum_ends.assign(n_events, {-1, -1});

    std::vector<int> open;        // port id emanating upwards at each strand
    std::vector<Dir> dirs;        // orientation at each strand
    std::vector<int> gaps;        // region id of each gap (width + 1 entries)
    UnionFind regions;
    gaps.push_back(regions.add());
    std::vector<std::array<int, 4>> raw_corner_region;

    auto port = [](int event, int slot) { return 4 * event + slot; };

    for (int i = 0; i < n_events; ++i) {
        const Event& e = events[i];
        switch (e.kind) {
        case Event::Kind::Cup: {
            const Dir left = e.turn == Turn::Rightward ? Dir::Down : Dir::Up;
            const Dir right = e.turn == Turn::Rightward ? Dir::Up : Dir::Down;
            open.insert(open.begin() + e.pos, {port(i, 0), port(i, 1)});
            dirs.insert(dirs.begin() + e.pos, {left, right});
            const int outside = gaps[e.pos];
            gaps.insert(gaps.begin() + e.pos + 1, {regions.add(), outside});
            break;
        }
        case Event::Kind::Cap: {
            t.links.push_back({open[e.pos], port(i, 0), dirs[e.pos]});
            t.links.push_back({open[e.pos + 1], port(i, 1), dirs[e.pos + 1]});
            open.erase(open.begin() + e.pos, open.begin() + e.pos + 2);
            dirs.erase(dirs.begin() + e.pos, dirs.begin() + e.pos + 2);
            regions.unite(gaps[e.pos], gaps[e.pos + 2]);
            gaps.erase(gaps.begin() + e.pos + 1, gaps.begin() + e.pos + 3);
            break;
        }
        case Event::Kind::Cross: {
            const int id = static_cast<int>(t.event_of_crossing.size());
            t.crossing_of_event[i] = id;
            t.event_of_crossing.push_back(i);
            t.links.push_back({open[e.pos], port(i, 0), Dir::Up});
            t.links.push_back({open[e.pos + 1], port(i, 1), Dir::Up});
            open[e.pos] = port(i, 3);
            open[e.pos + 1] = port(i, 2);
            const int above = regions.add();
            // S, E, N, W
            raw_corner_region.push_back({gaps[e.pos + 1], gaps[e.pos + 2], above, gaps[e.pos]});
            gaps[e.pos + 1] = above;
            break;
        }
        }
    }

    // Compact region ids.
    std::vector<int> compact(regions.parent.size(), -1);
    for (std::size_t r = 0; r < regions.parent.size(); ++r) {
        const int root = regions.find(static_cast<int>(r));
        if (compact[root] < 0)
            compact[root] = t.region_count++;
    }
    for (auto& corners : raw_corner_region) {
        std::array<int, 4> c{};
        for (int k = 0; k < 4; ++k)
            c[k] = compact[regions.find(corners[k])];
        t.corner_region.push_back(c);
    }

    // Arc subscripts of every extremum: walk each arc along its orientation.
    std::vector<int> partner(4 * n_events, -1);
    for (const auto& l : t.links) {
        partner[l.lower] = l.upper;
        partner[l.upper] = l.lower;
    }
    auto is_cross_event = [&](int p) { return events[p / 4].is_cross(); };
    auto twin = [](int p) { return p ^ 1; }; // ports 0 and 1 of an extremum

    for (int c = 0; c < static_cast<int>(t.event_of_crossing.size()); ++c) {
        const int ev = t.event_of_crossing[c];
        for (int slot : {3, 2}) { // outgoing ends
            int p = port(ev, slot);
            std::vector<int> extrema;
            int q = partner[p];
            while (!is_cross_event(q)) {
                extrema.push_back(q / 4);
                q = partner[twin(q)];
            }
            const int end_crossing = t.crossing_of_event[q / 4];
            for (int x : extrema) {
                t.extremum_ends[x] = {c, end_crossing};
            }
        }
    }
    return t;
}

} // namespace eg
