#include "eg/electric.hpp"
#include "eg/errors.hpp"
#include "eg/gsystem.hpp"
#include "eg/rank1.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

using nlohmann::json;

namespace {

/// Raised for unreadable input files; reported like a domain error.
class FileError : public eg::Error {
public:
    explicit FileError(const std::string& message) : eg::Error("FileError", message) {}
};

struct Common {
    std::string format = "text";
    std::uint64_t seed = 0;
    std::int64_t budget = eg::kDefaultSearchBudget;
    std::string input_format;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FileError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const std::string& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw eg::SyntaxError("'" + path + "' is not valid JSON: " + e.what());
    }
}

class Diagram {
public:
    Diagram(const std::string& path, const Common& c)
    {
        std::string kind = c.input_format;
        if (kind.empty()) {
            const auto ext = std::filesystem::path(path).extension().string();
            if (ext == ".pd" || ext == ".morse")
                kind = ext.substr(1);
            else
                throw CLI::ValidationError("--input-format", "cannot tell the format of '" + path +
                                                                 "'; use --input-format pd|morse");
        }
        const auto text = read_file(path);
        if (kind == "morse") {
            word_ = eg::parse_morse(text);
            pd_ = eg::morse_to_pd(*word_);
        } else {
            pd_ = eg::parse_pd(text);
        }
    }

    const eg::PlanarDiagram& pd() const { return pd_; }
    const eg::MorseWord& word() const
    {
        if (!word_)
            throw eg::UnknownSpec("this command needs a Morse word; PD input has no height function");
        return *word_;
    }

private:
    eg::PlanarDiagram pd_;
    std::optional<eg::MorseWord> word_;
};

void emit(const Common& c, const json& j, const std::string& text)
{
    if (c.format == "json")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

std::string list_text(const std::vector<eg::BigInt>& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + v[i].str();
    return out + "]";
}

std::string corner_text(const eg::Corner& k)
{
    return "x" + std::to_string(k.crossing + 1) + eg::corner_letter(k.pos);
}

std::string colouring_text(const eg::FiniteGroup& g, const eg::Colouring& c)
{
    std::string out = "alpha=" + g.name(c.alpha) + " beta=" + g.name(c.beta);
    for (std::size_t i = 0; i < c.colours.size(); ++i)
        out += " x" + std::to_string(i + 1) + "=" + g.name(c.colours[i]);
    return out;
}

int element_or(const eg::FiniteGroup& g, const std::string& name, int fallback)
{
    return name.empty() ? fallback : g.element(name);
}

/// Pairs selected by optional --alpha and --beta.
std::vector<std::pair<int, int>> pairs(const eg::FiniteGroup& g, const std::string& alpha, const std::string& beta)
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if ((alpha.empty() || a == g.element(alpha)) && (beta.empty() || b == g.element(beta)))
                out.emplace_back(a, b);
    return out;
}

void faces_cmd(const Common& c, const std::string& path)
{
    const Diagram d(path, c);
    const auto& fs = eg::faces(d.pd());
    std::ostringstream text;
    text << fs.size() << " faces\n";
    for (std::size_t i = 0; i < fs.size(); ++i) {
        text << "F" << i << ":";
        for (std::size_t w = 0; w < fs[i].walks.size(); ++w) {
            if (w)
                text << " |";
            if (fs[i].walks[w].empty())
                text << " (circle)";
            for (const auto& k : fs[i].walks[w])
                text << ' ' << corner_text(k);
        }
        text << '\n';
    }
    emit(c, {{"count", fs.size()}, {"faces", eg::faces_to_json(fs)}}, text.str());
}

struct EgroupFlags {
    bool reduced = false;
    bool simplify = false;
    bool abelian = false;
};

void egroup_cmd(const Common& c, const std::string& path, const EgroupFlags& f)
{
    const Diagram d(path, c);
    auto p = f.reduced ? eg::reduced_presentation(d.pd()) : eg::electric_presentation(d.pd());
    if (f.simplify)
        p = eg::tietze_simplify(p);
    json j{{"presentation", eg::to_json(p)}};
    std::string text = eg::to_text(p) + "\n";
    if (f.abelian) {
        const auto inv = eg::abelian_invariants(p);
        json arr = json::array();
        for (const auto& v : inv)
            arr.push_back(eg::to_json(v));
        j["abelian_invariants"] = arr;
        text += "abelian invariants: " + list_text(inv) + "\n";
    }
    emit(c, j, text);
}

void colour_cmd(const Common& c, const std::string& path, const std::string& group, const std::string& alpha,
                const std::string& beta)
{
    const Diagram d(path, c);
    const auto g = eg::make_group(group);
    json arr = json::array();
    std::string text;
    for (const auto& [a, b] : pairs(g, alpha, beta))
        eg::for_each_colouring(
            d.pd(), g, a, b,
            [&](const eg::Colouring& col) {
                arr.push_back(eg::to_json(g, col));
                text += colouring_text(g, col) + "\n";
            },
            c.budget);
    text += std::to_string(arr.size()) + " colourings\n";
    emit(c, {{"group", g.spec()}, {"colourings", arr}}, text);
}

void census_cmd(const Common& c, const std::string& path, const std::string& group)
{
    const Diagram d(path, c);
    const auto g = eg::make_group(group);
    const auto census = eg::colouring_census(d.pd(), g, c.budget);
    const auto homs = eg::hom_count(eg::electric_presentation(d.pd()), g, c.budget);
    const bool ok = homs == census.total;

    std::size_t width = std::string("alpha\\beta").size();
    for (int a = 0; a < g.order(); ++a) {
        width = std::max(width, g.name(a).size());
        for (auto n : census.counts[a])
            width = std::max(width, std::to_string(n).size());
    }
    std::ostringstream text;
    text << std::left << std::setw(static_cast<int>(width)) << "alpha\\beta";
    for (int b = 0; b < g.order(); ++b)
        text << "  " << std::right << std::setw(static_cast<int>(width)) << g.name(b);
    text << '\n';
    json rows = json::object();
    for (int a = 0; a < g.order(); ++a) {
        text << std::left << std::setw(static_cast<int>(width)) << g.name(a);
        json row = json::object();
        for (int b = 0; b < g.order(); ++b) {
            text << "  " << std::right << std::setw(static_cast<int>(width)) << census.counts[a][b];
            row[g.name(b)] = census.counts[a][b];
        }
        text << '\n';
        rows[g.name(a)] = row;
    }
    text << "total: " << census.total << '\n'
         << "homomorphisms: " << homs << '\n'
         << "Hom check: " << (ok ? "OK" : "MISMATCH") << '\n';
    emit(c,
         {{"group", g.spec()},
          {"counts", rows},
          {"total", eg::to_json(census.total)},
          {"homomorphisms", eg::to_json(homs)},
          {"hom_check", ok}},
         text.str());
    if (!ok)
        throw eg::InconsistentError("colouring census total differs from the homomorphism count");
}

void invariant_cmd(const Common& c, const std::string& path, const std::string& system, const std::string& alpha,
                   const std::string& beta)
{
    const Diagram d(path, c);
    const auto any = eg::any_system_from_json(read_json(system));
    std::visit(
        [&](const auto& s) {
            const auto& g = s.group();
            const auto& ring = s.ring();
            json arr = json::array();
            std::string text;
            for (const auto& [a, b] : pairs(g, alpha, beta))
                eg::for_each_colouring(
                    d.pd(), g, a, b,
                    [&](const eg::Colouring& col) {
                        const auto v = eg::t_value(d.word(), col, s);
                        arr.push_back({{"colouring", eg::to_json(g, col)}, {"t", ring.to_json(v)}});
                        text += colouring_text(g, col) + "  t = " + ring.to_string(v) + "\n";
                    },
                    c.budget);
            emit(c, {{"values", arr}}, text);
        },
        any);
}

void tau_cmd(const Common& c, const std::string& path, const std::string& system,
             const std::vector<std::string>& members)
{
    const Diagram d(path, c);
    const auto any = eg::any_system_from_json(read_json(system));
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            eg::SystemFamily fam(s);
            for (const auto& m : members) {
                const auto eq = m.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--member", "expected ALPHA,BETA=FILE, got '" + m + "'");
                const auto [a, b] = eg::parse_pair_key(s.group(), m.substr(0, eq));
                auto other = eg::any_system_from_json(read_json(m.substr(eq + 1)));
                auto* typed = std::get_if<S>(&other);
                if (!typed)
                    throw eg::ValidationError("family members must share group, ring and N");
                fam.set(a, b, std::move(*typed));
            }
            const auto t = eg::tau(d.word(), fam, c.budget);
            std::string text;
            for (const auto& [key, values] : t) {
                text += "(" + s.group().name(key.first) + "," + s.group().name(key.second) + "): {";
                for (std::size_t i = 0; i < values.size(); ++i)
                    text += (i ? ", " : "") + s.ring().to_string(values[i]);
                text += "}\n";
            }
            emit(c, eg::tau_to_json(s.group(), s.ring(), t), text);
        },
        any);
}

void verify_cmd(const Common& c, const std::string& system, std::uint64_t max_tuples)
{
    const auto any = eg::any_system_from_json(read_json(system));
    eg::VerifyOptions opt;
    opt.max_tuples = max_tuples;
    opt.seed = c.seed;
    const auto report = std::visit([&](const auto& s) { return eg::verify_axioms(s, opt); }, any);
    emit(c, eg::to_json(report), eg::to_text(report));
}

struct SolveFlags {
    std::string group;
    std::string units;
    std::string alpha;
    std::string method = "auto";
    std::string out_dir;
    bool equations = false;
};

void solve_cmd(const Common& c, const SolveFlags& f)
{
    const auto g = eg::make_group(f.group);
    const auto u = eg::UnitGroup::parse(f.units);
    const int alpha = element_or(g, f.alpha, g.id());
    const auto system = eg::rank1_equations(g, alpha);
    if (f.equations) {
        json arr = json::array();
        std::string text;
        for (const auto& e : system.equations()) {
            arr.push_back(eg::to_json(system, e));
            text += e.axiom + ":";
            for (int x : e.elements)
                text += " " + g.name(x);
            text += "  " + system.to_text(e) + "\n";
        }
        emit(c, {{"equations", arr}}, text);
        return;
    }
    eg::Rank1Options opt;
    opt.method = f.method == "brute" ? eg::Rank1Method::BruteForce
                 : f.method == "smith" ? eg::Rank1Method::Smith
                                       : eg::Rank1Method::Auto;
    if (c.budget > 0)
        opt.budget = static_cast<std::uint64_t>(c.budget);
    const auto assignments = eg::solve_rank1_assignments(system, u, opt);
    json arr = json::array();
    std::ostringstream text;
    text << assignments.size() << " solutions for " << g.spec() << " over " << u.spec() << '\n';
    if (!f.out_dir.empty())
        std::filesystem::create_directories(f.out_dir);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const auto any = eg::materialize(system, u, assignments[i]);
        const auto report = std::visit([](const auto& s) { return eg::verify_axioms(s); }, any);
        if (!report.all_pass())
            throw std::logic_error("rank-1 solution fails the axiom checker");
        const auto j = std::visit([](const auto& s) { return eg::to_json(s); }, any);
        arr.push_back(j);
        text << '#' << i << ':';
        for (int k = 0; k < system.unknown_count(); ++k)
            text << ' ' << system.unknown_name(k) << '=' << u.value(assignments[i][k]);
        text << '\n';
        if (!f.out_dir.empty()) {
            std::ostringstream name;
            name << "system_" << std::setw(4) << std::setfill('0') << i << ".json";
            std::ofstream out(std::filesystem::path(f.out_dir) / name.str());
            if (!out)
                throw FileError("cannot write into '" + f.out_dir + "'");
            out << j.dump(2) << '\n';
        }
    }
    emit(c, {{"group", g.spec()}, {"units", u.spec()}, {"count", assignments.size()}, {"systems", arr}},
         text.str());
}

struct MovesFlags {
    int random = 0;
    std::vector<std::string> apply;
    bool list = false;
};

void moves_cmd(const Common& c, const std::string& path, const MovesFlags& f)
{
    const Diagram d(path, c);
    auto w = d.word();
    if (f.list) {
        json arr = json::array();
        std::string text;
        for (const auto& m : eg::applicable_moves(w)) {
            arr.push_back(eg::to_string(m));
            text += eg::to_string(m) + "\n";
        }
        emit(c, {{"moves", arr}}, text);
        return;
    }
    std::vector<eg::MoveSpec> plan;
    for (const auto& s : f.apply)
        plan.push_back(eg::parse_move_spec(s));
    std::mt19937_64 rng(c.seed);
    json trace = json::array();
    std::ostringstream text;
    text << "start: r=" << eg::rotation_number(w) << " w=" << eg::writhe(w) << '\n';
    const std::size_t total = plan.size() + static_cast<std::size_t>(std::max(f.random, 0));
    for (std::size_t step = 0; step < total; ++step) {
        const auto m = step < plan.size() ? plan[step] : eg::random_move(w, rng);
        w = eg::apply_move(w, m).word;
        const int r = eg::rotation_number(w);
        const int wr = eg::writhe(w);
        trace.push_back({{"move", eg::to_string(m)}, {"rotation", r}, {"writhe", wr}});
        text << step + 1 << ". " << eg::to_string(m) << "  r=" << r << " w=" << wr << '\n';
    }
    text << "diagram:\n" << eg::to_text(w);
    if (!text.str().empty() && text.str().back() != '\n')
        text << '\n';
    emit(c, {{"trace", trace}, {"word", eg::to_text(w)}, {"pd", eg::pd_serialize(eg::morse_to_pd(w))}},
         text.str());
}

void report_error(const std::string& code, const std::string& message, const json& context)
{
    std::cerr << json{{"code", code}, {"message", message}, {"context", context}}.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Electric groups, colourings and tensor invariants of knot diagrams"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", common.seed, "Random seed");
    app.add_option("--budget", common.budget, "Search budget");
    app.add_option("--input-format", common.input_format, "Diagram format")
        ->check(CLI::IsMember({"pd", "morse"}));

    std::string file, group, alpha, beta, system;
    std::vector<std::string> members;
    std::uint64_t max_tuples = eg::VerifyOptions{}.max_tuples;
    EgroupFlags eflags;
    SolveFlags sflags;
    MovesFlags mflags;

    auto* faces = app.add_subcommand("faces", "List the faces of a diagram");
    faces->add_option("file", file, "Diagram file")->required();

    auto* egroup = app.add_subcommand("egroup", "Electric group presentation");
    egroup->add_option("file", file, "Diagram file")->required();
    egroup->add_flag("--reduced", eflags.reduced, "Drop the generators a and b");
    egroup->add_flag("--simplify", eflags.simplify, "Apply Tietze simplification");
    egroup->add_flag("--abelian", eflags.abelian, "Print the abelian invariants");

    auto* colour = app.add_subcommand("colour", "Enumerate proper colourings");
    colour->add_option("file", file, "Diagram file")->required();
    colour->add_option("--group", group, "Finite group")->required();
    colour->add_option("--alpha", alpha, "Restrict alpha");
    colour->add_option("--beta", beta, "Restrict beta");

    auto* census = app.add_subcommand("census", "Colouring counts per (alpha, beta)");
    census->add_option("file", file, "Diagram file")->required();
    census->add_option("--group", group, "Finite group")->required();

    auto* invariant = app.add_subcommand("invariant", "t-values of each colouring");
    invariant->add_option("file", file, "Morse word file")->required();
    invariant->add_option("--system", system, "System JSON")->required();
    invariant->add_option("--alpha", alpha, "Restrict alpha");
    invariant->add_option("--beta", beta, "Restrict beta");

    auto* tau = app.add_subcommand("tau", "Multisets of t-values per (alpha, beta)");
    tau->add_option("file", file, "Morse word file")->required();
    tau->add_option("--system", system, "System JSON used for every pair")->required();
    tau->add_option("--member", members, "ALPHA,BETA=FILE overriding one pair");

    auto* verify = app.add_subcommand("verify-system", "Check the axioms of a system");
    verify->add_option("file", system, "System JSON")->required();
    verify->add_option("--max-tuples", max_tuples, "Full scan limit per axiom");

    auto* solve = app.add_subcommand("solve-rank1", "Rank-1 systems over a unit group");
    solve->add_option("--group", sflags.group, "Finite group")->required();
    solve->add_option("--units", sflags.units, "pm1, U<n> or C<m>")->required();
    solve->add_option("--alpha", sflags.alpha, "Element alpha");
    solve->add_option("--method", sflags.method, "Solver")->check(CLI::IsMember({"auto", "brute", "smith"}));
    solve->add_option("--out-dir", sflags.out_dir, "Write one system JSON per solution");
    solve->add_flag("--equations", sflags.equations, "Print the equations instead of solving");

    auto* moves = app.add_subcommand("moves", "Apply local moves to a Morse word");
    moves->add_option("file", file, "Morse word file")->required();
    moves->add_option("--random", mflags.random, "Number of random moves")->check(CLI::NonNegativeNumber);
    moves->add_option("--apply", mflags.apply, "Moves to apply first, e.g. R1pr@4:1");
    moves->add_flag("--list", mflags.list, "List applicable moves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto* sub = app.get_subcommands().front();
    const json context{{"command", sub->get_name()}, {"input", file.empty() ? system : file}};
    try {
        if (sub == faces)
            faces_cmd(common, file);
        else if (sub == egroup)
            egroup_cmd(common, file, eflags);
        else if (sub == colour)
            colour_cmd(common, file, group, alpha, beta);
        else if (sub == census)
            census_cmd(common, file, group);
        else if (sub == invariant)
            invariant_cmd(common, file, system, alpha, beta);
        else if (sub == tau)
            tau_cmd(common, file, system, members);
        else if (sub == verify)
            verify_cmd(common, system, max_tuples);
        else if (sub == solve)
            solve_cmd(common, sflags);
        else if (sub == moves)
            moves_cmd(common, file, mflags);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const eg::Error& e) {
        report_error(e.code(), e.what(), context);
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        report_error("FileError", e.what(), context);
        return 1;
    } catch (const std::exception& e) {
        report_error("InternalError", e.what(), context);
        return 1;
    }
    return 0;
}
