#include "eg/gsystem.hpp"

#include <sstream>

namespace eg {

std::pair<int, int> parse_pair_key(const FiniteGroup& g, const std::string& key)
{
    std::optional<std::pair<int, int>> found;
    for (std::size_t comma = key.find(','); comma != std::string::npos; comma = key.find(',', comma + 1)) {
        try {
            const int a = g.element(key.substr(0, comma));
            const int b = g.element(key.substr(comma + 1));
            if (found)
                throw ValidationError("ambiguous pair key '" + key + "'");
            found = {a, b};
        } catch (const UnknownSpec&) {
        }
    }
    if (!found)
        throw UnknownSpec("pair key '" + key + "' does not name two group elements");
    return *found;
}

std::string to_text(const AxiomReport& r)
{
    std::ostringstream out;
    for (const auto& a : r.axioms) {
        out << a.name << ' ' << (a.pass ? "pass" : "FAIL") << " (" << a.checked << " of " << a.space
            << " instances)";
        if (!a.encodings_agree)
            out << " formula and wiring graph disagree";
        if (a.failure) {
            out << " at";
            for (const auto& e : a.failure->elements)
                out << ' ' << e;
            out << " coordinate [";
            for (std::size_t k = 0; k < a.failure->index.size(); ++k)
                out << (k ? "," : "") << a.failure->index[k];
            out << "]: " << a.failure->lhs << " != " << a.failure->rhs;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const AxiomReport& r)
{
    nlohmann::json axioms = nlohmann::json::array();
    for (const auto& a : r.axioms) {
        nlohmann::json j{{"axiom", a.name},
                         {"pass", a.pass},
                         {"encodings_agree", a.encodings_agree},
                         {"checked", a.checked},
                         {"space", a.space}};
        if (a.failure)
            j["counterexample"] = {{"elements", a.failure->elements},
                                   {"coordinate", a.failure->index},
                                   {"lhs", a.failure->lhs},
                                   {"rhs", a.failure->rhs}};
        axioms.push_back(std::move(j));
    }
    return {{"all_pass", r.all_pass()}, {"axioms", std::move(axioms)}};
}

AnySystem any_system_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("ring"))
        throw SyntaxError("system JSON needs a ring descriptor");
    const auto& d = j.at("ring");
    const std::string kind = d.is_string() ? d.get<std::string>() : d.value("kind", std::string{});
    if (kind == "integer")
        return system_from_json(IntegerRing{}, j);
    if (kind == "rational")
        return system_from_json(RationalRing{}, j);
    if (kind == "laurent")
        return system_from_json(LaurentRing{d.is_object() ? d.value("var", std::string("t")) : "t"}, j);
    if (kind == "mod") {
        if (!d.is_object() || !d.contains("n") || !d.at("n").is_number_integer())
            throw SyntaxError("mod ring descriptor needs an integer n");
        return system_from_json(ModRing{d.at("n").get<std::int64_t>()}, j);
    }
    throw UnknownSpec("unknown ring kind '" + kind + "'");
}

} // namespace eg
