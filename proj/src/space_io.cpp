#include "exmeasure/space_io.hpp"

#include "json.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exm {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string(what) + ": bad JSON: " + ex.what());
    }
}

Rational rational_field(const json& j, const char* what) {
    if (!j.is_string())
        throw std::invalid_argument(std::string(what) + ": expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& ex) {
        throw std::invalid_argument(std::string(what) + ": " + ex.what());
    }
}

Mask mask_from_string(const GroundPtr& ground, const std::string& bits) {
    if (bits.size() != ground->size())
        throw std::invalid_argument("mask '" + bits + "': expected " +
                                    std::to_string(ground->size()) + " characters, one per label");
    Mask m = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            m |= Mask{1} << i;
        else if (bits[i] != '0')
            throw std::invalid_argument("mask '" + bits + "': only '0' and '1' are allowed");
    }
    return m;
}

Index index_for_mask(const SpacePtr& space, Mask m, const std::string& bits) {
    const Mask full = space->ground()->full();
    if (m < space->index_count() && space->family(static_cast<Index>(m)).pos() == m &&
        space->family(static_cast<Index>(m)).neg() == (full & ~m))
        return static_cast<Index>(m);
    for (Index i = 0; i < space->index_count(); ++i)
        if (space->family(i).pos() == m && space->family(i).neg() == (full & ~m)) return i;
    throw std::invalid_argument("mask '" + bits + "': the family has no indicator for this subset");
}

SimpleFunction simple_from_parsed(const SpacePtr& space, const json& j) {
    if (!j.is_array())
        throw std::invalid_argument("simple function: expected a list of [coefficient, mask] pairs");
    std::vector<SimpleTerm> terms;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_string())
            throw std::invalid_argument("simple function: each term is [coefficient, mask]");
        const Rational coeff = rational_field(entry[0], "simple function coefficient");
        const std::string bits = entry[1].get<std::string>();
        terms.push_back({coeff, index_for_mask(space, mask_from_string(space->ground(), bits), bits)});
    }
    return SimpleFunction(space, std::move(terms));
}

}  // namespace

SpacePtr space_from_json(const std::string& text) {
    const json j = parse_document(text, "space");
    if (!j.is_object() || !j.contains("ground_set") || !j.contains("measure"))
        throw std::invalid_argument("space: expected {\"ground_set\": ..., \"measure\": ...}");

    if (!j["ground_set"].is_array() || j["ground_set"].empty())
        throw std::invalid_argument("space: ground_set must be a nonempty list of labels");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const auto& l : j["ground_set"]) {
        if (!l.is_string() || l.get<std::string>().empty())
            throw std::invalid_argument("space: labels must be nonempty strings");
        if (!seen.insert(l.get<std::string>()).second)
            throw std::invalid_argument("space: duplicate label '" + l.get<std::string>() + "'");
        labels.push_back(l.get<std::string>());
    }
    auto ground = std::make_shared<const GroundSet>(labels);

    const json& m = j["measure"];
    if (!m.is_object() || !m.contains("type") || !m["type"].is_string())
        throw std::invalid_argument("space: measure needs a \"type\"");
    const std::string type = m["type"].get<std::string>();
    if (type == "dirac") {
        if (!m.contains("point") || !m["point"].is_string())
            throw std::invalid_argument("space: dirac measure needs a \"point\" label");
        return dirac(std::move(ground), m["point"].get<std::string>());
    }
    if (type == "weighted") {
        if (!m.contains("weights") || !m["weights"].is_object())
            throw std::invalid_argument("space: weighted measure needs a \"weights\" object");
        const json& w = m["weights"];
        std::vector<Rational> weights;
        for (const auto& label : labels) {
            if (!w.contains(label))
                throw std::invalid_argument("space: missing weight for label '" + label + "'");
            const Rational value = rational_field(w[label], "weight");
            if (value.sgn() < 0)
                throw std::invalid_argument("space: weight for '" + label + "' is negative");
            weights.push_back(value);
        }
        if (w.size() != labels.size())
            throw std::invalid_argument("space: weights mention labels outside the ground set");
        return weighted_counting(std::move(ground), std::move(weights));
    }
    if (type == "table") {
        if (!m.contains("family") || !m["family"].is_array() || !m.contains("values") ||
            !m["values"].is_array())
            throw std::invalid_argument("space: table measure needs \"family\" and \"values\"");
        std::vector<ComplementedSubset> family;
        for (const auto& entry : m["family"]) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
                !entry[1].is_string())
                throw std::invalid_argument("space: each family entry is [positive, negative]");
            const Mask pos = mask_from_string(ground, entry[0].get<std::string>());
            const Mask neg = mask_from_string(ground, entry[1].get<std::string>());
            family.emplace_back(ground, pos, neg);
        }
        std::vector<Rational> values;
        for (const auto& v : m["values"]) values.push_back(rational_field(v, "table value"));
        const std::string name =
            m.contains("name") && m["name"].is_string() ? m["name"].get<std::string>() : "table";
        return table_space(std::move(ground), std::move(family), std::move(values), name);
    }
    throw std::invalid_argument("space: unknown measure type '" + type + "'");
}

SimpleFunction simple_from_json(const SpacePtr& space, const std::string& text) {
    if (!space) throw std::invalid_argument("simple function: null space");
    return simple_from_parsed(space, parse_document(text, "simple function"));
}

Representation rep_from_json(const SpacePtr& space, const std::string& text) {
    if (!space) throw std::invalid_argument("representation: null space");
    const json j = parse_document(text, "representation");
    if (!j.is_object() || j.size() != 1)
        throw std::invalid_argument(
            "representation: expected {\"support\": ...} or {\"geometric\": ...}");
    if (j.contains("support")) {
        if (!j["support"].is_array())
            throw std::invalid_argument("representation: support must be a list of simple functions");
        std::vector<SimpleFunction> terms;
        for (const auto& entry : j["support"]) terms.push_back(simple_from_parsed(space, entry));
        return rep_from_terms(space, std::move(terms));
    }
    if (j.contains("geometric")) {
        const json& g = j["geometric"];
        if (!g.is_object() || !g.contains("base") || !g.contains("ratio"))
            throw std::invalid_argument("representation: geometric needs \"base\" and \"ratio\"");
        const SimpleFunction base = simple_from_parsed(space, g["base"]);
        const Rational ratio = rational_field(g["ratio"], "ratio");
        return rep_geometric(base, ratio);
    }
    throw std::invalid_argument("representation: unknown constructor");
}

std::string print_rational(const Rational& q) { return q.str(); }

std::string print_real(const ModulatedReal& x, long p) {
    if (p < 0) throw std::invalid_argument("print_real: negative precision");
    const Rational close = approx_to(x, p + 1);
    const Rational slack = Rational::pow2(-(p + 1));
    const Rational shown = simplest_in_interval(close - slack, close + slack);
    return shown.str() + " ± 2^-" + std::to_string(p);
}

}  // namespace exm
