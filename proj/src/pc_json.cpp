#include "grouplab/pc_json.hpp"

#include <map>
#include <string>

#include "grouplab/error.hpp"

namespace grouplab::nilpotent {

namespace {

nlohmann::ordered_json word_json(const PcWord& w) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& [g, e] : w) out.push_back({g, e});
    return out;
}

PcWord word_from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_array()) throw InputError("pc word must be an array of [index, exponent] pairs");
    PcWord w;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
            throw InputError("pc word entries must be [index, exponent]");
        Int g = s[0].get<Int>();
        if (g < 0 || static_cast<std::size_t>(g) >= n) throw InputError("pc word uses an unknown generator index");
        w.emplace_back(static_cast<std::size_t>(g), s[1].get<Int>());
    }
    return w;
}

}  // namespace

nlohmann::ordered_json pc_to_json(const PcPresentation& pc) {
    nlohmann::ordered_json j;
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : pc.generators())
        j["generators"].push_back({{"id", g.id}, {"weight", g.weight}, {"order", g.relative_order}});
    j["powers"] = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < pc.size(); ++i)
        if (pc.relative_order(i) > 0) j["powers"][pc.generator(i).id] = word_json(PcPresentation::to_word(pc.power_relation(i)));
    j["commutators"] = nlohmann::ordered_json::object();
    for (std::size_t jj = 0; jj < pc.size(); ++jj)
        for (std::size_t i = 0; i < jj; ++i) {
            PcWord w = PcPresentation::to_word(pc.commutator_relation(jj, i));
            if (!w.empty()) j["commutators"][pc.generator(jj).id + "," + pc.generator(i).id] = word_json(w);
        }
    j["class"] = pc.nilpotency_class();
    return j;
}

PcPresentation pc_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
        throw InputError("pc JSON needs a \"generators\" array");
    PcRelations r;
    std::map<std::string, std::size_t> index;
    for (const auto& g : j["generators"]) {
        if (!g.is_object() || !g.contains("id") || !g["id"].is_string()) throw InputError("generator entries need an id");
        PcGenerator gen;
        gen.id = g["id"].get<std::string>();
        gen.weight = g.value("weight", 1);
        gen.relative_order = g.value("order", Int{0});
        if (index.count(gen.id)) throw InputError("duplicate generator id " + gen.id);
        index[gen.id] = r.generators.size();
        r.generators.push_back(gen);
    }
    const std::size_t n = r.generators.size();
    if (j.contains("powers")) {
        if (!j["powers"].is_object()) throw InputError("\"powers\" must be an object");
        for (const auto& [key, w] : j["powers"].items()) {
            auto it = index.find(key);
            if (it == index.end()) throw InputError("power relation for unknown generator " + key);
            r.powers[it->second] = word_from_json(w, n);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (r.generators[i].relative_order > 0 && !r.powers.count(i)) r.powers[i] = {};
    if (j.contains("commutators")) {
        if (!j["commutators"].is_object()) throw InputError("\"commutators\" must be an object");
        for (const auto& [key, w] : j["commutators"].items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos) throw InputError("commutator keys look like \"gj,gi\"");
            auto a = index.find(key.substr(0, comma));
            auto b = index.find(key.substr(comma + 1));
            if (a == index.end() || b == index.end()) throw InputError("commutator key names unknown generators: " + key);
            r.commutators[{a->second, b->second}] = word_from_json(w, n);
        }
    }
    r.nilpotency_class = j.value("class", 1);
    return PcPresentation::create(std::move(r));
}

}  // namespace grouplab::nilpotent
