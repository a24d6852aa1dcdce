#include "invforge/config.hpp"

#include <fstream>

namespace invforge::cli {

namespace {

void reject_unknown(const nlohmann::json& obj,
                    std::initializer_list<const char*> allowed,
                    const std::string& where) {
    if (!obj.is_object())
        throw ConfigInvalid(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigInvalid("unknown key '" + key + "' in " + where);
    }
}

TaskSpec parse_task(const nlohmann::json& j, std::size_t index) {
    const std::string where = "tasks[" + std::to_string(index) + "]";
    reject_unknown(j, {"type", "family", "claim", "params", "sizes", "k"},
                   where);
    TaskSpec t;
    if (!j.contains("type"))
        throw ConfigInvalid(where + " missing 'type'");
    t.type = j.at("type").get<std::string>();
    if (t.type != "construct" && t.type != "verify" && t.type != "stabilizer" &&
        t.type != "jacobian" && t.type != "bench")
        throw ConfigInvalid(where + " has unknown type '" + t.type + "'");
    if (j.contains("family")) t.family = j.at("family").get<std::string>();
    if (j.contains("claim")) t.claim = j.at("claim").get<std::string>();
    if (j.contains("params")) {
        if (!j.at("params").is_object())
            throw ConfigInvalid(where + ".params must be an object");
        t.params = j.at("params");
    }
    if (j.contains("sizes"))
        t.sizes = j.at("sizes").get<std::vector<int>>();
    if (j.contains("k")) t.k = j.at("k").get<int>();
    if (t.type == "verify" && t.claim.empty())
        throw ConfigInvalid(where + " of type verify needs 'claim'");
    return t;
}

} // namespace

RunConfig parse_config(const nlohmann::json& j) {
    reject_unknown(
        j, {"field", "grid", "group", "form", "tasks", "seed", "caps", "out"},
        "config");
    RunConfig cfg;
    if (!j.contains("field"))
        throw ConfigInvalid("config missing 'field'");
    reject_unknown(j.at("field"), {"p", "e"}, "field");
    cfg.p = j.at("field").at("p").get<std::uint32_t>();
    cfg.e = j.at("field").contains("e")
                ? j.at("field").at("e").get<std::uint32_t>()
                : 1;

    if (j.contains("grid")) {
        reject_unknown(j.at("grid"), {"m", "n", "size"}, "grid");
        const auto& g = j.at("grid");
        if (g.contains("m")) cfg.m = g.at("m").get<int>();
        if (g.contains("n") && g.contains("size"))
            throw ConfigInvalid("grid takes 'n' or 'size', not both");
        if (g.contains("n")) cfg.n = g.at("n").get<int>();
        if (g.contains("size")) cfg.n = g.at("size").get<int>();
        if (cfg.m < 1 || cfg.n < 1)
            throw ConfigInvalid("grid extents must be >= 1");
    }
    if (j.contains("group"))
        cfg.group = groups::parse_group_kind(j.at("group").get<std::string>());
    if (j.contains("form")) cfg.form_text = j.at("form").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("caps")) {
        reject_unknown(j.at("caps"), {"enumeration", "term_count"}, "caps");
        if (j.at("caps").contains("enumeration"))
            cfg.enumeration_cap =
                j.at("caps").at("enumeration").get<std::uint64_t>();
        if (j.at("caps").contains("term_count"))
            cfg.term_count_cap =
                j.at("caps").at("term_count").get<std::uint64_t>();
    }
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("tasks")) {
        if (!j.at("tasks").is_array())
            throw ConfigInvalid("'tasks' must be an array");
        for (std::size_t i = 0; i < j.at("tasks").size(); ++i)
            cfg.tasks.push_back(parse_task(j.at("tasks").at(i), i));
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigInvalid("config is not valid JSON: " +
                            std::string(ex.what()));
    }
    return parse_config(j);
}

} // namespace invforge::cli
