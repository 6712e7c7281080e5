#include "barfill/config.hpp"

#include <cstdlib>
#include <fstream>

namespace barfill {

static uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "order_cap")
        order_cap = static_cast<uint32_t>(parse_u64(key, value));
    else if (key == "dim_cap")
        dim_cap = parse_u64(key, value);
    else if (key == "nnz_cap")
        nnz_cap = parse_u64(key, value);
    else if (key == "census_cap")
        census_cap = parse_u64(key, value);
    else if (key == "node_budget")
        node_budget = parse_u64(key, value);
    else if (key == "weight_ceiling")
        weight_ceiling = static_cast<uint32_t>(parse_u64(key, value));
    else if (key == "seed")
        seed = parse_u64(key, value);
    else if (key == "threads") {
        threads = static_cast<uint32_t>(parse_u64(key, value));
        if (threads == 0)
            threads = 1;
    } else if (key == "checkpoint_path")
        checkpoint_path = value;
    else if (key == "format") {
        if (value != "json" && value != "csv")
            throw ParseError("config: format must be json or csv");
        format = value;
    } else
        throw ParseError("config: unknown key '" + key + "'");
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("config: cannot open '" + path + "'");
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        /* strip comments and surrounding blanks */
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos)
            continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config: missing '=' at " + path + ":" + std::to_string(lineno));
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
            key.pop_back();
        size_t v = value.find_first_not_of(" \t");
        value = (v == std::string::npos) ? "" : value.substr(v);
        set(key, value);
    }
}

void RunConfig::load_env() {
    const char* path = std::getenv("BARFILL_CONFIG");
    if (path && *path)
        load_file(path);
}

} // namespace barfill
