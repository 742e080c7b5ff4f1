#include "subvar/json_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

#include "subvar/errors.hpp"

namespace subvar {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw input_error("config: " + path + " " + what);
}

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known) fail(path, "has unknown key \"" + item.key() + "\"");
    }
}

long get_int(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "is required");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "must be an integer");
    return v.get<long>();
}

EndRing parse_ring(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "must be an object");
    if (!obj.contains("kind")) fail(path + ".kind", "is required");
    const json& kind = obj.at("kind");
    if (!kind.is_string()) fail(path + ".kind", "must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "Z") {
        require_keys(obj, path, {"kind"});
        return EndRing::integers();
    }
    if (k == "order") {
        require_keys(obj, path, {"kind", "s", "p"});
        const long s = get_int(obj, path, "s");
        const long p = get_int(obj, path, "p");
        if (s * s - 4 * p >= 0) fail(path, "must satisfy s^2 - 4 p < 0");
        return EndRing::order(s, p);
    }
    fail(path + ".kind", "must be \"Z\" or \"order\"");
}

FactorBlock parse_block(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "must be an object");
    require_keys(obj, path, {"name", "ring", "multiplicity", "degrees"});

    FactorBlock block;
    if (!obj.contains("name")) fail(path + ".name", "is required");
    if (!obj.at("name").is_string()) fail(path + ".name", "must be a string");
    block.name = obj.at("name").get<std::string>();

    if (!obj.contains("ring")) fail(path + ".ring", "is required");
    block.ring = parse_ring(obj.at("ring"), path + ".ring");

    const long mult = get_int(obj, path, "multiplicity");
    if (mult < 1) fail(path + ".multiplicity", "must be >= 1");
    block.multiplicity = static_cast<std::size_t>(mult);

    if (!obj.contains("degrees")) fail(path + ".degrees", "is required");
    const json& degrees = obj.at("degrees");
    if (!degrees.is_array()) fail(path + ".degrees", "must be an array");
    if (degrees.size() != block.multiplicity)
        fail(path + ".degrees", "must have one entry per copy");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const std::string dpath = path + ".degrees[" + std::to_string(i) + "]";
        if (!degrees[i].is_number_integer()) fail(dpath, "must be an integer");
        const long d = degrees[i].get<long>();
        if (d < 1) fail(dpath, "must be >= 1");
        block.degrees.emplace_back(d);
    }
    return block;
}

}  // namespace

VarietyConfig parse_config_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("document", "must be an object");
    require_keys(root, "document", {"blocks"});
    if (!root.contains("blocks")) fail("blocks", "is required");
    const json& blocks = root.at("blocks");
    if (!blocks.is_array()) fail("blocks", "must be an array");
    if (blocks.empty()) fail("blocks", "must be nonempty");

    std::vector<FactorBlock> parsed;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        parsed.push_back(parse_block(blocks[i], "blocks[" + std::to_string(i) + "]"));
    try {
        return VarietyConfig(std::move(parsed));
    } catch (const structural_error& e) {
        throw input_error(std::string("config: ") + e.what());
    }
}

VarietyConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string canonical_config_string(const VarietyConfig& v) {
    json blocks = json::array();
    for (const auto& b : v.blocks()) {
        json ring;
        if (b.ring.kind == EndRing::Kind::integers) {
            ring = {{"kind", "Z"}};
        } else {
            ring = {{"kind", "order"}, {"s", b.ring.s.get_si()}, {"p", b.ring.p.get_si()}};
        }
        json degrees = json::array();
        for (const Int& d : b.degrees) degrees.push_back(d.get_si());
        blocks.push_back({{"name", b.name},
                          {"ring", ring},
                          {"multiplicity", b.multiplicity},
                          {"degrees", degrees}});
    }
    return json{{"blocks", blocks}}.dump();
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
    return out.str();
}

std::string config_digest(const VarietyConfig& v) {
    return fnv1a64_hex(canonical_config_string(v));
}

}  // namespace subvar
