#pragma once
#include <string>

#include "subvar/variety.hpp"

namespace subvar {

/* {"blocks":[{"name":..., "ring":{"kind":"Z"}|{"kind":"order","s":..,"p":..},
   "multiplicity":.., "degrees":[..]}]}; errors name the offending field. */
VarietyConfig parse_config_json(const std::string& text);

VarietyConfig load_config_file(const std::string& path);

/* Key-sorted compact JSON; the digest input. */
std::string canonical_config_string(const VarietyConfig& v);

std::string fnv1a64_hex(const std::string& bytes);

std::string config_digest(const VarietyConfig& v);

}  // namespace subvar
