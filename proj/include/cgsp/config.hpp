#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cgsp/types.hpp"

namespace cgsp {

// Line-oriented config format:
//   # comment
//   key = value
//   list = [a, b, c]
//   block {
//     key = value
//   }
// Values keep everything after the first '=', so kernel specs with ':' and
// '=' inside pass through unchanged.
struct ConfigNode {
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, ConfigNode> blocks;

    bool has_scalar(const std::string& key) const { return scalars.count(key) > 0; }
    bool has_list(const std::string& key) const { return lists.count(key) > 0; }
    bool has_block(const std::string& key) const { return blocks.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;  // empty when absent
    std::vector<double> get_double_list(const std::string& key) const;
    const ConfigNode* block(const std::string& key) const;

    // Throws ConfigInvalid when a key of any kind is not in the allow lists.
    void check_known(const std::vector<std::string>& scalar_keys,
                     const std::vector<std::string>& list_keys,
                     const std::vector<std::string>& block_keys,
                     const std::string& where) const;
};

ConfigNode parse_config_text(const std::string& text, const std::string& origin = "<config>");
ConfigNode parse_config_file(const std::string& path);

}  // namespace cgsp
