#include "cgsp/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cgsp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
    const std::size_t hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void fail(const std::string& origin, int line_no, const std::string& message) {
    throw_error(ErrorCode::ConfigInvalid,
                origin + ":" + std::to_string(line_no) + ": " + message);
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

std::vector<std::string> parse_list(const std::string& body, const std::string& origin,
                                    int line_no) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= body.size()) {
        const std::size_t comma = body.find(',', start);
        const std::string item = trim(comma == std::string::npos
                                          ? body.substr(start)
                                          : body.substr(start, comma - start));
        if (!item.empty()) {
            items.push_back(item);
        } else if (comma != std::string::npos) {
            fail(origin, line_no, "empty list item");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return items;
}

}  // namespace

ConfigNode parse_config_text(const std::string& text, const std::string& origin) {
    ConfigNode root;
    std::vector<ConfigNode*> stack{&root};
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line == "}") {
            if (stack.size() == 1) fail(origin, line_no, "unmatched '}'");
            stack.pop_back();
            continue;
        }

        ConfigNode& node = *stack.back();
        if (line.back() == '{') {
            const std::string key = trim(line.substr(0, line.size() - 1));
            if (!valid_key(key)) fail(origin, line_no, "bad block name '" + key + "'");
            if (node.blocks.count(key)) fail(origin, line_no, "duplicate block '" + key + "'");
            stack.push_back(&node.blocks[key]);
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(origin, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) fail(origin, line_no, "bad key '" + key + "'");
        if (node.scalars.count(key) || node.lists.count(key)) {
            fail(origin, line_no, "duplicate key '" + key + "'");
        }
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') fail(origin, line_no, "list must close on the same line");
            node.lists[key] = parse_list(value.substr(1, value.size() - 2), origin, line_no);
        } else {
            if (value.empty()) fail(origin, line_no, "empty value for '" + key + "'");
            node.scalars[key] = value;
        }
    }
    if (stack.size() != 1) {
        throw_error(ErrorCode::ConfigInvalid, origin + ": unclosed block at end of file");
    }
    return root;
}

ConfigNode parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_error(ErrorCode::IoError, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string ConfigNode::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = scalars.find(key);
    return it == scalars.end() ? fallback : it->second;
}

std::string ConfigNode::require_string(const std::string& key) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) {
        throw_error(ErrorCode::ConfigInvalid, "missing required key '" + key + "'");
    }
    return it->second;
}

namespace {

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::logic_error&) {
        throw_error(ErrorCode::ConfigInvalid, "key '" + key + "' has non-numeric value '" +
                                                  value + "'");
    }
}

}  // namespace

double ConfigNode::get_double(const std::string& key, double fallback) const {
    const auto it = scalars.find(key);
    return it == scalars.end() ? fallback : to_double(key, it->second);
}

double ConfigNode::require_double(const std::string& key) const {
    return to_double(key, require_string(key));
}

int ConfigNode::get_int(const std::string& key, int fallback) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) return fallback;
    const double v = to_double(key, it->second);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw_error(ErrorCode::ConfigInvalid, "key '" + key + "' must be an integer");
    }
    return i;
}

bool ConfigNode::get_bool(const std::string& key, bool fallback) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw_error(ErrorCode::ConfigInvalid, "key '" + key + "' must be true or false");
}

std::uint64_t ConfigNode::get_uint64(const std::string& key, std::uint64_t fallback) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) return fallback;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return static_cast<std::uint64_t>(v);
    } catch (const std::logic_error&) {
        throw_error(ErrorCode::ConfigInvalid,
                    "key '" + key + "' has non-integer value '" + it->second + "'");
    }
}

std::vector<std::string> ConfigNode::get_list(const std::string& key) const {
    const auto it = lists.find(key);
    return it == lists.end() ? std::vector<std::string>{} : it->second;
}

std::vector<double> ConfigNode::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : get_list(key)) out.push_back(to_double(key, item));
    return out;
}

const ConfigNode* ConfigNode::block(const std::string& key) const {
    const auto it = blocks.find(key);
    return it == blocks.end() ? nullptr : &it->second;
}

void ConfigNode::check_known(const std::vector<std::string>& scalar_keys,
                             const std::vector<std::string>& list_keys,
                             const std::vector<std::string>& block_keys,
                             const std::string& where) const {
    const auto contains = [](const std::vector<std::string>& keys, const std::string& key) {
        return std::find(keys.begin(), keys.end(), key) != keys.end();
    };
    for (const auto& [key, _] : scalars) {
        if (!contains(scalar_keys, key)) {
            throw_error(ErrorCode::ConfigInvalid, where + ": unknown key '" + key + "'");
        }
    }
    for (const auto& [key, _] : lists) {
        if (!contains(list_keys, key)) {
            throw_error(ErrorCode::ConfigInvalid, where + ": unknown list '" + key + "'");
        }
    }
    for (const auto& [key, _] : blocks) {
        if (!contains(block_keys, key)) {
            throw_error(ErrorCode::ConfigInvalid, where + ": unknown block '" + key + "'");
        }
    }
}

}  // namespace cgsp
