#include "dimer/fixtures.hpp"

#include <filesystem>
#include <map>

#include "dimer/errors.hpp"

namespace dimer {

namespace detail {
const std::map<std::string, std::string>& fixture_table();
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& [name, text] : detail::fixture_table()) out.push_back(name);
    return out;
}

const std::string& fixture_text(const std::string& name) {
    const auto& t = detail::fixture_table();
    auto it = t.find(name);
    if (it == t.end()) throw UsageError("unknown fixture '" + name + "'");
    return it->second;
}

DimerFile load_fixture(const std::string& name) { return parse_dimer(fixture_text(name)); }

DimerFile load_model(const std::string& name_or_path) {
    const auto& t = detail::fixture_table();
    if (t.count(name_or_path) && !std::filesystem::exists(name_or_path)) return load_fixture(name_or_path);
    return load_dimer(name_or_path);
}

}  // namespace dimer
