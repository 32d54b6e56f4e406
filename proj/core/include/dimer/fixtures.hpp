#pragma once

#include <string>
#include <vector>

#include "dimer/io.hpp"

namespace dimer {

std::vector<std::string> fixture_names();
// Throws UsageError for unknown names.
const std::string& fixture_text(const std::string& name);
DimerFile load_fixture(const std::string& name);

// A fixture name or a path to a dimer file.
DimerFile load_model(const std::string& name_or_path);

}  // namespace dimer
