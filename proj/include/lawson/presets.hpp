#pragma once

#include "lawson/harness.hpp"

#include <string>
#include <vector>

namespace lawson {

/// Named study configurations for the reference experiments table2 ... table10.
StudyConfig preset(const std::string& name);
std::vector<std::string> preset_names();
/// One-line description of a preset.
std::string preset_summary(const std::string& name);

}  // namespace lawson
