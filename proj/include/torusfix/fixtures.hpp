#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torusfix/io.hpp"

namespace torusfix {

std::vector<std::string> fixture_names();

// (file name, document) pairs for a bundled fixture. Throws InvalidInput on
// an unknown name.
std::vector<std::pair<std::string, Json>> fixture_files(const std::string& name);

// The single document of a one-file fixture, or a named file of a family.
Json fixture_document(const std::string& name, const std::string& file = {});

}  // namespace torusfix
