#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sacsm {

// Lowercase, split on any non-alphanumeric character, drop stopwords and
// tokens shorter than 2 characters. Order preserved.
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(const std::string& term);

}  // namespace sacsm
