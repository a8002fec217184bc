#pragma once

#include <string>
#include <string_view>

namespace capfair {

// Porter (1980) stemming algorithm, original rule set.
std::string porter_stem(std::string_view word);

}  // namespace capfair
