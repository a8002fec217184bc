#include "capfair/errors.hpp"

#include <iostream>

namespace capfair {

void log_warning(const std::string& message) {
  std::cerr << "capfair: warning: " << message << '\n';
}

}  // namespace capfair
