#pragma once

#include <json.hpp>

#include <string_view>

#include "alignmatch/error.hpp"

namespace alignmatch::detail {

/// nlohmann parse with errors rethrown as SyntaxError carrying line/column.
inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t limit = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    for (std::size_t k = 0; k < limit; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError("line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what(),
                      line, column);
  }
}

}  // namespace alignmatch::detail
