#include "tag/http_common.hpp"

#include <cstdlib>

#include "tag/errors.hpp"

namespace tag {

SplitUrl split_url(std::string_view url, std::string_view default_path) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw FormatError("endpoint URL must include a scheme: " + std::string(url));
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) {
    return {std::string(url), std::string(default_path)};
  }
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace tag
