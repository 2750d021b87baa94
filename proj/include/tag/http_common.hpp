#pragma once

#include <string>
#include <string_view>

namespace tag {

// "http://host:1234/v1/x" -> base "http://host:1234", path "/v1/x".
// A URL without a path gets default_path.
struct SplitUrl {
  std::string base;
  std::string path;
};

SplitUrl split_url(std::string_view url, std::string_view default_path);

// Reads an environment variable; empty when unset.
std::string env_or_empty(const char* name);

}  // namespace tag
