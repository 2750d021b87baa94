#include "tag/retrieval/embedder.hpp"

#include <cctype>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "tag/http_common.hpp"

namespace tag::retrieval {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::vector<EmbeddingVector> MockEmbedder::embed(const std::vector<std::string>& texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    EmbeddingVector vec(kBuckets, 0.0);
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      vec[fnv1a64(token) % kBuckets] += 1.0;
      token.clear();
    };
    for (unsigned char c : text) {
      if (std::isalnum(c)) {
        token.push_back(static_cast<char>(std::tolower(c)));
      } else {
        flush();
      }
    }
    flush();
    double norm_sq = 0.0;
    for (double v : vec) norm_sq += v * v;
    if (norm_sq > 0.0) {
      double norm = std::sqrt(norm_sq);
      for (double& v : vec) v /= norm;
    }
    out.push_back(std::move(vec));
  }
  return out;
}

HttpEmbedder::HttpEmbedder(HttpEmbedderConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw FormatError("embedding endpoint is empty; set TAG_EMBED_ENDPOINT or pass a config");
  }
}

HttpEmbedder HttpEmbedder::from_env() {
  HttpEmbedderConfig config;
  config.endpoint = env_or_empty("TAG_EMBED_ENDPOINT");
  config.api_key = env_or_empty("TAG_LM_API_KEY");
  config.model = env_or_empty("TAG_EMBED_MODEL");
  return HttpEmbedder(std::move(config));
}

std::vector<EmbeddingVector> HttpEmbedder::embed(const std::vector<std::string>& texts) const {
  SplitUrl url = split_url(config_.endpoint, "/v1/embeddings");
  nlohmann::json body = {{"model", config_.model}, {"input", texts}};
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  httplib::Client client(url.base);
  client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));
  auto res = client.Post(url.path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error("embedding transport error: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("embedding HTTP " + std::to_string(res->status) + ": " + res->body);
  }
  try {
    nlohmann::json doc = nlohmann::json::parse(res->body);
    std::vector<EmbeddingVector> out;
    for (const auto& item : doc.at("data")) {
      out.push_back(item.at("embedding").get<EmbeddingVector>());
    }
    if (out.size() != texts.size()) {
      throw Error("embedding response has " + std::to_string(out.size()) + " vectors for " +
                  std::to_string(texts.size()) + " inputs");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed embedding response: " + std::string(e.what()));
  }
}

}  // namespace tag::retrieval
