#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tag/errors.hpp"

namespace tag::retrieval {

using EmbeddingVector = std::vector<double>;

class Embedder {
 public:
  virtual ~Embedder() = default;

  // Positionally aligned with the input texts.
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const = 0;
};

std::uint64_t fnv1a64(std::string_view data);

// Deterministic bag-of-buckets embedder: lowercase, split on
// non-alphanumerics, FNV-1a 64-bit per token, bucket = hash % 256, count,
// L2-normalize. A text with no tokens stays the zero vector.
class MockEmbedder : public Embedder {
 public:
  static constexpr std::size_t kBuckets = 256;

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override;
};

struct HttpEmbedderConfig {
  std::string endpoint;  // full URL, e.g. http://host:8000/v1/embeddings
  std::string api_key;
  std::string model;
  double timeout_s = 120.0;
};

// POSTs {model, input: [texts]} and reads data[i].embedding.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(HttpEmbedderConfig config);

  // TAG_EMBED_ENDPOINT (required), TAG_EMBED_MODEL.
  static HttpEmbedder from_env();

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override;

 private:
  HttpEmbedderConfig config_;
};

}  // namespace tag::retrieval
