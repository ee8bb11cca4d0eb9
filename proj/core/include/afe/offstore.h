#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "afe/bytes.h"
#include "afe/crypto.h"

namespace afe {

// Content-addressed public blob store. With a root directory each blob lives
// at <root>/<hex digest> and the directory is the source of truth; without
// one, blobs are kept in memory.
class BlobStore {
 public:
  BlobStore() = default;
  explicit BlobStore(std::filesystem::path root);

  BlobStore(const BlobStore&) = delete;
  BlobStore& operator=(const BlobStore&) = delete;

  // Address is Hash(blob). Identical content is stored once.
  Digest Put(ByteView blob);
  // Throws kNotFound, or kIntegrity when the stored bytes no longer hash to
  // `addr`.
  Bytes Get(const Digest& addr) const;
  bool Contains(const Digest& addr) const;
  std::vector<Digest> List() const;

  const std::optional<std::filesystem::path>& root() const { return root_; }

 private:
  std::filesystem::path PathFor(const Digest& addr) const;

  std::optional<std::filesystem::path> root_;
  mutable std::shared_mutex mu_;
  std::map<Digest, Bytes> mem_;
};

}  // namespace afe
