#include "afe/offstore.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <mutex>

#include "afe/error.h"

namespace afe {

namespace fs = std::filesystem;

BlobStore::BlobStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(*root_, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + root_->string() + ": " + ec.message());
}

fs::path BlobStore::PathFor(const Digest& addr) const { return *root_ / addr.Hex(); }

Digest BlobStore::Put(ByteView blob) {
  const Digest addr = Hash(blob);
  std::unique_lock lock(mu_);
  if (!root_) {
    mem_.try_emplace(addr, blob.begin(), blob.end());
    return addr;
  }
  const fs::path path = PathFor(addr);
  if (fs::exists(path)) return addr;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(blob.data()),
              static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "rename failed: " + ec.message());
  return addr;
}

Bytes BlobStore::Get(const Digest& addr) const {
  std::shared_lock lock(mu_);
  Bytes blob;
  if (!root_) {
    auto it = mem_.find(addr);
    if (it == mem_.end()) throw Error(ErrorCode::kNotFound, "no blob " + addr.Hex());
    blob = it->second;
  } else {
    std::ifstream in(PathFor(addr), std::ios::binary);
    if (!in) throw Error(ErrorCode::kNotFound, "no blob " + addr.Hex());
    blob.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (Hash(blob) != addr) {
    throw Error(ErrorCode::kIntegrity, "stored blob does not match " + addr.Hex());
  }
  return blob;
}

bool BlobStore::Contains(const Digest& addr) const {
  std::shared_lock lock(mu_);
  if (!root_) return mem_.count(addr) != 0;
  return fs::exists(PathFor(addr));
}

std::vector<Digest> BlobStore::List() const {
  std::shared_lock lock(mu_);
  std::vector<Digest> out;
  if (!root_) {
    for (const auto& [d, b] : mem_) out.push_back(d);
    return out;
  }
  for (const auto& entry : fs::directory_iterator(*root_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() != 2 * kDigestSize) continue;
    try {
      out.push_back(Digest::FromHex(name));
    } catch (const Error&) {
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace afe
