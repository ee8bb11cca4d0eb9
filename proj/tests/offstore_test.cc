#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "afe/error.h"
#include "afe/offstore.h"

namespace afe {
namespace {

std::filesystem::path TempDir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("afe_offstore_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(BlobStore, PutGetAndDedup) {
  BlobStore store;
  const Digest a = store.Put(AsBytes("hello"));
  EXPECT_EQ(a, Hash(AsBytes("hello")));
  EXPECT_EQ(store.Put(AsBytes("hello")), a);
  EXPECT_EQ(store.List().size(), 1u);
  EXPECT_EQ(store.Get(a), Bytes(AsBytes("hello").begin(), AsBytes("hello").end()));
  EXPECT_TRUE(store.Contains(a));
}

TEST(BlobStore, MissingIsNotFound) {
  BlobStore store;
  try {
    store.Get(Hash(AsBytes("nope")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(BlobStore, EmptyBlobIsAddressable) {
  BlobStore store;
  const Digest d = store.Put({});
  EXPECT_TRUE(store.Get(d).empty());
}

TEST(BlobStore, DirectoryPersistsAcrossInstances) {
  const auto dir = TempDir("persist");
  Digest d;
  {
    BlobStore store(dir);
    d = store.Put(AsBytes("persistent"));
  }
  BlobStore reopened(dir);
  EXPECT_TRUE(reopened.Contains(d));
  EXPECT_EQ(reopened.List().size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(BlobStore, TamperedFileFailsIntegrity) {
  const auto dir = TempDir("tamper");
  BlobStore store(dir);
  const Digest d = store.Put(AsBytes("original"));
  {
    std::ofstream out(dir / d.Hex(), std::ios::binary | std::ios::trunc);
    out << "modified";
  }
  try {
    store.Get(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIntegrity);
  }
  std::filesystem::remove_all(dir);
}

TEST(BlobStore, ConcurrentPutsAreSafe) {
  BlobStore store;
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&store, t] {
      for (int i = 0; i < 50; ++i) {
        store.Put(AsBytes("blob-" + std::to_string((t * 50 + i) % 100)));
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(store.List().size(), 100u);
}

}  // namespace
}  // namespace afe
