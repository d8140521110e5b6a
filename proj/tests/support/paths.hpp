#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace testpaths {

inline std::filesystem::path source_dir() {
  if (const char* env = std::getenv("SSAKG_SOURCE_DIR")) return env;
  return std::filesystem::path(__FILE__).parent_path().parent_path().parent_path();
}

inline std::filesystem::path data_dir() { return source_dir() / "data"; }

// Fresh empty directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("ssakg-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

}  // namespace testpaths
