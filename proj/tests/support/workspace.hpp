#pragma once

// Temporary directory holding a small planted corpus, removed on
// destruction.

#include <filesystem>
#include <string>

namespace workspace {

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Writes a 40-document planted corpus (T=4, A=2) as annotated JSONL.
void write_planted_corpus(const std::filesystem::path& file);

std::string read_file(const std::filesystem::path& file);

// Lines that are not blank and do not start with '#'.
std::size_t data_lines(const std::filesystem::path& file);

}  // namespace workspace
