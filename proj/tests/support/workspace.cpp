#include "workspace.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "synthetic.hpp"

namespace workspace {

TempDir::TempDir() {
  std::random_device rd;
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("corrview-test-" + std::to_string(rd()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("could not create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_planted_corpus(const std::filesystem::path& file) {
  synthetic::PlantedConfig pc;
  pc.num_docs = 40;
  pc.num_topics = 4;
  pc.topical_length = 30;
  pc.opinion_length = 15;
  std::ofstream out(file);
  corrview::write_annotated_corpus(out, synthetic::generate(pc).docs);
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_lines(const std::filesystem::path& file) {
  std::istringstream in(read_file(file));
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') ++n;
  }
  return n;
}

}  // namespace workspace
