#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lexdiv::app {

std::string sha256_hex(std::string_view data);

// Replaces characters outside [A-Za-z0-9._-] so a book id can name a file.
std::string safe_file_name(std::string_view id);

// Collects a command's outputs in `<out>/.staging-<command>`. commit() writes
// run_manifest.json (config, seed, config hash, SHA-256 of every file) and
// moves everything into `<out>`. If the stage is abandoned (exception,
// destruction without commit) the partial files go to
// `<out>/quarantine/<command>[-k]` and earlier results in `<out>` stay intact.
class OutputStage {
 public:
  OutputStage(std::filesystem::path out_dir, std::string command);
  ~OutputStage();
  OutputStage(const OutputStage&) = delete;
  OutputStage& operator=(const OutputStage&) = delete;

  void write(const std::string& relative, std::string_view content);

  void set_config(std::map<std::string, std::string> config) { config_ = std::move(config); }

  // Returns the committed relative paths (sorted), excluding the manifest.
  std::vector<std::string> commit();
  std::filesystem::path quarantine();

  const std::filesystem::path& out_dir() const { return out_dir_; }

 private:
  std::filesystem::path out_dir_;
  std::filesystem::path staging_;
  std::string command_;
  std::map<std::string, std::string> config_;
  std::map<std::string, std::string> hashes_;
  bool done_ = false;
};

}  // namespace lexdiv::app
