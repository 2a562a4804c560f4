#include "lexdiv/app/output.hpp"

#include <algorithm>
#include <fstream>

#include <openssl/evp.h>
#include <json.hpp>

#include "lexdiv/error.hpp"

namespace lexdiv::app {
namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string safe_file_name(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == '-';
    if (!ok) c = '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

OutputStage::OutputStage(fs::path out_dir, std::string command)
    : out_dir_(std::move(out_dir)), command_(std::move(command)) {
  staging_ = out_dir_ / (".staging-" + command_);
  std::error_code ec;
  fs::remove_all(staging_, ec);
  fs::create_directories(staging_, ec);
  if (ec) throw Error("cannot create output directory " + staging_.string() + ": " + ec.message());
}

OutputStage::~OutputStage() {
  if (done_) return;
  try {
    quarantine();
  } catch (...) {
  }
}

void OutputStage::write(const std::string& relative, std::string_view content) {
  const fs::path rel(relative);
  if (rel.empty() || rel.is_absolute() || rel.filename().empty() ||
      std::any_of(rel.begin(), rel.end(), [](const fs::path& part) { return part == ".." || part == "."; })) {
    throw Error("output path '" + relative + "' must be relative and stay inside the output directory");
  }
  const fs::path target = staging_ / rel;
  fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  if (!out) throw Error("cannot write " + target.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("error writing " + target.string());
  hashes_[relative] = sha256_hex(content);
}

std::vector<std::string> OutputStage::commit() {
  using nlohmann::ordered_json;
  ordered_json config(ordered_json::value_t::object);
  for (const auto& [k, v] : config_) config[k] = v;
  ordered_json manifest;
  manifest["command"] = command_;
  manifest["seed"] = config_.count("seed") ? config_.at("seed") : "";
  manifest["config"] = config;
  manifest["config_sha256"] = sha256_hex(config.dump());
  auto files = ordered_json::array();
  std::vector<std::string> paths;
  for (const auto& [rel, hash] : hashes_) {
    files.push_back({{"path", rel}, {"sha256", hash}});
    paths.push_back(rel);
  }
  manifest["files"] = std::move(files);
  write("run_manifest.json", manifest.dump(2) + "\n");

  for (const auto& [rel, hash] : hashes_) {
    const fs::path dest = out_dir_ / rel;
    fs::create_directories(dest.parent_path());
    fs::rename(staging_ / rel, dest);
  }
  fs::remove_all(staging_);
  done_ = true;
  return paths;
}

fs::path OutputStage::quarantine() {
  done_ = true;
  const fs::path base = out_dir_ / "quarantine";
  fs::create_directories(base);
  fs::path dest = base / command_;
  for (int k = 1; fs::exists(dest); ++k) dest = base / (command_ + "-" + std::to_string(k));
  fs::rename(staging_, dest);
  return dest;
}

}  // namespace lexdiv::app
