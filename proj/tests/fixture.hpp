#pragma once

// On-disk synthetic corpora: source books of increasing vocabulary size, human
// translations that rename every source word one-to-one, and n-best candidate
// pools where higher-probability candidates draw from larger vocabularies.

#include <cstdint>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fixture {

namespace fs = std::filesystem;

struct CorpusSpec {
  std::size_t books = 5;
  std::size_t lines = 40;
  std::size_t words = 10;     // words per line
  std::size_t candidates = 5; // candidates per sentence
  bool markers = false;       // candidates in the upper half of levels carry one "qq" marker
  std::uint64_t seed = 7;
};

struct CorpusFiles {
  fs::path dir;
  fs::path manifest;
  fs::path candidates;
  fs::path scores;
};

inline std::string word(char prefix, std::size_t k) {
  std::string s(1, prefix);
  do {
    s += static_cast<char>('a' + k % 26);
    k /= 26;
  } while (k > 0);
  return s;
}

inline void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string book_id(char role, std::size_t i) {
  std::string id(1, role);
  if (i < 10) id += '0';
  return id + std::to_string(i);
}

// Vocabulary pool of source book i.
inline std::size_t source_pool(std::size_t i) { return 10 + 15 * i; }

// Vocabulary pool of candidates at level `level` (0 = highest probability).
inline std::size_t candidate_pool(std::size_t level, std::size_t levels) { return std::size_t{4} << (levels - 1 - level); }

inline double level_probability(std::size_t level, std::size_t levels) {
  return 1.0 - (static_cast<double>(level) + 0.5) / static_cast<double>(levels);
}

inline CorpusFiles write_corpus(const fs::path& dir, const CorpusSpec& spec) {
  fs::remove_all(dir);
  fs::create_directories(dir / "books");
  std::mt19937_64 rng(spec.seed);
  std::ostringstream manifest, cands, scores;
  manifest << "id\ttitle\trole\tlanguage\tpath\n";
  scores << "book_id\tsent_id\tcand_idx\tp_original\n";
  for (std::size_t b = 0; b < spec.books; ++b) {
    const auto src = book_id('s', b), ht = book_id('h', b);
    const std::string title = "Book " + std::to_string(b);
    std::uniform_int_distribution<std::size_t> pick(0, source_pool(b) - 1);
    std::ostringstream src_text, ht_text;
    for (std::size_t l = 0; l < spec.lines; ++l) {
      for (std::size_t w = 0; w < spec.words; ++w) {
        const auto k = pick(rng);
        src_text << (w ? " " : "") << word('e', k);
        ht_text << (w ? " " : "") << word('n', k);
      }
      src_text << ".\n";
      ht_text << ".\n";
    }
    write_file(dir / "books" / (src + ".txt"), src_text.str());
    write_file(dir / "books" / (ht + ".txt"), ht_text.str());
    manifest << src << '\t' << title << "\tsource\ten\tbooks/" << src << ".txt\n";
    manifest << ht << '\t' << title << "\thuman_translation\tnl\tbooks/" << ht << ".txt\n";

    for (std::size_t s = 0; s < spec.lines; ++s) {
      // decoder order is a fixed shuffle of the levels
      std::vector<std::size_t> levels(spec.candidates);
      for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = i;
      std::shuffle(levels.begin(), levels.end(), rng);
      cands << "{\"book_id\":\"" << src << "\",\"sent_id\":" << s << ",\"source_text\":\"line " << s
            << "\",\"candidates\":[";
      for (std::size_t c = 0; c < levels.size(); ++c) {
        const std::size_t level = levels[c];
        std::uniform_int_distribution<std::size_t> cpick(0, candidate_pool(level, spec.candidates) - 1);
        std::string text;
        const std::size_t marks = spec.markers && 2 * level < spec.candidates ? 1 : 0;
        for (std::size_t w = 0; w < spec.words; ++w) {
          text += (w ? " " : "");
          text += w < marks ? std::string("qq") : word('d', cpick(rng));
        }
        cands << (c ? "," : "") << "{\"text\":\"" << text << ".\"}";
        scores << src << '\t' << s << '\t' << c << '\t' << level_probability(level, spec.candidates) << '\n';
      }
      cands << "]}\n";
    }
  }
  CorpusFiles files{dir, dir / "manifest.tsv", dir / "candidates.jsonl", dir / "scores.tsv"};
  write_file(files.manifest, manifest.str());
  write_file(files.candidates, cands.str());
  write_file(files.scores, scores.str());
  return files;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

inline fs::path temp_dir(const std::string& name) {
  return fs::temp_directory_path() / ("lexdiv_" + name + "_" + std::to_string(::getpid()));
}

}  // namespace fixture
