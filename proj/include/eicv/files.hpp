#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eicv {

namespace fs = std::filesystem;

// Throws Error{kIo} when the file cannot be opened.
std::string read_file(const fs::path& path);

// Splits on '\n' and drops a trailing '\r' from each line.
std::vector<std::string> read_lines(const fs::path& path);

// RFC 4180 style field splitting: double-quoted fields may contain commas,
// and "" inside a quoted field is a literal quote.
std::vector<std::string> split_csv_line(std::string_view line);

// Quotes a field only when it needs it.
std::string csv_field(std::string_view field);

// Stages several files as temporaries next to their targets and renames
// them into place on commit(). If any staging write fails, nothing is
// renamed and every temporary is removed.
class AtomicWriteBatch {
 public:
  AtomicWriteBatch() = default;
  AtomicWriteBatch(const AtomicWriteBatch&) = delete;
  AtomicWriteBatch& operator=(const AtomicWriteBatch&) = delete;
  ~AtomicWriteBatch();

  void stage(const fs::path& target, std::string_view content);
  void commit();

 private:
  void discard() noexcept;

  std::vector<std::pair<fs::path, fs::path>> staged_;  // (temp, target)
  bool committed_ = false;
};

void write_file_atomic(const fs::path& target, std::string_view content);

}  // namespace eicv
