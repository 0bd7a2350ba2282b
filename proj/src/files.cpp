#include "eicv/files.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "eicv/error.hpp"

namespace eicv {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed: " + path.string());
  return std::move(buf).str();
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::vector<std::string> lines;
  const std::string content = read_file(path);
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) nl = content.size();
    std::string line = content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

fs::path temp_name_for(const fs::path& target) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  return tmp;
}

}  // namespace

AtomicWriteBatch::~AtomicWriteBatch() {
  if (!committed_) discard();
}

void AtomicWriteBatch::stage(const fs::path& target, std::string_view content) {
  fs::path tmp = temp_name_for(target);
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) {
    discard();
    throw Error(ErrorKind::kIo, "cannot write " + target.string());
  }
  staged_.emplace_back(tmp, target);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    discard();
    throw Error(ErrorKind::kIo, "write failed: " + target.string());
  }
}

void AtomicWriteBatch::commit() {
  for (const auto& [tmp, target] : staged_) {
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      discard();
      throw Error(ErrorKind::kIo, "rename failed for " + target.string() + ": " + ec.message());
    }
  }
  staged_.clear();
  committed_ = true;
}

void AtomicWriteBatch::discard() noexcept {
  for (const auto& staged : staged_) {
    std::error_code ec;
    fs::remove(staged.first, ec);
  }
  staged_.clear();
}

void write_file_atomic(const fs::path& target, std::string_view content) {
  AtomicWriteBatch batch;
  batch.stage(target, content);
  batch.commit();
}

}  // namespace eicv
