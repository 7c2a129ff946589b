#include "data/json_util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace progss {

json parse_json_text(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorCode::Validation, where + ": malformed JSON");
  return j;
}

json load_json_file(const std::string& path) {
  return parse_json_text(load_text_file(path), path);
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "read failed for " + path);
  return ss.str();
}

// Atomic-at-rest output: write a sibling temp file, then rename over the
// target, so readers never observe a half-written artifact.
void save_text_file(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot create " + tmp);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) fail(ErrorCode::Io, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorCode::Io, "rename failed for " + path);
}

}  // namespace progss
