#pragma once

#include <string>

namespace rough {

/// SHA-1 digest as lowercase hex.
std::string sha1_hex(const std::string& bytes);

/// Git-style blob hash of a file's contents: sha1("blob <size>\0" + bytes).
/// Throws ConfigError when the file cannot be read.
std::string git_blob_hash_of_file(const std::string& path);

}  // namespace rough
