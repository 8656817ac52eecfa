#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gxw {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Global log level, initialized from the GXW_LOG environment variable
/// (error|info|debug). Defaults to error.
LogLevel log_level();
void set_log_level(LogLevel lvl);

void log_info(const std::string& msg);
void log_debug(const std::string& msg);
void log_error(const std::string& msg);

/// Writes `content` to `path` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Splits on a single character, trimming surrounding whitespace.
std::vector<std::string> split(const std::string& s, char sep);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace gxw
