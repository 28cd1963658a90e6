#pragma once

#include "echo/odd_order_sweep.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace echo {

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::string to_csv(const std::vector<SweepRecord>& records);
std::string to_json(const std::vector<SweepRecord>& records);

/// Writes `content` to `path`; throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

void save_checkpoint(const std::string& path, const Checkpoint& cp);
/// Throws std::runtime_error if the file is missing or malformed.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace echo
