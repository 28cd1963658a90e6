#include "echo/report.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace echo {

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "x,pi_prime,pi,ratio\n";
  for (const auto& r : records) os << r.x << ',' << r.pi_prime << ',' << r.pi << ',' << r.ratio() << '\n';
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

std::string to_json(const std::vector<SweepRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    arr.push_back({{"x", r.x}, {"pi_prime", r.pi_prime}, {"pi", r.pi}, {"ratio", r.ratio()}});
  }
  return arr.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << content;
  if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
  // Write then rename, so an interrupted save never leaves a torn file.
  std::string tmp = path + ".tmp";
  write_file(tmp, std::to_string(cp.last_prime) + ' ' + std::to_string(cp.pi_so_far) + ' ' +
                      std::to_string(cp.pi_prime_so_far) + '\n');
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot replace checkpoint " + path + ": " + ec.message());
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string line;
  std::getline(is, line);
  std::istringstream ss(line);
  Checkpoint cp;
  std::string extra;
  if (!(ss >> cp.last_prime >> cp.pi_so_far >> cp.pi_prime_so_far) || (ss >> extra)) {
    throw std::runtime_error("malformed checkpoint: " + path);
  }
  if (cp.pi_prime_so_far > cp.pi_so_far) throw std::runtime_error("inconsistent checkpoint: " + path);
  return cp;
}

}  // namespace echo
