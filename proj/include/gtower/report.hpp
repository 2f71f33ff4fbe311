#ifndef GTOWER_REPORT_HPP
#define GTOWER_REPORT_HPP

#include <chrono>
#include <string>

#include <json.hpp>

#include "gtower/common.hpp"

namespace gtower {

using json = nlohmann::ordered_json;

/// Uniform verification-report envelope. The determinism digest covers
/// everything except wall_time_ms, so identical invocations can be compared
/// byte-for-byte modulo timings.
struct Report {
  std::string suite;
  json parameters = json::object();
  json payload = json::object();
  json timings = json::object();  // volatile; excluded from the digest
  bool passed = false;
  double wall_time_ms = 0.0;

  std::string digest() const {
    json stable{{"suite", suite}, {"parameters", parameters}, {"payload", payload},
                {"passed", passed}};
    auto dump = stable.dump();
    return hex64(fnv1a64(dump.data(), dump.size()));
  }

  json to_json() const {
    json j;
    j["suite"] = suite;
    j["parameters"] = parameters;
    j["payload"] = payload;
    if (!timings.empty()) j["timings"] = timings;
    j["passed"] = passed;
    j["wall_time_ms"] = wall_time_ms;
    j["digest"] = digest();
    return j;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace gtower

#endif  // GTOWER_REPORT_HPP
