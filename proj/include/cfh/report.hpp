#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cfh {

// Exact mismatch location: the generator tuple it occurred on, the lambda
// assignment in play, and the rendered nonzero difference vector.
struct Witness {
  std::vector<int> tuple;
  std::string lambda_assignment;
  std::vector<std::string> difference;
};

struct Report {
  std::string check;
  bool pass = true;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;
  long long millis = 0;

  static Report passed(std::string name, std::uint64_t seed = 0) {
    return Report{std::move(name), true, seed, std::nullopt, 0};
  }
  static Report failed(std::string name, Witness w, std::uint64_t seed = 0) {
    return Report{std::move(name), false, seed, std::move(w), 0};
  }
};

}  // namespace cfh
