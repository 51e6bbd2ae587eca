#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace csda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Exit-code categories used by the CLI: 2 config, 3 data, 4 numeric.
class Error : public std::runtime_error {
public:
  Error(std::string msg, int exit_code)
      : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

private:
  int exit_code_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg, 2) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string& msg) : Error(msg, 3) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& msg) : Error(msg, 4) {}
};

// Zero-eigenvalue test semantics. Relative compares against the largest
// eigen/singular value, Absolute uses the threshold as-is.
enum class ThresholdMode { Relative, Absolute };

namespace defaults {
inline constexpr double mu = 1e-4;
inline constexpr double zero_threshold = 1e-6;
inline constexpr double alpha = 1e-7;
}  // namespace defaults

// splitmix64 step; used to derive independent sub-seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (a + 1)) ^
                    (0xc2b2ae3d27d4eb4fULL * (b + 1));
  return splitmix64(s);
}

}  // namespace csda
