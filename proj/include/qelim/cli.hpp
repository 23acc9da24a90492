// qelim :: command-line front end

#ifndef QELIM_CLI_HPP_
#define QELIM_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qelim/successor.hpp"

namespace qelim::cli {

enum class Command { Decide, Eliminate, Oracle, Split };

// Exit statuses.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconsistent = 3;

inline constexpr std::size_t kDefaultMaxProducts = 10000;

struct Config {
  Command command = Command::Decide;
  std::string formula;
  std::vector<std::pair<std::string, sn::Nat>> env;
  bool json = false;
  bool evidence = false;
  std::vector<sn::Nat> instantiate;
  std::size_t max_products = kDefaultMaxProducts;
};

// "name=value"; throws std::invalid_argument on malformed input.
std::pair<std::string, sn::Nat> parse_binding(std::string_view text);

// Runs one command. Results go to `out`, diagnostics to `err`.
int run(const Config& config, std::ostream& out, std::ostream& err);

}  // namespace qelim::cli

#endif  // QELIM_CLI_HPP_
