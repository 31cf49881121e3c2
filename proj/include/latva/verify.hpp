#ifndef LATVA_VERIFY_HPP
#define LATVA_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "latva/serialize.hpp"

namespace latva {

struct VerifyConfig {
  // Defaults are the desk-scale acceptance parameters.
  std::optional<LatticeLevel> custom_gram; // replaces the builtin gram set
  long cutoff = 6;      // weight bound W for enumerated state spaces
  long window_lo = -6;  // z-window for expansion identities
  long window_hi = 6;
  long trunc = 12;      // series truncation K
  unsigned long long seed = 20240601;
  int locality_orders = 3;   // certified diagonals past the leading total degree
  int locality_N_offset = 0; // negative: deliberately under-clear (z-w) powers
  int symbol_cases = 200;
  int spectral_cases = 100;
};

struct VerifyCase {
  std::string id;
  bool pass;
  std::string detail; // counts on success, witness on failure
};

struct VerifyReport {
  std::string suite;
  unsigned long long seed;
  std::vector<VerifyCase> cases;
  long passed = 0;
  long failed = 0;
};

const std::vector<std::string>& suite_names(); // without "all"
bool is_suite_name(const std::string& name);

// name in {heisenberg, virasoro, ope, ode, locality, symbol, module, spectral, all}
VerifyReport run_suite(const std::string& name, const VerifyConfig& config);

Json report_to_json(const VerifyReport& report);

} // namespace latva

#endif
