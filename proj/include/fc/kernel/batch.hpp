#pragma once

// Data-parallel drivers over independent kernel jobs. Each parallel entry
// point has a serial twin that defines its result; tests compare the two.

#include <optional>
#include <span>
#include <vector>

#include "fc/kernel/kernel.hpp"

namespace fc::kernel {

struct TheoremJob {
  Term statement;
  Proof proof;
};

struct TheoremResult {
  std::optional<Term> proved;  // normal form of the statement when accepted
  std::optional<ErrorCode> error;
  bool ok() const { return proved.has_value(); }
};

std::vector<TheoremResult> check_theorems_serial(const Signature& sig, std::span<const TheoremJob> jobs);
std::vector<TheoremResult> check_theorems(const Signature& sig, std::span<const TheoremJob> jobs);

std::vector<Term> normalize_all_serial(const Signature& sig, std::span<const Term> terms, bool unfold);
std::vector<Term> normalize_all(const Signature& sig, std::span<const Term> terms, bool unfold);

}  // namespace fc::kernel
