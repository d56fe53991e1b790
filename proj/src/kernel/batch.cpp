#include "fc/kernel/batch.hpp"

#include <cstdint>

namespace fc::kernel {

namespace {
TheoremResult run_job(const Signature& sig, const TheoremJob& job) {
  TheoremResult r;
  try {
    r.proved = check_theorem(sig, job.statement, job.proof);
  } catch (const KernelError& e) {
    r.error = e.code();
  }
  return r;
}
}  // namespace

std::vector<TheoremResult> check_theorems_serial(const Signature& sig, std::span<const TheoremJob> jobs) {
  std::vector<TheoremResult> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(run_job(sig, job));
  return out;
}

std::vector<TheoremResult> check_theorems(const Signature& sig, std::span<const TheoremJob> jobs) {
  std::vector<TheoremResult> out(jobs.size());
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = run_job(sig, jobs[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<Term> normalize_all_serial(const Signature& sig, std::span<const Term> terms, bool unfold) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(normalize(sig, t, unfold));
  return out;
}

std::vector<Term> normalize_all(const Signature& sig, std::span<const Term> terms, bool unfold) {
  // Term has no default state, so seed the slots with the inputs.
  std::vector<Term> out(terms.begin(), terms.end());
  const auto n = static_cast<std::int64_t>(terms.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = normalize(sig, terms[static_cast<std::size_t>(i)], unfold);
  }
  return out;
}

}  // namespace fc::kernel
