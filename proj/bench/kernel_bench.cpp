// Serial and OpenMP kernel drivers on the same inputs.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "fc/crypto.hpp"
#include "fc/docform/check.hpp"
#include "fc/docform/corpus.hpp"
#include "fc/kernel/batch.hpp"
#include "lambda_oracle.hpp"

namespace fs = std::filesystem;
using namespace fc;

namespace {

struct Corpus {
  kernel::Signature sig;
  std::vector<kernel::TheoremJob> jobs;
};

// Every theorem in the proof fixtures, checked against one merged signature.
const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out{docform::theory_signature(docform::builtin_theory()), {}};
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(FC_FIXTURE_DIR) / "docs/proofs")) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    const auto resolve = docform::resolver_for(std::span(&docform::builtin_theory(), 1));
    for (const auto& f : files) {
      auto doc = docform::parse_doc(docform::read_file(f), resolve);
      auto sig = docform::theory_signature(docform::builtin_theory());
      docform::apply_effect(sig, docform::check_doc(sig, doc));
      for (const auto& item : doc.items)
        if (const auto* t = std::get_if<docform::ThmItem>(&item)) out.jobs.push_back({t->stmt, t->proof});
      out.sig.defs.insert(sig.defs.begin(), sig.defs.end());
      out.sig.axioms.insert(sig.axioms.begin(), sig.axioms.end());
      out.sig.thms.insert(sig.thms.begin(), sig.thms.end());
    }
    // Replicated so the parallel loop has enough work to split.
    auto one = out.jobs;
    for (int i = 0; i < 15; ++i) out.jobs.insert(out.jobs.end(), one.begin(), one.end());
    return out;
  }();
  return c;
}

const std::vector<kernel::Term>& small_terms() {
  static const auto terms = oracle::closed_well_typed(oracle::two_constant_sig(), 6, oracle::small_binder_types());
  return terms;
}

const kernel::Signature& small_sig() {
  static const kernel::Signature sig = [] {
    kernel::Signature s;
    s.prims = oracle::two_constant_sig().prims;
    return s;
  }();
  return sig;
}

std::vector<crypto::SigCheck> sig_checks(std::size_t n) {
  std::vector<crypto::SigCheck> out;
  auto key = crypto::KeyPair::from_seed(3);
  for (std::size_t i = 0; i < n; ++i) {
    Hash32 msg{};
    msg[0] = static_cast<std::uint8_t>(i);
    msg[1] = static_cast<std::uint8_t>(i >> 8);
    out.push_back({key.public_key(), msg, key.sign(msg)});
  }
  return out;
}

void BM_CheckTheoremsSerial(benchmark::State& st) {
  const auto& c = corpus();
  for (auto _ : st) benchmark::DoNotOptimize(kernel::check_theorems_serial(c.sig, c.jobs));
  st.SetItemsProcessed(st.iterations() * c.jobs.size());
}

void BM_CheckTheorems(benchmark::State& st) {
  const auto& c = corpus();
  for (auto _ : st) benchmark::DoNotOptimize(kernel::check_theorems(c.sig, c.jobs));
  st.SetItemsProcessed(st.iterations() * c.jobs.size());
}

void BM_NormalizeSerial(benchmark::State& st) {
  small_terms();
  for (auto _ : st) benchmark::DoNotOptimize(kernel::normalize_all_serial(small_sig(), small_terms(), false));
  st.SetItemsProcessed(st.iterations() * small_terms().size());
}

void BM_Normalize(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernel::normalize_all(small_sig(), small_terms(), false));
  st.SetItemsProcessed(st.iterations() * small_terms().size());
}

void BM_VerifySerial(benchmark::State& st) {
  auto checks = sig_checks(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(crypto::verify_batch_serial(checks));
  st.SetItemsProcessed(st.iterations() * checks.size());
}

void BM_Verify(benchmark::State& st) {
  auto checks = sig_checks(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(crypto::verify_batch(checks));
  st.SetItemsProcessed(st.iterations() * checks.size());
}

}  // namespace

BENCHMARK(BM_CheckTheoremsSerial);
BENCHMARK(BM_CheckTheorems);
BENCHMARK(BM_NormalizeSerial);
BENCHMARK(BM_Normalize);
BENCHMARK(BM_VerifySerial)->Arg(64)->Arg(512);
BENCHMARK(BM_Verify)->Arg(64)->Arg(512);

BENCHMARK_MAIN();
