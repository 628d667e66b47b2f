#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "wlpdisc/verify.hpp"

using namespace wlpdisc;

namespace {

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& id) {
  const auto it = std::find_if(rs.begin(), rs.end(), [&](const CheckResult& r) { return r.id == id; });
  if (it == rs.end()) throw std::runtime_error("missing check " + id);
  return *it;
}

}  // namespace

TEST(Verify, OrderedByIdAndStatusMatchesTolerance) {
  const auto rs = run_all();
  EXPECT_TRUE(std::is_sorted(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
  for (const auto& r : rs) EXPECT_EQ(r.status == CheckStatus::Pass, r.max_abs_err <= r.tolerance) << r.id;
}

TEST(Verify, ManifestCoversEveryFormulaAndEveryCheck) {
  const auto rs = run_all();
  const auto& manifest = coverage_manifest();
  std::set<std::string> covered;
  for (const auto& r : rs) {
    ASSERT_TRUE(manifest.count(r.id)) << r.id << " has no manifest entry";
    for (const auto& f : manifest.at(r.id)) covered.insert(f);
  }
  EXPECT_EQ(manifest.size(), rs.size());
  for (const auto& f : covered_formulas()) EXPECT_TRUE(covered.count(f)) << f << " is not exercised";
  for (const auto& f : covered) {
    EXPECT_NE(std::find(covered_formulas().begin(), covered_formulas().end(), f), covered_formulas().end()) << f;
  }
}

TEST(Verify, DeterministicForSeed) {
  VerifyOptions a;
  a.seed = 42;
  a.threads = 1;
  VerifyOptions b = a;
  b.threads = 4;
  const auto x = run_all(a);
  const auto y = run_all(b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].id, y[i].id);
    EXPECT_EQ(x[i].max_abs_err, y[i].max_abs_err);
  }
}

TEST(Verify, TauMutationIsCaught) {
  VerifyOptions opt;
  EXPECT_EQ(find(run_all(opt), "thm2-consistency").status, CheckStatus::Pass);
  opt.tau_perturbation = 1e-3;
  EXPECT_EQ(find(run_all(opt), "thm2-consistency").status, CheckStatus::Fail);
}

// The closed-form alpha does not bound the norm of the second fooling branch,
// so these two checks fail; every other check passes.
TEST(Verify, KnownFailuresAreExactlyTheAlphaChecks) {
  std::set<std::string> failed;
  for (const auto& r : run_all()) {
    if (r.status == CheckStatus::Fail) failed.insert(r.id);
  }
  EXPECT_EQ(failed, (std::set<std::string>{"split-norms-coincide", "thm2-alpha"}));
}
