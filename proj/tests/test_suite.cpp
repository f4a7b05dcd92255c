#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "vw/suite.hpp"

using namespace vw;

namespace {

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.K = 12;
  cfg.trials = 60;
  cfg.radius = 3;
  return cfg;
}

std::string summary_of(const SuiteReport& r) {
  std::ostringstream os;
  write_suite_summary(os, r);
  return os.str();
}

}  // namespace

TEST(Suite, AllBatteriesPassOnASmallConfig) {
  const auto report = run_suite(small_config());
  EXPECT_EQ(report.batteries.size(), 10u);
  for (const auto& b : report.batteries) {
    std::ostringstream os;
    write_battery_csv(os, b);
    EXPECT_TRUE(b.passed()) << os.str();
    EXPECT_GT(b.checks, 0) << b.name;
  }
}

TEST(Suite, DeterministicForAFixedSeed) {
  EXPECT_EQ(summary_of(run_suite(small_config())), summary_of(run_suite(small_config())));
}

TEST(Suite, WritesCsvFiles) {
  auto cfg = small_config();
  cfg.trials = 10;
  const auto dir = std::filesystem::temp_directory_path() / "vw_suite_test";
  std::filesystem::remove_all(dir);
  cfg.output_dir = dir.string();
  run_suite(cfg);
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "certificates.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Suite, RejectsBadConfig) {
  auto cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(run_suite(cfg), PreconditionError);
}
