#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "zeldovich/config.hpp"

using namespace zeldovich;

TEST(Config, DefaultsWhenEmpty) {
  const auto cfg = parse_constants("# nothing here\n\n");
  EXPECT_EQ(cfg.constants.alpha, PhysConst{}.alpha);
  EXPECT_TRUE(cfg.mass_numbers.empty());
}

TEST(Config, ParsesKeysAndComments) {
  const auto cfg = parse_constants(
      "alpha = 0.0073  # rounded\n"
      "proton_a=8.4e-16\n"
      "  mass_number.Xe = 129\n");
  EXPECT_EQ(cfg.constants.alpha, 0.0073);
  EXPECT_EQ(cfg.constants.proton_a, 8.4e-16);
  EXPECT_EQ(cfg.atom("Xe").A, 129);
  EXPECT_EQ(cfg.atom("Kr").A, noble_gas("Kr").A);
}

TEST(Config, AtomUsesConfiguredBohrRadius) {
  const auto cfg = parse_constants("bohr_b = 5.3e-11\n");
  EXPECT_EQ(cfg.atom("He").bohr_b, 5.3e-11);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    parse_constants("alpha = 0.007\nbogus = 1\n");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_constants("alpha 0.007\n"), std::runtime_error);
  EXPECT_THROW(parse_constants("alpha = abc\n"), std::runtime_error);
  EXPECT_THROW(parse_constants("alpha = 0.007x\n"), std::runtime_error);
  EXPECT_THROW(parse_constants("mass_number.Og = 294\n"), std::runtime_error);
  EXPECT_THROW(parse_constants("mass_number.Xe = 0\n"), std::runtime_error);
  EXPECT_THROW(parse_constants("alpha = 2\n"), std::runtime_error);
}

TEST(Config, FileAndEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "nz_config_test.txt";
  {
    std::ofstream f(path);
    f << "mu_geom = 6e-16\n";
  }
  EXPECT_EQ(load_constants_file(path.string()).constants.mu_geom, 6e-16);
  EXPECT_EQ(resolve_constants(path.string()).constants.mu_geom, 6e-16);
  ::setenv("NZ_CONSTANTS", path.c_str(), 1);
  EXPECT_EQ(resolve_constants(std::nullopt).constants.mu_geom, 6e-16);
  ::unsetenv("NZ_CONSTANTS");
  EXPECT_EQ(resolve_constants(std::nullopt).constants.mu_geom, PhysConst{}.mu_geom);
  EXPECT_THROW(load_constants_file((path.string() + ".missing")), std::runtime_error);
  std::filesystem::remove(path);
}
