#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using zeldovich::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"nz"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("nz_cli_" + name); }

}  // namespace

TEST(Cli, LoopReportsTwoPiAlphaAndNote) {
  const auto r = invoke({"loop", "--radius-m", "1", "--current-a", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["nz_total"].get<double>() / 1.99e19, 1.0, 0.01);
  EXPECT_EQ(j["nz_electric"].get<double>(), 0.0);
  const auto notes = j["metadata"]["paper_notes"];
  ASSERT_EQ(notes.size(), 1u);
  EXPECT_NE(notes[0].get<std::string>().find("equal to 4x10^19"), std::string::npos);
  EXPECT_TRUE(j["metadata"]["converged"].get<bool>());
}

TEST(Cli, HydrogenElectric) {
  const auto r = invoke({"hydrogen", "--part", "electric"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["nz_electric"].get<double>(), 0.025, 0.001);
  EXPECT_TRUE(j["metadata"]["paper_notes"].empty());
  EXPECT_NEAR(j["metadata"]["constants"]["gamma"].get<double>(), 0.99997337, 1e-8);
}

TEST(Cli, HydrogenEnergyCarriesEnergyField) {
  const auto r = invoke({"hydrogen", "--part", "energy"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_TRUE(j.contains("energy_mc2"));
  EXPECT_NEAR(j["metadata"]["energy_electric_mc2"].get<double>(), 1.988, 0.01);
}

TEST(Cli, AtomsIncreaseToXenon) {
  const auto he = invoke({"atom", "--element", "He"});
  const auto xe = invoke({"atom", "--element", "Xe"});
  ASSERT_EQ(he.code, 0);
  ASSERT_EQ(xe.code, 0);
  const double vhe = json::parse(he.out)["nz_total"].get<double>();
  const double vxe = json::parse(xe.out)["nz_total"].get<double>();
  EXPECT_LT(vhe, vxe);
  EXPECT_NEAR(vxe / 50.0, 1.0, 0.3);
  const auto byz = invoke({"atom", "--Z", "54", "--A", "129"});
  ASSERT_EQ(byz.code, 0);
  EXPECT_EQ(json::parse(byz.out)["metadata"]["A"].get<int>(), 129);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"atom", "--element", "Rn"}).code, 2);
  EXPECT_EQ(invoke({"atom", "--element", "He", "--Z", "2"}).code, 2);
  EXPECT_EQ(invoke({"atom", "--Z", "7"}).code, 2);
  EXPECT_EQ(invoke({"spheres", "--b-ratio", "-1", "--charge-e", "1"}).code, 2);
  EXPECT_EQ(invoke({"spheres", "--b-ratio", "3"}).code, 2);
  EXPECT_EQ(invoke({"--format", "xml", "loop", "--radius-m", "1", "--current-a", "1"}).code, 2);
  EXPECT_EQ(invoke({"figure", "--id", "4", "--out", "x.csv"}).code, 2);
  EXPECT_EQ(invoke({"--constants", "/nonexistent/file", "hydrogen"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, CsvFormatEitherPosition) {
  const auto before = invoke({"--format", "csv", "spheres", "--b-ratio", "3", "--charge-e", "1"});
  const auto after = invoke({"spheres", "--b-ratio", "3", "--charge-e", "1", "--format", "csv"});
  ASSERT_EQ(before.code, 0);
  EXPECT_EQ(before.out, after.out);
  const auto l = lines(before.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "nz_electric,nz_magnetic,nz_total,energy_mc2,quad_error");
  EXPECT_EQ(l[1].rfind("0.00438419775", 0), 0u);
}

TEST(Cli, SphereHeadlineNote) {
  const auto r = invoke({"spheres", "--b-ratio", "10", "--charge-e", "6.241509074e12"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["nz_total"].get<double>() / 3.8e23, 1.0, 0.01);
  EXPECT_EQ(j["metadata"]["paper_notes"].size(), 1u);
  const auto q = invoke({"spheres", "--b-ratio", "1", "--charge-e", "1", "--method", "quad"});
  EXPECT_EQ(json::parse(q.out)["metadata"]["flags"][0], "geometrically_overlapping");
}

TEST(Cli, ConstantsOverride) {
  const auto path = temp_file("constants.txt");
  {
    std::ofstream f(path);
    f << "proton_a = 4.25e-16\nmu_geom = 2.9e-16\n";
  }
  const auto r = invoke({"--constants", path.c_str(), "hydrogen", "--part", "electric"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["metadata"]["constants"]["proton_a"].get<double>(), 4.25e-16);
  EXPECT_GT(j["nz_electric"].get<double>(), 0.026);
  fs::remove(path);
}

TEST(Cli, Figure1Schema) {
  const auto path = temp_file("fig1.csv");
  ASSERT_EQ(invoke({"figure", "--id", "1", "--out", path.c_str()}).code, 0);
  const auto l = lines(slurp(path));
  EXPECT_EQ(l[0], "r_over_b,enclosed_charge");
  int inset = 0;
  for (const auto& row : l) {
    if (row.rfind("inset,", 0) != 0) continue;
    ++inset;
    double x = 0.0, q = 0.0;
    ASSERT_EQ(std::sscanf(row.c_str(), "inset,%lf,%lf", &x, &q), 2);
    if (std::abs(x - 1.0) < 0.01) {
      EXPECT_NEAR(q, 1.0, 0.03);
    }
    if (x > 0.0 && x < 1.0) {
      EXPECT_NEAR(q / (x * x * x), 1.0, 1e-4);
    }
  }
  EXPECT_EQ(inset, 200);
  EXPECT_EQ(l.back().rfind("inset,3,", 0), 0u);
  fs::remove(path);
}

TEST(Cli, Figure2MirrorSymmetry) {
  const auto path = temp_file("fig2.csv");
  ASSERT_EQ(invoke({"figure", "--id", "2", "--out", path.c_str()}).code, 0);
  const auto l = lines(slurp(path));
  ASSERT_EQ(l[0], "x_over_lbar,z_over_lbar,Hx,Hz");
  ASSERT_EQ(l.size(), 1u + 41u * 41u);
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> rows;
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::istringstream in(l[i]);
    std::string x, z, hx, hz;
    std::getline(in, x, ',');
    std::getline(in, z, ',');
    std::getline(in, hx, ',');
    std::getline(in, hz, ',');
    rows[{x, z}] = {std::stod(hx), std::stod(hz)};
  }
  for (const auto& [key, h] : rows) {
    const std::string mx = key.first == "0" ? "0" : (key.first[0] == '-' ? key.first.substr(1) : "-" + key.first);
    const auto it = rows.find({mx, key.second});
    ASSERT_NE(it, rows.end()) << key.first;
    EXPECT_EQ(h.first, -it->second.first);
    EXPECT_EQ(h.second, it->second.second);
  }
  fs::remove(path);
}

TEST(Cli, Figure3FiveRowsAndReproducible) {
  const auto p1 = temp_file("fig3a.csv");
  const auto p2 = temp_file("fig3b.csv");
  ASSERT_EQ(invoke({"figure", "--id", "3", "--out", p1.c_str()}).code, 0);
  ASSERT_EQ(invoke({"figure", "--id", "3", "--out", p2.c_str()}).code, 0);
  const std::string a = slurp(p1);
  EXPECT_EQ(a, slurp(p2));
  const auto l = lines(a);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "Z,element,nz_electric,quadratic_fit");
  EXPECT_EQ(l[5].rfind("54,Xe,", 0), 0u);
  EXPECT_EQ(a.find('\r'), std::string::npos);
  fs::remove(p1);
  fs::remove(p2);
}

TEST(Cli, FigureUnwritablePath) {
  EXPECT_EQ(invoke({"figure", "--id", "1", "--out", "/nonexistent/dir/f.csv"}).code, 1);
}

TEST(Cli, ValidateFastPasses) {
  const auto r = invoke({"validate", "--fast"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_GT(j["checks"].size(), 15u);
}

TEST(Cli, RerunsAreByteIdentical) {
  const auto a = invoke({"--seed", "7", "hydrogen", "--part", "both"});
  const auto b = invoke({"--seed", "7", "hydrogen", "--part", "both"});
  EXPECT_EQ(a.out, b.out);
}
